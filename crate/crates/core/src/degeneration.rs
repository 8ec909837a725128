//! Primitive degenerations: erase one vertex `a ∈ Z³_{>0}` of the Newton
//! diagram and compare the invariants before and after.
//!
//! With `C = Γ₊` and `C_new = Conv((C ∩ Z³) ∖ {a})`, the region `C ∖ C_new` is
//! a "collar" under the new facets. Its lattice data predicts every invariant
//! change, where `Δ` means (value at `t = 0`) minus (value at `t ≠ 0`):
//!
//! ```text
//! Δμ  = 6V                     Δμ₀ = -1 - N_inner + N_new
//! Δμ₊ = 1 + N_inner + N_new    Δμ₋ = 6V - 2 N_new
//! Δsign = -6V + N_inner + 3 N_new + 1 = 3 - δ - N_outer + N_new
//! δ = 6V - N_outer - N_inner - 2 N_new + 2 ≥ 0
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Assumption, Error, Result};
use crate::exponent::{ivec, ExponentVector};
use crate::hull::{
    build_polyhedron, convenient_completion, default_completion_exponent, is_convenient,
    NewtonPolyhedron, PointClass,
};
use crate::invariants::{analyze, invariants_of_polyhedron, Completion, SingularityInvariants};
use crate::lattice::{lowest_z, volumes};
use crate::support::Support;

/// Changes `(μ, μ₀, μ₊, μ₋, sign)` from the generic fibre to the special one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Deltas {
    pub mu: i64,
    pub mu_zero: i64,
    pub mu_plus: i64,
    pub mu_minus: i64,
    pub sign: i64,
}

impl Deltas {
    /// `special - generic`.
    pub fn between(generic: &SingularityInvariants, special: &SingularityInvariants) -> Self {
        Self {
            mu: special.mu - generic.mu,
            mu_zero: special.mu_zero - generic.mu_zero,
            mu_plus: special.mu_plus - generic.mu_plus,
            mu_minus: special.mu_minus - generic.mu_minus,
            sign: special.signature - generic.signature,
        }
    }

    pub fn as_array(&self) -> [i64; 5] {
        [
            self.mu,
            self.mu_zero,
            self.mu_plus,
            self.mu_minus,
            self.sign,
        ]
    }
}

impl Add for Deltas {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            mu: self.mu + o.mu,
            mu_zero: self.mu_zero + o.mu_zero,
            mu_plus: self.mu_plus + o.mu_plus,
            mu_minus: self.mu_minus + o.mu_minus,
            sign: self.sign + o.sign,
        }
    }
}

impl Sub for Deltas {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self {
            mu: self.mu - o.mu,
            mu_zero: self.mu_zero - o.mu_zero,
            mu_plus: self.mu_plus - o.mu_plus,
            mu_minus: self.mu_minus - o.mu_minus,
            sign: self.sign - o.sign,
        }
    }
}

impl std::iter::Sum for Deltas {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[derive(Debug, Clone)]
pub struct DegenerationGeometry {
    pub erased: ExponentVector,
    pub old_np: NewtonPolyhedron,
    pub new_np: NewtonPolyhedron,
    /// Indices into `new_np.facets()` of the facets cut by the erasure.
    pub new_facets: Vec<usize>,
    pub new_points: Vec<ExponentVector>,
    pub inner_points: Vec<ExponentVector>,
    pub outer_points: Vec<ExponentVector>,
    pub six_v: i64,
    pub collar_triangles: i64,
}

/// Counts that determine the predicted deltas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationCounts {
    pub six_v: i64,
    pub n_new: i64,
    pub n_inner: i64,
    pub n_outer: i64,
}

impl DegenerationCounts {
    pub fn delta(&self) -> i64 {
        self.six_v - self.n_outer - self.n_inner - 2 * self.n_new + 2
    }

    pub fn predicted(&self) -> Deltas {
        let Self {
            six_v,
            n_new,
            n_inner,
            ..
        } = *self;
        Deltas {
            mu: six_v,
            mu_zero: -1 - n_inner + n_new,
            mu_plus: 1 + n_inner + n_new,
            mu_minus: six_v - 2 * n_new,
            sign: -six_v + n_inner + 3 * n_new + 1,
        }
    }

    /// The signature change written through the defect `δ`.
    pub fn sign_via_delta(&self) -> i64 {
        3 - self.delta() - self.n_outer + self.n_new
    }
}

impl DegenerationGeometry {
    pub fn counts(&self) -> DegenerationCounts {
        DegenerationCounts {
            six_v: self.six_v,
            n_new: self.new_points.len() as i64,
            n_inner: self.inner_points.len() as i64,
            n_outer: self.outer_points.len() as i64,
        }
    }

    /// First standing assumption of the collar picture that this geometry
    /// breaks, if any.
    pub fn assumption_violation(&self) -> Option<Assumption> {
        if self.new_points.iter().any(|p| {
            matches!(
                self.new_np.classify_point(p),
                PointClass::OnTwoFaceInterior(_)
            )
        }) {
            return Some(Assumption::NewPointInFaceInterior);
        }
        let in_plane =
            |u: &ExponentVector, v: &ExponentVector| (0..3).any(|k| u.0[k] == 0 && v.0[k] == 0);
        if self.inner_points.iter().any(|p| !p.is_positive())
            || self.loop_edges().iter().any(|(u, v)| in_plane(u, v))
        {
            return Some(Assumption::CollarTouchesCoordinatePlane);
        }
        if !self.loop_is_simple() {
            return Some(Assumption::LoopNotSimple);
        }
        if self
            .outer_points
            .iter()
            .any(|p| self.old_np.classify_point(p) != PointClass::OnSkeleton)
        {
            return Some(Assumption::OuterPointOffOldSkeleton);
        }
        if self
            .inner_points
            .iter()
            .any(|p| self.old_np.classify_point(p) == PointClass::OnSkeleton)
        {
            return Some(Assumption::InnerPointOnOldSkeleton);
        }
        None
    }

    /// Edges of `C_new` between a new facet and an old one.
    pub fn loop_edges(&self) -> Vec<(ExponentVector, ExponentVector)> {
        let is_new: BTreeSet<usize> = self.new_facets.iter().copied().collect();
        let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, cycle) in self.new_np.face_cycles().iter().enumerate() {
            let closed = self.new_np.facets()[fi].compact;
            let m = cycle.len();
            let pairs = if closed { m } else { m.saturating_sub(1) };
            for i in 0..pairs {
                let (u, v) = (cycle[i], cycle[(i + 1) % m]);
                owners.entry((u.min(v), u.max(v))).or_default().push(fi);
            }
        }
        let verts = self.new_np.vertices();
        owners
            .into_iter()
            .filter(|(_, fs)| {
                let n = fs.iter().filter(|f| is_new.contains(f)).count();
                n == 1 && fs.len() == 2
            })
            .map(|((u, v), _)| (verts[u], verts[v]))
            .collect()
    }

    /// The loop edges form one closed polygon whose vertices are exactly the
    /// outer points, and whose other lattice points are exactly the inner ones.
    fn loop_is_simple(&self) -> bool {
        let edges = self.loop_edges();
        if edges.len() < 3 {
            return false;
        }
        let mut adj: BTreeMap<ExponentVector, Vec<ExponentVector>> = BTreeMap::new();
        for &(u, v) in &edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        if adj.values().any(|n| n.len() != 2) {
            return false;
        }
        let start = *adj.keys().next().unwrap();
        let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
        while cur != start {
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        if steps != edges.len() {
            return false;
        }
        let corners: Vec<_> = adj.keys().copied().collect();
        if corners != self.outer_points {
            return false;
        }
        let mut on_edges: Vec<ExponentVector> = edges
            .iter()
            .flat_map(|&(u, v)| interior_lattice_points(u, v))
            .collect();
        on_edges.sort();
        on_edges == self.inner_points
    }
}

fn interior_lattice_points(u: ExponentVector, v: ExponentVector) -> Vec<ExponentVector> {
    let (u, v) = (u.to_i64(), v.to_i64());
    let d = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
    let g = ivec::gcd(ivec::gcd(d[0], d[1]), d[2]);
    let step = d.map(|c| c / g);
    (1..g)
        .filter_map(|i| ExponentVector::from_i64(std::array::from_fn(|k| u[k] + step[k] * i)))
        .collect()
}

/// Builds the collar geometry without checking the standing assumptions.
pub fn erase_vertex_unchecked(
    np: &NewtonPolyhedron,
    a: ExponentVector,
) -> Result<DegenerationGeometry> {
    if !a.is_positive() {
        return Err(Error::NotInteriorLatticePoint(a));
    }
    if !np.is_vertex(&a) {
        return Err(Error::NotAVertex(a));
    }

    let rest = Support::new(np.vertices().iter().copied().filter(|v| *v != a))?;
    let hull_of_rest = build_polyhedron(&rest)?;

    let star: Vec<ExponentVector> = np
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.slack(&a) == 0)
        .flat_map(|(i, _)| np.face_vertices(i))
        .collect();
    let lo: [u32; 3] = std::array::from_fn(|i| star.iter().map(|v| v.0[i]).min().unwrap());
    let hi: [u32; 3] = std::array::from_fn(|i| star.iter().map(|v| v.0[i]).max().unwrap());
    let mut extra = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let p = ExponentVector::new(x, y, z);
                if p != a && np.contains(&p) && hull_of_rest.classify_point(&p) == PointClass::Below
                {
                    extra.push(p);
                }
            }
        }
    }
    let new_np = build_polyhedron(&rest.with(extra))?;
    geometry(np, new_np, a)
}

fn geometry(
    old_np: &NewtonPolyhedron,
    new_np: NewtonPolyhedron,
    a: ExponentVector,
) -> Result<DegenerationGeometry> {
    let new_facets: Vec<usize> = new_np
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.slack(&a) < 0)
        .map(|(i, _)| i)
        .collect();

    let mut collar = BTreeSet::new();
    let mut collar_triangles = 0;
    for &i in &new_facets {
        let (b, int) = new_np.facet_lattice_points(i);
        collar.extend(b);
        collar.extend(int);
        collar_triangles += new_np.pick_count(i);
    }

    let mut new_points = Vec::new();
    let mut inner_points = Vec::new();
    let mut outer_points = Vec::new();
    for p in collar {
        if !on_boundary(old_np, &p) {
            new_points.push(p);
        } else if new_np.is_vertex(&p) {
            outer_points.push(p);
        } else {
            inner_points.push(p);
        }
    }

    let six_v = volumes(&new_np)?.six_vol3 - volumes(old_np)?.six_vol3;
    Ok(DegenerationGeometry {
        erased: a,
        old_np: old_np.clone(),
        new_np,
        new_facets,
        new_points,
        inner_points,
        outer_points,
        six_v,
        collar_triangles,
    })
}

fn on_boundary(np: &NewtonPolyhedron, p: &ExponentVector) -> bool {
    np.facets().iter().any(|f| f.slack(p) == 0)
}

/// Erases the vertex `a` of the diagram, rejecting geometries outside the
/// collar picture with [`Error::AssumptionViolated`].
pub fn erase_vertex(np: &NewtonPolyhedron, a: ExponentVector) -> Result<DegenerationGeometry> {
    let g = erase_vertex_unchecked(np, a)?;
    match g.assumption_violation() {
        Some(v) => Err(Error::AssumptionViolated(v)),
        None => Ok(g),
    }
}

/// Predicted deltas of a geometry, with `δ` and the second form of `Δsign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub deltas: Deltas,
    pub delta: i64,
    pub sign_via_delta: i64,
}

pub fn predicted_deltas(g: &DegenerationGeometry) -> Prediction {
    let c = g.counts();
    Prediction {
        deltas: c.predicted(),
        delta: c.delta(),
        sign_via_delta: c.sign_via_delta(),
    }
}

#[derive(Debug, Clone)]
pub struct DegenerationReport {
    pub geometry: DegenerationGeometry,
    pub counts: DegenerationCounts,
    pub delta: i64,
    pub predicted: Deltas,
    pub sign_via_delta: i64,
    pub direct: Deltas,
    pub before: SingularityInvariants,
    pub after: SingularityInvariants,
    pub consistent: bool,
}

impl DegenerationReport {
    pub fn sign_forms_agree(&self) -> bool {
        self.predicted.sign == self.sign_via_delta
    }

    pub fn summary(&self) -> DegenerationSummary {
        let g = &self.geometry;
        DegenerationSummary {
            erased: g.erased,
            six_v: self.counts.six_v,
            n_new: self.counts.n_new,
            n_inner: self.counts.n_inner,
            n_outer: self.counts.n_outer,
            delta: self.delta,
            collar_triangles: g.collar_triangles,
            new_points: g.new_points.clone(),
            inner_points: g.inner_points.clone(),
            outer_points: g.outer_points.clone(),
            predicted: self.predicted,
            sign_via_delta: self.sign_via_delta,
            direct: self.direct,
            consistent: self.consistent,
        }
    }
}

/// The plain-data part of a [`DegenerationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationSummary {
    pub erased: ExponentVector,
    pub six_v: i64,
    pub n_new: i64,
    pub n_inner: i64,
    pub n_outer: i64,
    pub delta: i64,
    pub collar_triangles: i64,
    pub new_points: Vec<ExponentVector>,
    pub inner_points: Vec<ExponentVector>,
    pub outer_points: Vec<ExponentVector>,
    pub predicted: Deltas,
    pub sign_via_delta: i64,
    pub direct: Deltas,
    pub consistent: bool,
}

pub(crate) fn report_for(
    np: &NewtonPolyhedron,
    before: SingularityInvariants,
    a: ExponentVector,
) -> Result<DegenerationReport> {
    let geometry = erase_vertex(np, a)?;
    let counts = geometry.counts();
    let delta = counts.delta();
    if delta < 0 {
        return Err(Error::LemmaViolated { erased: a, delta });
    }

    let direct_support = Support::new(geometry.new_np.vertices().iter().copied())?;
    let direct_np = build_polyhedron(&direct_support)?;
    assert_eq!(
        direct_np.facets(),
        geometry.new_np.facets(),
        "vertex support must rebuild the same polyhedron"
    );
    let after = invariants_of_polyhedron(&direct_np)?;
    let direct = Deltas::between(&before, &after);
    let predicted = counts.predicted();
    Ok(DegenerationReport {
        counts,
        delta,
        predicted,
        sign_via_delta: counts.sign_via_delta(),
        direct,
        before,
        after,
        consistent: predicted == direct,
        geometry,
    })
}

/// Erases `a` from the diagram of `s_old` (completed if necessary) and
/// compares the predicted deltas with a direct recomputation.
pub fn verify_degeneration(s_old: &Support, a: ExponentVector) -> Result<DegenerationReport> {
    let old = analyze(s_old, Completion::Auto)?;
    report_for(&old.polyhedron, old.invariants, a)
}

/// A chain of primitive degenerations.
#[derive(Debug, Clone)]
pub struct PathReport {
    pub completion: Option<u32>,
    pub steps: Vec<DegenerationReport>,
    pub before: SingularityInvariants,
    pub after: SingularityInvariants,
}

impl PathReport {
    pub fn erased(&self) -> Vec<ExponentVector> {
        self.steps.iter().map(|s| s.geometry.erased).collect()
    }

    pub fn predicted(&self) -> Deltas {
        self.steps.iter().map(|s| s.predicted).sum()
    }

    pub fn direct(&self) -> Deltas {
        Deltas::between(&self.before, &self.after)
    }

    /// Every step is consistent and the step deltas add up to the overall change.
    pub fn consistent(&self) -> bool {
        self.steps.iter().all(|s| s.consistent)
            && self.steps.iter().map(|s| s.direct).sum::<Deltas>() == self.direct()
            && self.predicted() == self.direct()
    }
}

fn run_path(
    np: NewtonPolyhedron,
    before: SingularityInvariants,
    completion: Option<u32>,
    mut next: impl FnMut(&NewtonPolyhedron) -> Result<Option<ExponentVector>>,
) -> Result<PathReport> {
    let mut steps: Vec<DegenerationReport> = Vec::new();
    let mut np = np;
    let mut inv = before;
    while let Some(a) = next(&np)? {
        let step = report_for(&np, inv, a)?;
        inv = step.after;
        np = step.geometry.new_np.clone();
        steps.push(step);
    }
    Ok(PathReport {
        completion,
        steps,
        before,
        after: inv,
    })
}

/// Erases the given vertices one after another, each a primitive degeneration
/// of the diagram left by the previous one.
pub fn verify_erasures(
    s_old: &Support,
    erased: &[ExponentVector],
    completion: Completion,
) -> Result<PathReport> {
    let old = analyze(s_old, completion)?;
    let mut queue = erased.iter().copied();
    run_path(old.polyhedron, old.invariants, old.completion, |_| {
        Ok(queue.next())
    })
}

/// Connects `s_old` to a smaller diagram `s_target` by primitive
/// degenerations, erasing at each step the lexicographically smallest lattice
/// point that must disappear and is currently a vertex.
///
/// Non-convenient supports are completed with a common exponent; the
/// automatic choice is computed from both supports together.
pub fn verify_towards(
    s_old: &Support,
    s_target: &Support,
    completion: Completion,
) -> Result<PathReport> {
    let (s_old_c, s_target_c, completion) = if is_convenient(s_old) && is_convenient(s_target) {
        (s_old.clone(), s_target.clone(), None)
    } else {
        let n = match completion {
            Completion::Auto => default_completion_exponent(&s_old.with(s_target.iter().copied())),
            Completion::Exponent(n) => n,
        };
        analyze(s_old, Completion::Exponent(n))?;
        analyze(s_target, Completion::Exponent(n))?;
        (
            convenient_completion(s_old, n)?,
            convenient_completion(s_target, n)?,
            Some(n),
        )
    };
    let old_np = build_polyhedron(&s_old_c)?;
    let target_np = build_polyhedron(&s_target_c)?;
    if target_np.vertices().iter().any(|v| !old_np.contains(v)) {
        return Err(Error::TargetNotContained);
    }
    let before = invariants_of_polyhedron(&old_np)?;

    let old_compact: Vec<_> = old_np.compact_facets().map(|(_, f)| f.clone()).collect();
    let target_compact: Vec<_> = target_np.compact_facets().map(|(_, f)| f.clone()).collect();
    let [ix, iy, _] = target_np.intercepts();
    let mut lost = BTreeSet::new();
    for x in 0..ix {
        for y in 0..iy {
            let from = lowest_z(&old_compact, x, y);
            let to = lowest_z(&target_compact, x, y);
            for z in from..to {
                lost.insert(ExponentVector::new(x, y, z as u32));
            }
        }
    }

    let report = run_path(old_np, before, completion, |np| {
        if lost.is_empty() {
            return Ok(None);
        }
        let a = lost
            .iter()
            .copied()
            .find(|p| np.is_vertex(p))
            .expect("some lost lattice point is a vertex");
        lost.remove(&a);
        Ok(Some(a))
    })?;
    let last = report
        .steps
        .last()
        .map(|s| &s.geometry.new_np)
        .unwrap_or(&target_np);
    assert_eq!(last.facets(), target_np.facets());
    Ok(report)
}
