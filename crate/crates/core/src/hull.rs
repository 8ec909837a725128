//! The Newton polyhedron `Γ₊ = Conv(S) + R³≥0` of a convenient support and its
//! compact face complex (the Newton diagram).
//!
//! Facets are found by exact gift-wrapping. The recession cone is handled by
//! truncating: `Γ₊ ∩ [0, R]³` is the convex hull of the corners of the boxes
//! `[s, R]³`, `s ∈ S`, for any `R` larger than every coordinate of `S`. Its
//! facets are the facets of `Γ₊` plus three cap facets `x_i = R`, which are
//! discarded afterwards.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ivec::{self, I3};
use crate::exponent::ExponentVector;
use crate::support::Support;

/// Primitive integer covector `(l1, l2, l3)` supporting a facet of `Γ₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimitiveCovector(pub [i64; 3]);

impl PrimitiveCovector {
    pub fn eval(&self, p: &ExponentVector) -> i64 {
        ivec::dot(self.0, p.to_i64())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }
}

/// `{p : normal·p = offset} ∩ Γ₊`, with `normal·p ≥ offset` on all of `Γ₊`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: PrimitiveCovector,
    pub offset: i64,
    /// Compact facets are exactly those with a strictly positive normal.
    pub compact: bool,
}

impl Facet {
    /// `normal·p - offset`; negative means `p` is strictly below this facet's plane.
    pub fn slack(&self, p: &ExponentVector) -> i64 {
        self.normal.eval(p) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Below,
    /// On exactly one facet, which is compact (the payload is its index).
    OnTwoFaceInterior(usize),
    /// On the Newton diagram and on at least two facets: an edge or a vertex.
    OnSkeleton,
    Above,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    support: Support,
    facets: Vec<Facet>,
    vertices: Vec<ExponentVector>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<usize>>,
    intercepts: [u32; 3],
}

pub fn is_convenient(s: &Support) -> bool {
    (0..3).all(|axis| s.iter().any(|p| p.pure_power_axis() == Some(axis)))
}

/// Adds `x^n`, `y^n`, `z^n` on each axis the support does not yet meet.
pub fn convenient_completion(s: &Support, n: u32) -> Result<Support> {
    let max = s.max_coord();
    if n <= max {
        return Err(Error::CompletionTooSmall { n, max });
    }
    let extra = (0..3)
        .filter(|&axis| !s.iter().any(|p| p.pure_power_axis() == Some(axis)))
        .map(|axis| {
            let mut e = [0u32; 3];
            e[axis] = n;
            ExponentVector(e)
        });
    Ok(s.with(extra))
}

/// Completion exponent used when the caller does not choose one.
pub fn default_completion_exponent(s: &Support) -> u32 {
    1 + 3 * s.max_coord()
}

pub fn build_polyhedron(s: &Support) -> Result<NewtonPolyhedron> {
    if !is_convenient(s) {
        return Err(Error::NotConvenient);
    }
    let minimal = s.minimal_points();
    let cap = i64::from(s.max_coord()) + 1;

    let mut corners: Vec<I3> = Vec::with_capacity(minimal.len() * 8);
    for p in &minimal {
        let p = p.to_i64();
        for mask in 0..8u8 {
            let mut q = p;
            for (axis, coord) in q.iter_mut().enumerate() {
                if mask & (1 << axis) != 0 {
                    *coord = cap;
                }
            }
            corners.push(q);
        }
    }
    corners.sort_unstable();
    corners.dedup();

    let raw = gift_wrap(&corners);

    let is_real = |q: &I3| q.iter().all(|&c| c < cap);
    let mut kept: Vec<(Facet, Vec<I3>)> = raw
        .into_iter()
        .filter(|f| f.normal.iter().all(|&c| c >= 0))
        .map(|f| {
            let facet = Facet {
                normal: PrimitiveCovector(f.normal),
                offset: f.offset,
                compact: f.normal.iter().all(|&c| c > 0),
            };
            (facet, f.polygon)
        })
        .collect();
    kept.sort_by_key(|a| (a.0.normal, a.0.offset));

    if !kept.iter().any(|(f, _)| f.compact) {
        return Err(Error::DegenerateSupport);
    }

    let vertex_set: BTreeSet<ExponentVector> = kept
        .iter()
        .flat_map(|(_, poly)| poly.iter().filter(|q| is_real(q)))
        .map(|&q| ExponentVector::from_i64(q).expect("hull vertices are nonnegative"))
        .collect();
    let vertices: Vec<ExponentVector> = vertex_set.into_iter().collect();
    let index_of = |q: &I3| {
        let v = ExponentVector::from_i64(*q).expect("hull vertices are nonnegative");
        vertices.binary_search(&v).expect("vertex was collected")
    };

    let mut edge_set = BTreeSet::new();
    let mut faces = Vec::with_capacity(kept.len());
    for (_, poly) in &kept {
        let n = poly.len();
        let mut cycle = Vec::new();
        for i in 0..n {
            let (u, v) = (&poly[i], &poly[(i + 1) % n]);
            if is_real(u) {
                cycle.push(index_of(u));
                if is_real(v) {
                    let (a, b) = (index_of(u), index_of(v));
                    edge_set.insert((a.min(b), a.max(b)));
                }
            }
        }
        faces.push(cycle);
    }

    let mut intercepts = [0u32; 3];
    for (axis, slot) in intercepts.iter_mut().enumerate() {
        *slot = s
            .iter()
            .filter(|p| p.pure_power_axis() == Some(axis))
            .map(|p| p.0[axis])
            .min()
            .expect("convenient support meets every axis");
    }

    let np = NewtonPolyhedron {
        support: s.clone(),
        facets: kept.into_iter().map(|(f, _)| f).collect(),
        vertices,
        edges: edge_set.into_iter().collect(),
        faces,
        intercepts,
    };
    debug_assert!(s.iter().all(|p| np.facets.iter().all(|f| f.slack(p) >= 0)));
    Ok(np)
}

impl NewtonPolyhedron {
    pub fn support(&self) -> &Support {
        &self.support
    }

    /// All facets of `Γ₊`, sorted lexicographically by normal.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = (usize, &Facet)> + '_ {
        self.facets.iter().enumerate().filter(|(_, f)| f.compact)
    }

    /// Vertices of `Γ₊`, sorted lexicographically.
    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn is_vertex(&self, p: &ExponentVector) -> bool {
        self.vertices.binary_search(p).is_ok()
    }

    /// Bounded edges as sorted pairs of vertex indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex indices around each facet, in the facet order. Compact facets give
    /// closed cycles oriented counterclockwise when seen from the origin side;
    /// the coordinate facets give the chain of their finite vertices.
    pub fn face_cycles(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_vertices(&self, facet: usize) -> Vec<ExponentVector> {
        self.faces[facet]
            .iter()
            .map(|&i| self.vertices[i])
            .collect()
    }

    /// Axis intercepts `(x-, y-, z-)` of the diagram.
    pub fn intercepts(&self) -> [u32; 3] {
        self.intercepts
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.facets.iter().all(|f| f.slack(p) >= 0)
    }

    pub fn classify_point(&self, p: &ExponentVector) -> PointClass {
        let mut compact_hit = None;
        let mut hits = 0usize;
        for (i, f) in self.facets.iter().enumerate() {
            match f.slack(p) {
                s if s < 0 => return PointClass::Below,
                0 => {
                    hits += 1;
                    if f.compact {
                        compact_hit = Some(i);
                    }
                }
                _ => {}
            }
        }
        match (compact_hit, hits) {
            (None, _) => PointClass::Above,
            (Some(i), 1) => PointClass::OnTwoFaceInterior(i),
            (Some(_), _) => PointClass::OnSkeleton,
        }
    }

    fn facet_equalities(&self, p: &ExponentVector) -> usize {
        self.facets.iter().filter(|f| f.slack(p) == 0).count()
    }

    /// Lattice points of a compact facet split into relative boundary and
    /// relative interior, each sorted. Non-compact facets are unbounded and
    /// yield two empty lists.
    pub fn facet_lattice_points(&self, facet: usize) -> (Vec<ExponentVector>, Vec<ExponentVector>) {
        let f = &self.facets[facet];
        if !f.compact {
            return (Vec::new(), Vec::new());
        }
        let verts = self.face_vertices(facet);
        let lo: [u32; 3] = std::array::from_fn(|i| verts.iter().map(|v| v.0[i]).min().unwrap());
        let hi: [u32; 3] = std::array::from_fn(|i| verts.iter().map(|v| v.0[i]).max().unwrap());

        let n = f.normal.0;
        let k = (0..3).max_by_key(|&i| n[i]).unwrap();
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let mut boundary = Vec::new();
        let mut interior = Vec::new();
        for a in lo[i]..=hi[i] {
            for b in lo[j]..=hi[j] {
                let rest = f.offset - n[i] * i64::from(a) - n[j] * i64::from(b);
                if rest < 0 || rest % n[k] != 0 {
                    continue;
                }
                let c = rest / n[k];
                let mut e = [0u32; 3];
                e[i] = a;
                e[j] = b;
                e[k] = u32::try_from(c).expect("coordinate fits");
                let p = ExponentVector(e);
                if !self.contains(&p) {
                    continue;
                }
                if self.facet_equalities(&p) >= 2 {
                    boundary.push(p);
                } else {
                    interior.push(p);
                }
            }
        }
        boundary.sort();
        interior.sort();
        (boundary, interior)
    }

    /// Number of elementary triangles in any lattice triangulation of a
    /// compact facet, from its lattice-point counts: `2I + B - 2`.
    pub fn pick_count(&self, facet: usize) -> i64 {
        let (b, i) = self.facet_lattice_points(facet);
        2 * i.len() as i64 + b.len() as i64 - 2
    }
}

struct RawFacet {
    normal: I3,
    offset: i64,
    /// Hull polygon of the facet, no three consecutive points collinear.
    polygon: Vec<I3>,
}

fn sign(x: i128) -> i32 {
    x.signum() as i32
}

/// Facets of the convex hull of a full-dimensional point set, with inward
/// primitive normals. The first facet is the supporting plane `x = min x`.
fn gift_wrap(points: &[I3]) -> Vec<RawFacet> {
    let x_min = points
        .iter()
        .map(|p| p[0])
        .min()
        .expect("nonempty point set");
    let mut known: HashMap<(I3, i64), usize> = HashMap::new();
    let mut facets: Vec<RawFacet> = Vec::new();
    let mut queue = VecDeque::new();
    let mut done_edges: HashSet<(I3, I3)> = HashSet::new();

    let push = |normal: I3,
                offset: i64,
                facets: &mut Vec<RawFacet>,
                known: &mut HashMap<(I3, i64), usize>,
                queue: &mut VecDeque<usize>| {
        if known.contains_key(&(normal, offset)) {
            return;
        }
        let on_plane: Vec<I3> = points
            .iter()
            .filter(|p| ivec::dot(normal, **p) == offset)
            .copied()
            .collect();
        let polygon = planar_hull(&on_plane, normal);
        known.insert((normal, offset), facets.len());
        queue.push_back(facets.len());
        facets.push(RawFacet {
            normal,
            offset,
            polygon,
        });
    };

    push([1, 0, 0], x_min, &mut facets, &mut known, &mut queue);

    while let Some(idx) = queue.pop_front() {
        let polygon = facets[idx].polygon.clone();
        let (normal, offset) = (facets[idx].normal, facets[idx].offset);
        let m = polygon.len();
        debug_assert!(m >= 3, "facet polygon must be two-dimensional");
        for e in 0..m {
            let (u, v) = (polygon[e], polygon[(e + 1) % m]);
            let key = if u < v { (u, v) } else { (v, u) };
            if !done_edges.insert(key) {
                continue;
            }
            let reference = polygon[(e + 2) % m];
            let (n2, off2) = pivot(points, u, v, reference, normal, offset);
            push(n2, off2, &mut facets, &mut known, &mut queue);
        }
    }
    facets
}

/// Rotates the plane of the current facet about the edge `uv` until it
/// supports the point set again, returning the neighbouring facet.
///
/// Every point off the current plane sits at an angle in `(0, π)` from the
/// current facet, measured about `uv`; the neighbour is the plane through the
/// point of largest angle. `reference` is a facet point not on the line `uv`.
fn pivot(points: &[I3], u: I3, v: I3, reference: I3, normal: I3, offset: i64) -> (I3, i64) {
    let d = ivec::sub(v, u);
    let r = ivec::sub(reference, u);
    let mut best: Option<I3> = None;
    let mut turn = 0;
    for &c in points {
        if ivec::dot(normal, c) == offset {
            continue;
        }
        let cu = ivec::sub(c, u);
        match best {
            None => {
                turn = sign(ivec::det(d, r, cu));
                best = Some(c);
            }
            Some(w) => {
                if sign(ivec::det(d, ivec::sub(w, u), cu)) == turn {
                    best = Some(c);
                }
            }
        }
    }
    let w = best.expect("point set is full-dimensional");
    let mut n2 = ivec::primitive(ivec::cross(d, ivec::sub(w, u)));
    if ivec::dot(n2, r) < 0 {
        n2 = n2.map(|c| -c);
    }
    let off2 = ivec::dot(n2, u);
    debug_assert!(points.iter().all(|p| ivec::dot(n2, *p) >= off2));
    (n2, off2)
}

/// Convex hull of coplanar points, as a cycle without collinear middle points,
/// oriented counterclockwise when viewed against the inward normal.
fn planar_hull(points: &[I3], normal: I3) -> Vec<I3> {
    let k = (0..3).max_by_key(|&i| normal[i].abs()).unwrap();
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let mut pts: Vec<I3> = points.to_vec();
    pts.sort_by_key(|p| (p[i], p[j]));
    pts.dedup();
    let cross2 = |o: &I3, a: &I3, b: &I3| -> i128 {
        i128::from(a[i] - o[i]) * i128::from(b[j] - o[j])
            - i128::from(a[j] - o[j]) * i128::from(b[i] - o[i])
    };
    // Andrew's monotone chain, counterclockwise in the (i, j) projection.
    let mut hull: Vec<I3> = Vec::with_capacity(pts.len() * 2);
    for p in pts.iter() {
        while hull.len() >= 2 && cross2(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross2(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    // Counterclockwise in (e_i, e_j) means the polygon's right-hand normal is
    // +e_k. We want it to point along -normal, i.e. out of the solid.
    if normal[k] > 0 {
        hull.reverse();
    }
    hull
}
