//! Searching for degenerations along which the signature grows.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degeneration::{report_for, verify_towards, DegenerationSummary, Deltas, PathReport};
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::families;
use crate::hull::convenient_completion;
use crate::invariants::{analyze, Completion, SingularityInvariants};
use crate::support::Support;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PaperFamily {
    Example1,
    /// `t·xyz + x^(3k+3)·y + x^(k+1)·yz + z²x + y²z` for `k` in the range.
    TFamily {
        k_min: u32,
        k_max: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// `count` supports of up to `max_points` monomials drawn uniformly from
    /// `[0, B]³ ∖ {0}`, made convenient with pure powers of exponent `3B + 1`.
    Random,
    /// The first `count` supports of one to three monomials from
    /// `[0, B]³ ∖ {0}`, by size and then lexicographically.
    Grid,
    Paper(PaperFamily),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub mode: SearchMode,
    pub box_size: u32,
    pub max_points: usize,
    pub seed: u64,
    pub count: usize,
}

impl FamilySpec {
    pub fn random(box_size: u32, max_points: usize, count: usize, seed: u64) -> Self {
        Self {
            mode: SearchMode::Random,
            box_size,
            max_points,
            seed,
            count,
        }
    }

    pub fn grid(box_size: u32, max_points: usize, count: usize) -> Self {
        Self {
            mode: SearchMode::Grid,
            box_size,
            max_points,
            seed: 0,
            count,
        }
    }

    pub fn paper(family: PaperFamily) -> Self {
        Self {
            mode: SearchMode::Paper(family),
            box_size: 2,
            max_points: 4,
            seed: 0,
            count: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamilySpec(msg));
        match self.mode {
            SearchMode::Paper(PaperFamily::TFamily { k_min, k_max }) => {
                if k_min == 0 || k_min > k_max {
                    return bad(format!(
                        "k range {k_min}..{k_max} must be nonempty with k ≥ 1"
                    ));
                }
            }
            SearchMode::Paper(PaperFamily::Example1) => {}
            SearchMode::Random | SearchMode::Grid => {
                if self.box_size < 2 {
                    return bad(format!("box must be at least 2, got {}", self.box_size));
                }
                if self.max_points < 4 {
                    return bad(format!(
                        "points must be at least 4, got {}",
                        self.max_points
                    ));
                }
                if self.count == 0 {
                    return bad("count must be at least 1".into());
                }
            }
        }
        Ok(())
    }
}

/// A degeneration that raises the signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    /// Support of the generic fibre, as sampled or named.
    pub support: Support,
    pub completion: Option<u32>,
    /// Vertices erased, in order; a primitive degeneration erases one.
    pub erased: Vec<ExponentVector>,
    pub steps: Vec<DegenerationSummary>,
    pub generic: SingularityInvariants,
    pub special: SingularityInvariants,
    pub predicted: Deltas,
    pub direct: Deltas,
    pub sign_delta: i64,
}

/// Counters over every attempted degeneration of a hunt.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntStats {
    pub candidates: usize,
    /// Erasures attempted, valid or not.
    pub attempted: usize,
    /// Erasures that passed every check and were compared.
    pub processed: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    /// Instances where the two closed forms of the signature change differ.
    pub sign_form_mismatches: usize,
    /// Smallest defect seen; `None` if nothing was processed.
    pub min_delta: Option<i64>,
    pub skipped: BTreeMap<String, usize>,
}

impl HuntStats {
    fn skip(&mut self, reason: String) {
        *self.skipped.entry(reason).or_default() += 1;
    }

    fn absorb(&mut self, o: HuntStats) {
        self.candidates += o.candidates;
        self.attempted += o.attempted;
        self.processed += o.processed;
        self.consistent += o.consistent;
        self.inconsistent += o.inconsistent;
        self.sign_form_mismatches += o.sign_form_mismatches;
        self.min_delta = match (self.min_delta, o.min_delta) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (k, v) in o.skipped {
            *self.skipped.entry(k).or_default() += v;
        }
    }

    fn record(&mut self, consistent: bool, sign_forms_agree: bool, delta: i64) {
        self.processed += 1;
        if consistent {
            self.consistent += 1;
        } else {
            self.inconsistent += 1;
        }
        if !sign_forms_agree {
            self.sign_form_mismatches += 1;
        }
        self.min_delta = Some(self.min_delta.map_or(delta, |d| d.min(delta)));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntResult {
    pub findings: Vec<Finding>,
    pub stats: HuntStats,
}

enum Candidate {
    /// Try every vertex in `Z³_{>0}`.
    EachVertex(Support),
    /// Go from a generic support to a smaller special one.
    Path { generic: Support, special: Support },
}

fn skip_reason(e: &Error) -> String {
    match e {
        Error::NotAVertex(_) => "not_a_vertex".into(),
        Error::NotInteriorLatticePoint(_) => "not_interior".into(),
        Error::AssumptionViolated(a) => format!("assumption:{a}"),
        Error::NonIsolated(_) | Error::NegativeMuMinus(_) => "non_isolated".into(),
        Error::TargetNotContained => "target_not_contained".into(),
        other => format!("other:{other}"),
    }
}

fn nonzero_box_points(b: u32) -> Vec<ExponentVector> {
    let mut pts = Vec::new();
    for x in 0..=b {
        for y in 0..=b {
            for z in 0..=b {
                if (x, y, z) != (0, 0, 0) {
                    pts.push(ExponentVector::new(x, y, z));
                }
            }
        }
    }
    pts
}

fn random_candidates(spec: &FamilySpec) -> Vec<Candidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let b = spec.box_size;
    (0..spec.count)
        .map(|_| {
            let pts: Vec<ExponentVector> = (0..spec.max_points)
                .map(|_| loop {
                    let p = ExponentVector::new(
                        rng.random_range(0..=b),
                        rng.random_range(0..=b),
                        rng.random_range(0..=b),
                    );
                    if p.degree() > 0 {
                        break p;
                    }
                })
                .collect();
            let sample = Support::new(pts).expect("nonempty sample");
            Candidate::EachVertex(
                convenient_completion(&sample, 1 + 3 * b).expect("exponent exceeds the box"),
            )
        })
        .collect()
}

fn grid_candidates(spec: &FamilySpec) -> Vec<Candidate> {
    let pool = nonzero_box_points(spec.box_size);
    let mut out = Vec::new();
    for size in 1..=spec.max_points.min(3) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if out.len() == spec.count {
                return out;
            }
            let pts = idx.iter().map(|&i| pool[i]);
            out.push(Candidate::EachVertex(Support::new(pts).expect("nonempty")));
            // advance to the next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == pool.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn candidates(spec: &FamilySpec) -> Vec<Candidate> {
    match spec.mode {
        SearchMode::Random => random_candidates(spec),
        SearchMode::Grid => grid_candidates(spec),
        SearchMode::Paper(PaperFamily::Example1) => vec![Candidate::Path {
            generic: families::example1(true),
            special: families::example1(false),
        }],
        SearchMode::Paper(PaperFamily::TFamily { k_min, k_max }) => (k_min..=k_max)
            .map(|k| Candidate::Path {
                generic: families::t_family(k, true),
                special: families::t_family(k, false),
            })
            .collect(),
    }
}

fn path_finding(support: &Support, path: &PathReport) -> Finding {
    Finding {
        support: support.clone(),
        completion: path.completion,
        erased: path.erased(),
        steps: path.steps.iter().map(|s| s.summary()).collect(),
        generic: path.before,
        special: path.after,
        predicted: path.predicted(),
        direct: path.direct(),
        sign_delta: path.direct().sign,
    }
}

fn process(c: &Candidate) -> Result<(Vec<Finding>, HuntStats)> {
    let mut stats = HuntStats {
        candidates: 1,
        ..HuntStats::default()
    };
    let mut findings = Vec::new();
    match c {
        Candidate::EachVertex(s) => {
            let analysis = match analyze(s, Completion::Auto) {
                Ok(a) => a,
                Err(e) => {
                    stats.skip(skip_reason(&e));
                    return Ok((findings, stats));
                }
            };
            let np = &analysis.polyhedron;
            for &a in np.vertices().iter().filter(|v| v.is_positive()) {
                stats.attempted += 1;
                let r = match report_for(np, analysis.invariants, a) {
                    Ok(r) => r,
                    Err(e @ Error::LemmaViolated { .. }) => return Err(e),
                    Err(e) => {
                        stats.skip(skip_reason(&e));
                        continue;
                    }
                };
                stats.record(r.consistent, r.sign_forms_agree(), r.delta);
                if r.consistent && r.direct.sign > 0 {
                    findings.push(Finding {
                        support: s.clone(),
                        completion: analysis.completion,
                        erased: vec![a],
                        steps: vec![r.summary()],
                        generic: r.before,
                        special: r.after,
                        predicted: r.predicted,
                        direct: r.direct,
                        sign_delta: r.direct.sign,
                    });
                }
            }
        }
        Candidate::Path { generic, special } => {
            stats.attempted += 1;
            match verify_towards(generic, special, Completion::Auto) {
                Ok(path) => {
                    for s in &path.steps {
                        stats.record(s.consistent, s.sign_forms_agree(), s.delta);
                    }
                    let f = path_finding(generic, &path);
                    if path.consistent() && f.sign_delta > 0 {
                        findings.push(f);
                    }
                }
                Err(e @ Error::LemmaViolated { .. }) => return Err(e),
                Err(e) => stats.skip(skip_reason(&e)),
            }
        }
    }
    Ok((findings, stats))
}

/// Runs the search. Candidates are processed in parallel, and the result
/// depends only on `spec`.
///
/// Findings are sorted by decreasing signature change, then by support and
/// erased vertices, without repeats. A negative defect anywhere aborts the
/// hunt with [`Error::LemmaViolated`].
pub fn hunt(spec: &FamilySpec) -> Result<HuntResult> {
    spec.validate()?;
    let outcomes: Vec<Result<(Vec<Finding>, HuntStats)>> =
        candidates(spec).par_iter().map(process).collect();

    let mut findings = Vec::new();
    let mut stats = HuntStats::default();
    for o in outcomes {
        let (f, s) = o?;
        findings.extend(f);
        stats.absorb(s);
    }
    findings.sort_by(|a, b| {
        b.sign_delta
            .cmp(&a.sign_delta)
            .then_with(|| a.support.cmp(&b.support))
            .then_with(|| a.erased.cmp(&b.erased))
    });
    findings.dedup_by(|a, b| a.support == b.support && a.erased == b.erased);
    Ok(HuntResult { findings, stats })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub support: Support,
    pub erased: Vec<ExponentVector>,
    pub sign_delta: i64,
    pub mu_special: i64,
    pub mu_generic: i64,
    /// `Δsign / μ(X₀)`.
    pub per_mu_special: Rational64,
    /// `Δsign / μ(X_t)`.
    pub per_mu_generic: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    pub max_per_mu_special: Rational64,
    pub max_per_mu_generic: Rational64,
}

pub fn ratio_report(findings: &[Finding]) -> Result<RatioReport> {
    if findings.is_empty() {
        return Err(Error::EmptyFindings);
    }
    let ratio = |n: i64, d: i64| {
        if d == 0 {
            Rational64::from_integer(0)
        } else {
            Rational64::new(n, d)
        }
    };
    let rows: Vec<RatioRow> = findings
        .iter()
        .map(|f| RatioRow {
            support: f.support.clone(),
            erased: f.erased.clone(),
            sign_delta: f.sign_delta,
            mu_special: f.special.mu,
            mu_generic: f.generic.mu,
            per_mu_special: ratio(f.sign_delta, f.special.mu),
            per_mu_generic: ratio(f.sign_delta, f.generic.mu),
        })
        .collect();
    let max_per_mu_special = rows.iter().map(|r| r.per_mu_special).max().unwrap();
    let max_per_mu_generic = rows.iter().map(|r| r.per_mu_generic).max().unwrap();
    Ok(RatioReport {
        rows,
        max_per_mu_special,
        max_per_mu_generic,
    })
}
