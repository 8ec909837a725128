//! Milnor number, inertia triple `(μ₊, μ₀, μ₋)`, Jordan-block counts and
//! signature of an isolated Newton-nondegenerate surface germ, read off its
//! Newton diagram.
//!
//! Counting rules, for positive lattice points against the (convenient)
//! diagram:
//! * points strictly below give the spectral numbers in `(-1, 0)`, and by
//!   symmetry as many in `(1, 2)`; all of them contribute to `μ₊`;
//! * points on the diagram give the spectral numbers equal to `0` (and as many
//!   equal to `1`), i.e. the eigenvalue-one part of the monodromy;
//! * points on an edge or vertex are exactly the 2×2 Jordan blocks (`J₂`);
//!   the remaining eigenvalue-one dimensions are 1×1 blocks, which come in
//!   pairs, so `J₁ = 2·#(points in 2-face interiors)`;
//! * a 1×1 block adds one to `μ₀`, a 2×2 block adds one to `μ₀` and one to `μ₊`.
//!
//! Hence `μ₊ = 2·below + J₂`, `μ₀ = J₁ + J₂`, and `μ₋ = μ - μ₊ - μ₀`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{
    build_polyhedron, convenient_completion, default_completion_exponent, is_convenient,
    NewtonPolyhedron,
};
use crate::lattice::{enumerate_not_above, volumes, ClassifiedPoints, VolumeData};
use crate::support::Support;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCounts {
    /// Positive lattice points strictly below the diagram.
    pub p_below: i64,
    /// Positive lattice points on the diagram.
    pub p_on: i64,
    /// Of those, the ones in the interior of a 2-face.
    pub p_face_interior: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanCounts {
    pub j1: i64,
    pub j2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityInvariants {
    pub mu: i64,
    pub mu_plus: i64,
    pub mu_zero: i64,
    pub mu_minus: i64,
    pub signature: i64,
    pub jordan: JordanCounts,
    pub spectral: SpectralCounts,
    pub volume: VolumeData,
}

impl SingularityInvariants {
    /// `(μ, μ₊, μ₀, μ₋, μ₊ - μ₋)`, the column order of the usual tables.
    pub fn row(&self) -> [i64; 5] {
        [
            self.mu,
            self.mu_plus,
            self.mu_zero,
            self.mu_minus,
            self.signature,
        ]
    }

    /// Everything except the volumes, which depend on the completion exponent.
    fn topological_key(&self) -> ([i64; 5], JordanCounts, SpectralCounts) {
        (self.row(), self.jordan, self.spectral)
    }
}

/// How to make a non-convenient support convenient.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Completion {
    /// `1 + 3·(largest coordinate)`.
    #[default]
    Auto,
    Exponent(u32),
}

/// Full result of analysing one support.
#[derive(Debug, Clone)]
pub struct Analysis {
    /// The support actually used (completed if needed).
    pub support: Support,
    /// Exponent of the added pure powers, if any were added.
    pub completion: Option<u32>,
    pub polyhedron: NewtonPolyhedron,
    pub points: ClassifiedPoints,
    pub invariants: SingularityInvariants,
}

pub fn jordan_counts(cp: &ClassifiedPoints) -> JordanCounts {
    JordanCounts {
        j1: 2 * cp.on_face_interior.len() as i64,
        j2: cp.on_skeleton.len() as i64,
    }
}

fn assemble(volume: VolumeData, cp: &ClassifiedPoints) -> Result<SingularityInvariants> {
    let mu = volume.newton_number();
    if mu < 0 {
        return Err(Error::NonIsolated(format!(
            "Newton number is negative ({mu})"
        )));
    }
    let spectral = SpectralCounts {
        p_below: cp.below.len() as i64,
        p_on: cp.on_count() as i64,
        p_face_interior: cp.on_face_interior.len() as i64,
    };
    let jordan = jordan_counts(cp);
    let mu_plus = 2 * spectral.p_below + jordan.j2;
    let mu_zero = jordan.j1 + jordan.j2;
    let mu_minus = mu - mu_plus - mu_zero;
    if mu_minus < 0 {
        return Err(Error::NegativeMuMinus(mu_minus));
    }
    let inv = SingularityInvariants {
        mu,
        mu_plus,
        mu_zero,
        mu_minus,
        signature: mu_plus - mu_minus,
        jordan,
        spectral,
        volume,
    };
    assert_eq!(inv.mu, inv.mu_plus + inv.mu_zero + inv.mu_minus);
    assert_eq!(
        inv.mu_plus + inv.mu_zero,
        2 * (spectral.p_below + spectral.p_on)
    );
    assert_eq!(inv.jordan.j1 % 2, 0);
    Ok(inv)
}

/// Invariants of a germ whose support is convenient, read off its polyhedron.
pub fn invariants_of_polyhedron(np: &NewtonPolyhedron) -> Result<SingularityInvariants> {
    let (inv, _) = invariants_and_points(np)?;
    Ok(inv)
}

fn invariants_and_points(
    np: &NewtonPolyhedron,
) -> Result<(SingularityInvariants, ClassifiedPoints)> {
    let volume = volumes(np)?;
    let cp = enumerate_not_above(np);
    let inv = assemble(volume, &cp)?;
    Ok((inv, cp))
}

/// Analyses a support, completing it first when it is not convenient.
///
/// After completion with exponent `n` the analysis is repeated with `n + 1`;
/// the two must agree on every invariant (volumes aside), otherwise the germ
/// is reported as non-isolated.
pub fn analyze(s: &Support, completion: Completion) -> Result<Analysis> {
    if is_convenient(s) {
        let polyhedron = build_polyhedron(s)?;
        let (invariants, points) = invariants_and_points(&polyhedron)?;
        return Ok(Analysis {
            support: s.clone(),
            completion: None,
            polyhedron,
            points,
            invariants,
        });
    }
    let n = match completion {
        Completion::Auto => default_completion_exponent(s),
        Completion::Exponent(n) => n,
    };
    let completed = convenient_completion(s, n)?;
    let polyhedron = build_polyhedron(&completed)?;
    let (invariants, points) = invariants_and_points(&polyhedron)?;

    let check = build_polyhedron(&convenient_completion(s, n + 1)?)?;
    let next = match invariants_of_polyhedron(&check) {
        Ok(inv) => inv,
        Err(Error::NegativeMuMinus(_)) | Err(Error::NonIsolated(_)) => {
            return Err(Error::NonIsolated(format!(
                "invariants are undefined after completing with exponent {}",
                n + 1
            )))
        }
        Err(e) => return Err(e),
    };
    if next.topological_key() != invariants.topological_key() {
        return Err(Error::NonIsolated(format!(
            "Newton number does not stabilize under completion: {} at exponent {n}, {} at {}",
            invariants.mu,
            next.mu,
            n + 1
        )));
    }
    Ok(Analysis {
        support: completed,
        completion: Some(n),
        polyhedron,
        points,
        invariants,
    })
}

pub fn signature_triple(s: &Support) -> Result<SingularityInvariants> {
    Ok(analyze(s, Completion::Auto)?.invariants)
}

pub fn milnor_number(s: &Support) -> Result<i64> {
    Ok(signature_triple(s)?.mu)
}

/// Componentwise sum over the singular points of one fibre; the signature is
/// recomputed from the summed `μ₊` and `μ₋`.
pub fn sum_invariants(list: &[SingularityInvariants]) -> Result<SingularityInvariants> {
    let (first, rest) = list.split_first().ok_or(Error::EmptyList)?;
    let mut acc = *first;
    for inv in rest {
        acc.mu += inv.mu;
        acc.mu_plus += inv.mu_plus;
        acc.mu_zero += inv.mu_zero;
        acc.mu_minus += inv.mu_minus;
        acc.jordan.j1 += inv.jordan.j1;
        acc.jordan.j2 += inv.jordan.j2;
        acc.spectral.p_below += inv.spectral.p_below;
        acc.spectral.p_on += inv.spectral.p_on;
        acc.spectral.p_face_interior += inv.spectral.p_face_interior;
        acc.volume = acc.volume + inv.volume;
    }
    acc.signature = acc.mu_plus - acc.mu_minus;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tpqr(p: u32, q: u32, r: u32) -> Support {
        Support::from_triples(&[[1, 1, 1], [p, 0, 0], [0, q, 0], [0, 0, r]])
    }

    fn diagonal(a: u32, b: u32, c: u32) -> Support {
        Support::from_triples(&[[a, 0, 0], [0, b, 0], [0, 0, c]])
    }

    #[test]
    fn tpqr_rows() {
        for (p, q, r) in [(3, 3, 4), (4, 5, 6), (3, 4, 12), (2, 3, 7)] {
            let inv = signature_triple(&tpqr(p, q, r)).unwrap();
            let s = i64::from(p + q + r);
            assert_eq!(inv.row(), [s - 1, 1, 1, s - 3, 4 - s]);
            assert_eq!(inv.jordan, JordanCounts { j1: 0, j2: 1 });
        }
    }

    #[test]
    fn parabolic_e6() {
        let inv = signature_triple(&tpqr(3, 3, 3)).unwrap();
        assert_eq!(inv.row(), [8, 0, 2, 6, -6]);
        assert_eq!(inv.jordan, JordanCounts { j1: 2, j2: 0 });
    }

    #[test]
    fn a1_row() {
        let inv = signature_triple(&diagonal(2, 2, 2)).unwrap();
        assert_eq!(inv.row(), [1, 0, 0, 1, -1]);
        assert_eq!(inv.jordan, JordanCounts::default());
    }

    #[test]
    fn diagonal_milnor_numbers() {
        for (a, b, c) in [(2, 2, 6), (3, 4, 5), (2, 3, 7), (5, 5, 5)] {
            assert_eq!(
                milnor_number(&diagonal(a, b, c)).unwrap(),
                i64::from((a - 1) * (b - 1) * (c - 1))
            );
        }
    }

    #[test]
    fn suspension_of_three_tangent_branches() {
        // z^2 + y^3 - x^6 y
        let s = Support::from_triples(&[[0, 0, 2], [0, 3, 0], [6, 1, 0]]);
        let a = analyze(&s, Completion::Auto).unwrap();
        assert_eq!(a.completion, Some(19));
        assert_eq!(a.invariants.row(), [16, 2, 0, 14, -12]);
    }

    #[test]
    fn sums() {
        let a1 = signature_triple(&diagonal(2, 2, 2)).unwrap();
        let a5 = signature_triple(&diagonal(2, 6, 2)).unwrap();
        assert_eq!(a5.row(), [5, 0, 0, 5, -5]);
        let total = sum_invariants(&[a5, a5, a1, a1, a1]).unwrap();
        assert_eq!(total.row(), [13, 0, 0, 13, -13]);
        assert_eq!(sum_invariants(&[a1]).unwrap().row(), [1, 0, 0, 1, -1]);
        assert_eq!(sum_invariants(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn non_isolated_germs() {
        // x^2 y^2 is singular along two axes
        let s = Support::from_triples(&[[2, 2, 0]]);
        assert!(matches!(signature_triple(&s), Err(Error::NonIsolated(_))));
        // x y: the z axis is singular
        let s = Support::from_triples(&[[1, 1, 0]]);
        assert!(matches!(signature_triple(&s), Err(Error::NonIsolated(_))));
    }

    #[test]
    fn explicit_completion_must_exceed_support() {
        let s = Support::from_triples(&[[0, 0, 2], [0, 3, 0], [6, 1, 0]]);
        assert_eq!(
            analyze(&s, Completion::Exponent(5)).map(|a| a.invariants),
            Err(Error::CompletionTooSmall { n: 5, max: 6 })
        );
        let a = analyze(&s, Completion::Exponent(40)).unwrap();
        assert_eq!(a.invariants.row(), [16, 2, 0, 14, -12]);
    }
}
