use std::fmt;

use thiserror::Error;

use crate::exponent::ExponentVector;

pub type Result<T> = std::result::Result<T, Error>;

/// Which standing hypothesis of a primitive degeneration failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    /// A new point lies in the relative interior of a 2-face of the smaller body.
    NewPointInFaceInterior,
    /// The collar reaches a coordinate plane, so some of its lattice points
    /// are not strictly positive.
    CollarTouchesCoordinatePlane,
    /// The boundary of the collar is not a single simple closed polygon.
    LoopNotSimple,
    /// A loop vertex was in the interior of a 2-face of the original diagram.
    OuterPointOffOldSkeleton,
    /// A lattice point interior to a loop edge already sat on an edge or
    /// vertex of the original diagram.
    InnerPointOnOldSkeleton,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::NewPointInFaceInterior => "a new point lies in the interior of a 2-face of C_new",
            Self::CollarTouchesCoordinatePlane => "the collar touches a coordinate plane",
            Self::LoopNotSimple => "the collar boundary is not a simple closed loop",
            Self::OuterPointOffOldSkeleton => {
                "a loop vertex lies in the interior of a 2-face of the original diagram"
            }
            Self::InnerPointOnOldSkeleton => {
                "an inner loop point lies on an edge or vertex of the original diagram"
            }
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound parameter `{name}` at byte {pos}")]
    UnboundParameter { name: String, pos: usize },

    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },

    #[error("the polynomial is zero")]
    ZeroPolynomial,

    #[error("empty support")]
    EmptySupport,

    #[error("completion exponent {n} must exceed every coordinate of the support (max {max})")]
    CompletionTooSmall { n: u32, max: u32 },

    #[error("support is not convenient (missing a pure power of some variable)")]
    NotConvenient,

    #[error("support has no two-dimensional compact face")]
    DegenerateSupport,

    #[error("singularity is not isolated: {0}")]
    NonIsolated(String),

    #[error("internal inconsistency: mu_minus would be {0}")]
    NegativeMuMinus(i64),

    #[error("{0} is not a vertex of the Newton diagram")]
    NotAVertex(ExponentVector),

    #[error("{0} has a zero coordinate")]
    NotInteriorLatticePoint(ExponentVector),

    #[error("degeneration assumption violated: {0}")]
    AssumptionViolated(Assumption),

    #[error("defect delta = {delta} < 0 while erasing {erased}")]
    LemmaViolated { erased: ExponentVector, delta: i64 },

    #[error("the target diagram is not contained in the source diagram")]
    TargetNotContained,

    #[error("empty list")]
    EmptyList,

    #[error("no findings")]
    EmptyFindings,

    #[error("invalid family spec: {0}")]
    InvalidFamilySpec(String),
}
