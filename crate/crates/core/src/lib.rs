//! Newton-diagram combinatorics for isolated surface singularities
//! `f: (C³, 0) → (C, 0)`: Milnor number, inertia triple of the Milnor-fibre
//! intersection form, Jordan-block counts of the monodromy, and the change of
//! these under erasing a vertex of the diagram.

pub mod degeneration;
pub mod error;
pub mod exponent;
pub mod families;
pub mod hull;
pub mod invariants;
pub mod lattice;
pub mod poly;
pub mod report;
pub mod search;
pub mod support;
pub mod triangulation;

pub use degeneration::{
    erase_vertex, erase_vertex_unchecked, predicted_deltas, verify_degeneration, verify_erasures,
    verify_towards, DegenerationCounts, DegenerationGeometry, DegenerationReport,
    DegenerationSummary, Deltas, PathReport, Prediction,
};
pub use error::{Assumption, Error, Result};
pub use exponent::ExponentVector;
pub use hull::{
    build_polyhedron, convenient_completion, default_completion_exponent, is_convenient, Facet,
    NewtonPolyhedron, PointClass, PrimitiveCovector,
};
pub use invariants::{
    analyze, invariants_of_polyhedron, jordan_counts, milnor_number, signature_triple,
    sum_invariants, Analysis, Completion, JordanCounts, SingularityInvariants, SpectralCounts,
};
pub use lattice::{enumerate_not_above, volumes, ClassifiedPoints, VolumeData};
pub use poly::{parse_polynomial, parse_rational, support_of, Bindings, Term, TermList};
pub use report::{
    format_table, DegenerationRecord, InvariantsRecord, ReportDocument, SearchRecord, ENGINE,
};
pub use search::{
    hunt, ratio_report, FamilySpec, Finding, HuntResult, HuntStats, PaperFamily, RatioReport,
    RatioRow, SearchMode,
};
pub use support::Support;
pub use triangulation::{elementary_triangulate, LatticeTriangle};
