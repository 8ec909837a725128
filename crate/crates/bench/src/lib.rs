//! Fixed inputs for the engine benchmarks.

use ndsig::{convenient_completion, families, Support};

/// Completed supports of increasing size, labelled for benchmark ids.
pub fn hull_fixtures() -> Vec<(String, Support)> {
    let t6 = families::t_family(6, false);
    vec![
        ("T(4,5,6)".into(), families::tpqr(4, 5, 6)),
        (
            "example1".into(),
            convenient_completion(&families::example1(false), 13).unwrap(),
        ),
        (
            "t-family k=6".into(),
            convenient_completion(&t6, 1 + 3 * t6.max_coord()).unwrap(),
        ),
    ]
}
