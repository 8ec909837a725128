//! Supports of the named families used as fixtures and search seeds.

use crate::support::Support;

/// `t·xyz + xyz(x+y+z) + x⁴y + y⁴z + z⁴x`, with or without the `t·xyz` term.
pub const EXAMPLE1_TEXT: &str = "t*x*y*z + x*y*z*(x+y+z) + x^4*y + y^4*z + z^4*x";

/// `t·xyz + x^(3k+3)·y + x^(k+1)·yz + z²x + y²z`.
pub fn t_family_text(k: u32) -> String {
    format!(
        "t*x*y*z + x^{}*y + x^{}*y*z + z^2*x + y^2*z",
        3 * k + 3,
        k + 1
    )
}

pub fn example1(with_t: bool) -> Support {
    let mut pts = vec![
        [2, 1, 1],
        [1, 2, 1],
        [1, 1, 2],
        [4, 1, 0],
        [0, 4, 1],
        [1, 0, 4],
    ];
    if with_t {
        pts.push([1, 1, 1]);
    }
    Support::from_triples(&pts)
}

pub fn t_family(k: u32, with_t: bool) -> Support {
    let mut pts = vec![[3 * k + 3, 1, 0], [k + 1, 1, 1], [1, 0, 2], [0, 2, 1]];
    if with_t {
        pts.push([1, 1, 1]);
    }
    Support::from_triples(&pts)
}

/// `xyz + x^p + y^q + z^r`.
pub fn tpqr(p: u32, q: u32, r: u32) -> Support {
    Support::from_triples(&[[1, 1, 1], [p, 0, 0], [0, q, 0], [0, 0, r]])
}

/// `x^a + y^b + z^c`.
pub fn brieskorn(a: u32, b: u32, c: u32) -> Support {
    Support::from_triples(&[[a, 0, 0], [0, b, 0], [0, 0, c]])
}
