use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Exponents `(a, b, c)` of the monomial `x^a y^b z^c`.
///
/// Ordering is lexicographic on `(a, b, c)`, which is the canonical order used
/// for vertices and lattice-point lists throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub [u32; 3]);

impl ExponentVector {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Self([a, b, c])
    }

    #[inline]
    pub const fn a(&self) -> u32 {
        self.0[0]
    }

    #[inline]
    pub const fn b(&self) -> u32 {
        self.0[1]
    }

    #[inline]
    pub const fn c(&self) -> u32 {
        self.0[2]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// True when every exponent is positive, i.e. the point lies in `Z^3_{>0}`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&e| e > 0)
    }

    /// The axis index if this is a pure power `x_i^e` with `e > 0`.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..3).filter(|&i| self.0[i] != 0).collect();
        match nonzero.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn max_coord(&self) -> u32 {
        self.0.into_iter().max().unwrap_or(0)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        (0..3).all(|i| self.0[i] >= other.0[i])
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]]])
    }

    pub(crate) fn to_i64(self) -> [i64; 3] {
        self.0.map(i64::from)
    }

    pub(crate) fn from_i64(p: [i64; 3]) -> Option<Self> {
        let conv = |v: i64| u32::try_from(v).ok();
        Some(Self([conv(p[0])?, conv(p[1])?, conv(p[2])?]))
    }
}

impl From<[u32; 3]> for ExponentVector {
    fn from(v: [u32; 3]) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Parses `a,b,c`, optionally wrapped in parentheses.
impl FromStr for ExponentVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!(
                "expected three comma-separated exponents, got `{s}`"
            ));
        }
        let mut out = [0u32; 3];
        for (slot, part) in out.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| format!("`{part}` is not a nonnegative integer"))?;
        }
        Ok(Self(out))
    }
}

/// Small exact-integer vector helpers shared by the geometry modules.
pub(crate) mod ivec {
    pub type I3 = [i64; 3];

    #[inline]
    pub fn sub(a: I3, b: I3) -> I3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    #[inline]
    pub fn dot(a: I3, b: I3) -> i64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    #[inline]
    pub fn cross(a: I3, b: I3) -> I3 {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    /// `det[a; b; c]`, widened so that coordinates up to ~10^6 cannot overflow.
    #[inline]
    pub fn det(a: I3, b: I3, c: I3) -> i128 {
        let w = |v: I3| v.map(i128::from);
        let (a, b, c) = (w(a), w(b), w(c));
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    }

    pub fn gcd(a: i64, b: i64) -> i64 {
        num_integer::gcd(a, b)
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(v: I3) -> I3 {
        let g = gcd(gcd(v[0], v[1]), v[2]);
        if g == 0 {
            v
        } else {
            v.map(|c| c / g)
        }
    }
}
