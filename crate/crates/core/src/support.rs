use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

/// A nonempty finite set of exponent vectors, kept in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExponentVector>", into = "Vec<ExponentVector>")]
pub struct Support {
    points: BTreeSet<ExponentVector>,
}

impl Support {
    pub fn new<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let points: BTreeSet<_> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Self { points })
    }

    /// Convenience constructor for literal supports in tests and examples.
    ///
    /// # Panics
    /// Panics if `points` is empty.
    pub fn from_triples(points: &[[u32; 3]]) -> Self {
        Self::new(points.iter().map(|&p| ExponentVector(p))).expect("nonempty support literal")
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.points.contains(p)
    }

    pub fn max_coord(&self) -> u32 {
        self.points
            .iter()
            .map(ExponentVector::max_coord)
            .max()
            .unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<ExponentVector> {
        self.points.iter().copied().collect()
    }

    /// Returns a copy with `p` removed, or `None` if that would empty the set.
    pub fn without(&self, p: &ExponentVector) -> Option<Self> {
        let mut points = self.points.clone();
        points.remove(p);
        (!points.is_empty()).then_some(Self { points })
    }

    pub fn with(&self, extra: impl IntoIterator<Item = ExponentVector>) -> Self {
        let mut points = self.points.clone();
        points.extend(extra);
        Self { points }
    }

    /// Applies the coordinate permutation `p -> (p[perm[0]], p[perm[1]], p[perm[2]])`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self {
            points: self.points.iter().map(|p| p.permuted(perm)).collect(),
        }
    }

    /// Points not dominated componentwise by another point. Only these can be
    /// vertices of `Conv(S) + R^3_{>=0}`.
    pub fn minimal_points(&self) -> Vec<ExponentVector> {
        self.points
            .iter()
            .filter(|p| !self.points.iter().any(|q| q != *p && p.dominates(q)))
            .copied()
            .collect()
    }
}

impl TryFrom<Vec<ExponentVector>> for Support {
    type Error = Error;

    fn try_from(v: Vec<ExponentVector>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Support> for Vec<ExponentVector> {
    fn from(s: Support) -> Self {
        s.points.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a Support {
    type Item = &'a ExponentVector;
    type IntoIter = std::collections::btree_set::Iter<'a, ExponentVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}
