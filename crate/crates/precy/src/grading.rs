//! Graded bases and degree bookkeeping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a basis element in its [`GradedBasis`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BasisId(pub usize);

/// A finite ordered basis of a graded vector space, each element carrying an
/// integer (cohomological) degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<i64>,
}

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("basis must be non-empty")]
    Empty,
    #[error("duplicate basis name {0:?}")]
    Duplicate(String),
    #[error("unknown basis name {0:?}")]
    Unknown(String),
}

impl GradedBasis {
    pub fn new(elements: Vec<(String, i64)>) -> Result<Self, BasisError> {
        if elements.is_empty() {
            return Err(BasisError::Empty);
        }
        let mut names = Vec::with_capacity(elements.len());
        let mut degrees = Vec::with_capacity(elements.len());
        for (name, deg) in elements {
            if names.contains(&name) {
                return Err(BasisError::Duplicate(name));
            }
            names.push(name);
            degrees.push(deg);
        }
        Ok(GradedBasis { names, degrees })
    }

    pub fn from_pairs(pairs: &[(&str, i64)]) -> Self {
        Self::new(pairs.iter().map(|(n, d)| (n.to_string(), *d)).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ids(&self) -> impl Iterator<Item = BasisId> {
        (0..self.len()).map(BasisId)
    }

    pub fn name(&self, id: BasisId) -> &str {
        &self.names[id.0]
    }

    pub fn degree(&self, id: BasisId) -> i64 {
        self.degrees[id.0]
    }

    /// Degree in the shifted space `A[1]`, the one almost all Koszul signs use.
    pub fn bar(&self, id: BasisId) -> i64 {
        self.degrees[id.0] - 1
    }

    pub fn lookup(&self, name: &str) -> Result<BasisId, BasisError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(BasisId)
            .ok_or_else(|| BasisError::Unknown(name.to_string()))
    }

    pub fn bar_sum(&self, ids: &[BasisId]) -> i64 {
        ids.iter().map(|&id| self.bar(id)).sum()
    }

    pub fn deg_sum(&self, ids: &[BasisId]) -> i64 {
        ids.iter().map(|&id| self.degree(id)).sum()
    }
}

/// The three gradings attached to a `k`-output cochain of dimension `d`:
/// `deg` as a map into copies of `A`, `bar` as a map into copies of `A[1]`,
/// and `norm` in the cyclic complex. They satisfy
/// `deg = bar + k = norm + (d-2)(k-1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegreeTriple {
    pub deg: i64,
    pub bar: i64,
    pub norm: i64,
}

impl DegreeTriple {
    pub fn from_bar(bar: i64, k: usize, d: i64) -> Self {
        let k = k as i64;
        let deg = bar + k;
        DegreeTriple {
            deg,
            bar,
            norm: deg - (d - 2) * (k - 1),
        }
    }

    pub fn from_deg(deg: i64, k: usize, d: i64) -> Self {
        let k = k as i64;
        DegreeTriple {
            deg,
            bar: deg - k,
            norm: deg - (d - 2) * (k - 1),
        }
    }

    pub fn consistent(&self, k: usize, d: i64) -> bool {
        let k = k as i64;
        self.deg == self.bar + k && self.deg == self.norm + (d - 2) * (k - 1)
    }
}
