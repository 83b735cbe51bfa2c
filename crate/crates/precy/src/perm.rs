//! Permutations and weighted (Koszul) signs.
//!
//! A permutation is stored as a position map: `targets[i]` is the position the
//! element starting at position `i` ends up in. The Koszul sign of permuting
//! graded symbols is `(-1)` to the sum of `w[i]*w[j]` over inverted pairs,
//! which is exactly the sign obtained by performing adjacent transpositions
//! one at a time.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    targets: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum PermError {
    #[error("targets {0:?} are not a bijection on 0..{1}")]
    NotBijective(Vec<usize>, usize),
    #[error("length mismatch: {0} weights vs permutation on {1} positions")]
    LengthMismatch(usize, usize),
}

impl Permutation {
    pub fn new(targets: Vec<usize>) -> Result<Self, PermError> {
        let n = targets.len();
        let mut seen = vec![false; n];
        for &t in &targets {
            if t >= n || seen[t] {
                return Err(PermError::NotBijective(targets.clone(), n));
            }
            seen[t] = true;
        }
        Ok(Permutation { targets })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            targets: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut targets: Vec<usize> = (0..n).collect();
        targets.swap(i, j);
        Permutation { targets }
    }

    /// The k-step cyclic rotation sending position `i` to `(i + k) mod n`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Permutation {
            targets: (0..n).map(|i| (i + k) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn target(&self, i: usize) -> usize {
        self.targets[i]
    }

    /// `self.compose(other)` applies `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            targets: (0..self.len()).map(|i| self.targets[other.targets[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut targets = vec![0; self.len()];
        for (i, &t) in self.targets.iter().enumerate() {
            targets[t] = i;
        }
        Permutation { targets }
    }

    /// Applies the permutation to a slice: output position `targets[i]` holds
    /// input element `i`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len());
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.targets[i]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }
}

/// Weighted permutation sign: product over inverted pairs `(i, j)` (meaning
/// `i < j` but `i` lands after `j`) of `(-1)^{w[i]*w[j]}`. Only the parity of
/// each weight matters.
pub fn weighted_sign(weights: &[i64], perm: &Permutation) -> Result<Scalar, PermError> {
    if weights.len() != perm.len() {
        return Err(PermError::LengthMismatch(weights.len(), perm.len()));
    }
    let mut exp = 0i64;
    for i in 0..weights.len() {
        for j in (i + 1)..weights.len() {
            if perm.target(i) > perm.target(j) {
                exp += weights[i] * weights[j];
            }
        }
    }
    Ok(Scalar::sign_pow(exp))
}

/// Koszul sign for permuting homogeneous elements of the given degrees.
pub fn koszul_sign(degrees: &[i64], perm: &Permutation) -> Result<Scalar, PermError> {
    weighted_sign(degrees, perm)
}

/// Sign of the rearrangement taking the symbol sequence `src` to `dst`, where
/// both list the same distinct symbol ids and `bars[id]` gives each symbol's
/// degree. Equivalent to bubbling symbols one adjacent swap at a time.
pub fn rearrangement_sign<I: Copy + Eq + std::hash::Hash>(
    src: &[I],
    dst: &[I],
    bar: impl Fn(I) -> i64,
) -> Scalar {
    assert_eq!(src.len(), dst.len(), "rearrangement of different symbol sets");
    let pos: std::collections::HashMap<I, usize> =
        dst.iter().enumerate().map(|(p, &id)| (id, p)).collect();
    let targets: Vec<usize> = src.iter().map(|id| pos[id]).collect();
    let perm = Permutation::new(targets).expect("src/dst are not the same symbol set");
    let degrees: Vec<i64> = src.iter().map(|&id| bar(id)).collect();
    weighted_sign(&degrees, &perm).unwrap()
}
