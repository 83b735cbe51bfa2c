//! Linear combinations with exact coefficients, keyed by an ordered term type.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lc<K: Ord + Clone> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Default for Lc<K> {
    fn default() -> Self {
        Lc { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lc<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Scalar) -> Self {
        let mut lc = Self::zero();
        lc.add(key, coeff);
        lc
    }

    pub fn add(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let cur = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *cur += coeff;
        if cur.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_lc(&mut self, other: &Lc<K>) {
        for (k, v) in other.iter() {
            self.add(k.clone(), v.clone());
        }
    }

    pub fn sub_lc(&mut self, other: &Lc<K>) {
        for (k, v) in other.iter() {
            self.add(k.clone(), -v.clone());
        }
    }

    pub fn scale(&mut self, s: &Scalar) {
        if s.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= s.clone();
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Lc<K> {
        let mut out = self.clone();
        out.scale(s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, Scalar)> {
        self.terms.into_iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Lc<K2> {
        let mut out = Lc::zero();
        for (k, v) in self.iter() {
            out.add(f(k), v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Lc<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut lc = Lc::zero();
        for (k, v) in iter {
            lc.add(k, v);
        }
        lc
    }
}
