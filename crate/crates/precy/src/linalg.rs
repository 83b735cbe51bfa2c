//! Sparse exact linear algebra over the rationals: rank and kernel bases by
//! Gaussian elimination. Matrices stay small enough here that a sparse
//! row-major layout with exact arithmetic is entirely adequate.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Sparse matrix over `Scalar`, row-major.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let row = &mut self.entries[r];
        let cur = row.entry(c).or_insert_with(Scalar::zero);
        *cur += v;
        if cur.is_zero() {
            row.remove(&c);
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries[r].remove(&c);
        } else {
            self.entries[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries[r].iter().map(|(&c, v)| (c, v))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                t.set(c, r, v.clone());
            }
        }
        t
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Row echelon form as a list of (pivot column, row) pairs, rows reduced
    /// so that each pivot column is nonzero only in its own row.
    fn echelon(&self) -> Vec<(usize, BTreeMap<usize, Scalar>)> {
        let mut pivots: Vec<(usize, BTreeMap<usize, Scalar>)> = Vec::new();
        for r in 0..self.rows {
            let mut row = self.entries[r].clone();
            for (pc, prow) in &pivots {
                if let Some(coef) = row.get(pc).cloned() {
                    // row -= coef * prow  (prow is normalized to pivot 1)
                    for (c, v) in prow {
                        let delta = &coef * v;
                        let cur = row.entry(*c).or_insert_with(Scalar::zero);
                        *cur -= delta;
                        if cur.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
            if let Some((&pc, _)) = row.iter().next() {
                let inv = row[&pc].recip();
                let normalized: BTreeMap<usize, Scalar> =
                    row.iter().map(|(&c, v)| (c, v * &inv)).collect();
                pivots.push((pc, normalized));
            }
        }
        pivots
    }

    /// A basis of the right kernel: vectors `v` with `M v = 0`, one per free
    /// column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut pivots = self.echelon();
        // back-substitute to fully reduced form
        pivots.sort_by_key(|(pc, _)| *pc);
        let reduced = {
            let mut rows = pivots.clone();
            for i in (0..rows.len()).rev() {
                for j in 0..i {
                    let pc = rows[i].0;
                    if let Some(coef) = rows[j].1.get(&pc).cloned() {
                        let sub: Vec<(usize, Scalar)> =
                            rows[i].1.iter().map(|(&c, v)| (c, &coef * v)).collect();
                        for (c, delta) in sub {
                            let cur = rows[j].1.entry(c).or_insert_with(Scalar::zero);
                            *cur -= delta;
                            if cur.is_zero() {
                                rows[j].1.remove(&c);
                            }
                        }
                    }
                }
            }
            rows
        };
        let pivot_cols: Vec<usize> = reduced.iter().map(|(pc, _)| *pc).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pc, row) in &reduced {
                if let Some(coef) = row.get(&free) {
                    v[*pc] = -coef.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Rank of the matrix extended by the given extra rows; used to test
    /// whether vectors are independent modulo the row space.
    pub fn rank_with_rows(&self, extra: &[Vec<Scalar>]) -> usize {
        let mut m = SparseMatrix::new(self.rows + extra.len(), self.cols);
        m.entries[..self.rows].clone_from_slice(&self.entries);
        for (i, v) in extra.iter().enumerate() {
            assert_eq!(v.len(), self.cols);
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    m.set(self.rows + i, c, x.clone());
                }
            }
        }
        m.rank()
    }

    /// One solution of `M x = rhs`, if any.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        // eliminate on the augmented system
        let mut rows: Vec<(BTreeMap<usize, Scalar>, Scalar)> = (0..self.rows)
            .map(|r| (self.entries[r].clone(), rhs[r].clone()))
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row index)
        let mut reduced: Vec<(BTreeMap<usize, Scalar>, Scalar)> = Vec::new();
        for (row, b) in rows.drain(..) {
            let mut row = row;
            let mut b = b;
            for (pc, idx) in &pivots {
                if let Some(coef) = row.get(pc).cloned() {
                    let (prow, pb) = &reduced[*idx];
                    for (c, v) in prow {
                        let delta = &coef * v;
                        let cur = row.entry(*c).or_insert_with(Scalar::zero);
                        *cur -= delta;
                        if cur.is_zero() {
                            row.remove(c);
                        }
                    }
                    b -= coef * pb.clone();
                }
            }
            if let Some((&pc, _)) = row.iter().next() {
                let inv = row[&pc].recip();
                let nrow: BTreeMap<usize, Scalar> = row.iter().map(|(&c, v)| (c, v * &inv)).collect();
                let nb = b * inv;
                pivots.push((pc, reduced.len()));
                reduced.push((nrow, nb));
            } else if !b.is_zero() {
                return None;
            }
        }
        // back-substitute greedily: set free vars to zero
        let mut x = vec![Scalar::zero(); self.cols];
        for (pc, idx) in pivots.iter().rev() {
            let (row, b) = &reduced[*idx];
            let mut val = b.clone();
            for (c, v) in row {
                if c != pc {
                    val -= v * &x[*c];
                }
            }
            x[*pc] = val;
        }
        // verify (free-variable choice may interact with pivot order)
        let check = self.mul_vec(&x);
        if check.iter().zip(rhs).all(|(a, b)| a == b) {
            Some(x)
        } else {
            None
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, x) in self.row(r) {
                    acc += x * &v[c];
                }
                acc
            })
            .collect()
    }
}
