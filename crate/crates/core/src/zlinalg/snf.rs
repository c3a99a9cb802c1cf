//! Smith normal form over the integers.
//!
//! Pivoting is deterministic: the pivot is the nonzero entry of least
//! absolute value in the active block, ties going to the lowest
//! row-major index. Every elementary operation is mirrored into the
//! transform matrices and their inverses, so `U * M * V = D` holds exactly
//! and the inverses never need a separate solve.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{floor_div, IntMatrix};
use crate::Execution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Left transform, `rows x rows`, unimodular.
    pub u: IntMatrix,
    /// Diagonal form with `d_i | d_{i+1}`, nonnegative entries.
    pub d: IntMatrix,
    /// Right transform, `cols x cols`, unimodular.
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `D` (including units).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks `U M V = D`, unimodularity, diagonal shape and the
    /// divisibility chain. Intended for tests and self-verification.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let product = self.u.mul(m).and_then(|um| um.mul(&self.v));
        let identity_u = self.u.mul(&self.u_inv).ok() == Some(IntMatrix::identity(m.rows()));
        let identity_v = self.v.mul(&self.v_inv).ok() == Some(IntMatrix::identity(m.cols()));
        product.ok().as_ref() == Some(&self.d)
            && identity_u
            && identity_v
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.d.is_diagonal()
            && divisibility_chain(&self.d.diagonal())
    }
}

/// `d_0 | d_1 | ...` with zeros only at the tail, all entries nonnegative.
pub fn divisibility_chain(diag: &[BigInt]) -> bool {
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        }
    })
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_abs_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let a = self.d.get(i, j).abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero entry in column `t` (rows >= t) or row `t`
    /// (cols >= t).
    fn min_abs_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.d.get(t, t).abs());
        let mut consider = |i: usize, j: usize, a: BigInt| {
            if !a.is_zero() && (best.2.is_zero() || a < best.2) {
                best = (i, j, a);
            }
        };
        for i in t..self.d.rows() {
            consider(i, t, self.d.get(i, t).abs());
        }
        for j in t..self.d.cols() {
            consider(t, j, self.d.get(t, j).abs());
        }
        (best.0, best.1)
    }

    fn place_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Reduce column and row `t` against the pivot. Returns true when some
    /// remainder survived and a smaller pivot must be chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut dirty = false;
        let pivot = self.d.get(t, t).clone();
        for i in t + 1..self.d.rows() {
            if self.d.get(i, t).is_zero() {
                continue;
            }
            let (q, exact) = floor_div(self.d.get(i, t), &pivot);
            self.add_row(i, t, &-q);
            dirty |= !exact;
        }
        for j in t + 1..self.d.cols() {
            if self.d.get(t, j).is_zero() {
                continue;
            }
            let (q, exact) = floor_div(self.d.get(t, j), &pivot);
            self.add_col(j, t, &-q);
            dirty |= !exact;
        }
        dirty
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let pivot = self.d.get(t, t);
        (t + 1..self.d.rows())
            .find(|&i| (t + 1..self.d.cols()).any(|j| !(self.d.get(i, j) % pivot).is_zero()))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        let Some(p) = w.min_abs_in_block(t) else {
            break;
        };
        w.place_pivot(t, p);
        loop {
            if w.clear_cross(t) {
                let p = w.min_abs_in_cross(t);
                w.place_pivot(t, p);
                continue;
            }
            match w.first_non_multiple(t) {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    SmithDecomposition {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Smith normal form of many matrices.
pub fn smith_normal_form_batch(ms: &[IntMatrix], exec: Execution) -> Vec<SmithDecomposition> {
    exec.map(ms, smith_normal_form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows, rows.first().map_or(0, |r| r.len())).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert!(s.verify(&id));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.d.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn cat_relations() {
        let a = m(&[vec![0, 0, 0], vec![-1, -1, 0], vec![-1, 0, 0]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.d.diagonal(), big(&[1, 1, 0]));
    }

    #[test]
    fn empty_and_zero_matrices() {
        let e = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&e);
        assert_eq!(s.u.rows(), 0);
        assert_eq!(s.v, IntMatrix::identity(3));
        assert!(s.verify(&e));

        let z = IntMatrix::zeros(2, 4);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank(), 0);
        assert!(s.verify(&z));
    }

    #[test]
    fn rectangular_needs_divisibility_fix() {
        // 2 and 3 are coprime, so the chain forces (1, 6).
        let a = m(&[vec![2, 0, 0], vec![0, 3, 0]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.invariant_factors(), big(&[1, 6]));

        let b = m(&[vec![4, 6], vec![6, 4], vec![0, 10]]);
        let s = smith_normal_form(&b);
        assert!(s.verify(&b));
        assert_eq!(s.invariant_factors(), big(&[2, 10]));
    }

    #[test]
    fn deterministic() {
        let a = m(&[vec![6, -4, 9], vec![3, 3, -7], vec![12, 0, 5]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn chain_predicate() {
        assert!(divisibility_chain(&big(&[1, 2, 6, 0, 0])));
        assert!(!divisibility_chain(&big(&[2, 3])));
        assert!(!divisibility_chain(&big(&[0, 2])));
        assert!(!divisibility_chain(&big(&[-1, 2])));
    }
}
