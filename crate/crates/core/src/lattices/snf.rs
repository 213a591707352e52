//! Smith normal form over ℤ with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Matrix;

/// Result of [`smith_normal_form`]: `left · m · right = diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Matrix<BigInt>,
    pub left: Matrix<BigInt>,
    pub right: Matrix<BigInt>,
}

impl SmithForm {
    /// Diagonal entries d_1 | d_2 | … (length min(rows, cols)), all ≥ 0.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

fn row_axpy(a: &mut Matrix<BigInt>, dst: usize, src: usize, q: &BigInt) {
    // row[dst] -= q * row[src]
    for c in 0..a.cols() {
        let v = a.get(src, c) * q;
        if !v.is_zero() {
            *a.get_mut(dst, c) -= v;
        }
    }
}

fn col_axpy(a: &mut Matrix<BigInt>, dst: usize, src: usize, q: &BigInt) {
    for r in 0..a.rows() {
        let v = a.get(r, src) * q;
        if !v.is_zero() {
            *a.get_mut(r, dst) -= v;
        }
    }
}

/// Computes `(D, U, V)` with `U·M·V = D`, `U` and `V` unimodular and `D`
/// diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = Matrix::<BigInt>::identity(rows);
    let mut right = Matrix::<BigInt>::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, left, right);
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut left, i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut right, j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            for c in 0..cols {
                let v = -a.get(t, c).clone();
                a.set(t, c, v);
            }
            for c in 0..rows {
                let v = -left.get(t, c).clone();
                left.set(t, c, v);
            }
        }
    }
    finish(a, left, right)
}

fn finish(diagonal: Matrix<BigInt>, left: Matrix<BigInt>, right: Matrix<BigInt>) -> SmithForm {
    SmithForm { diagonal, left, right }
}
