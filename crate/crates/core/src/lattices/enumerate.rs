//! Short-vector enumeration in positive definite lattices (Fincke–Pohst with
//! exact rational bounds).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntegerLattice, LatticeError};
use crate::arith::{isqrt, Matrix, Rational};

/// Coefficients `Q` with `x·x = Σᵢ Q_ii (xᵢ + Σ_{j>i} Q_ij xⱼ)²`.
fn quadratic_completion(g: &Matrix<Rational>) -> Matrix<Rational> {
    let n = g.rows();
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = q.get(i, j) / q.get(i, i);
            q.set(j, i, v);
        }
        for k in i + 1..n {
            for l in k..n {
                let v = q.get(k, l) - q.get(k, i) * q.get(i, l);
                q.set(k, l, v);
            }
        }
        for j in i + 1..n {
            let v = q.get(j, i).clone();
            q.set(i, j, v);
        }
    }
    q
}

fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Counts nonzero vectors by norm, for all norms `≤ bound`.
pub fn vector_counts(l: &IntegerLattice, bound: &BigInt) -> Result<BTreeMap<BigInt, u64>, LatticeError> {
    if !l.is_positive_definite() {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let n = l.rank();
    let mut counts = BTreeMap::new();
    if n == 0 || !bound.is_positive() {
        return Ok(counts);
    }
    let q = quadratic_completion(&l.gram().to_rational());
    let mut x = vec![BigInt::zero(); n];
    descend(&q, n, &Rational::from_integer(bound.clone()), &mut x, l, &mut counts);
    // the zero vector is visited once
    if let Some(c) = counts.get_mut(&BigInt::zero()) {
        *c -= 1;
        if *c == 0 {
            counts.remove(&BigInt::zero());
        }
    }
    Ok(counts)
}

fn descend(
    q: &Matrix<Rational>,
    level: usize,
    budget: &Rational,
    x: &mut Vec<BigInt>,
    l: &IntegerLattice,
    counts: &mut BTreeMap<BigInt, u64>,
) {
    if level == 0 {
        let norm = l.inner(x, x);
        *counts.entry(norm).or_insert(0) += 1;
        return;
    }
    let i = level - 1;
    let n = q.rows();
    let mut center = Rational::zero();
    for j in i + 1..n {
        center -= q.get(i, j) * Rational::from_integer(x[j].clone());
    }
    let qii = q.get(i, i);
    let t = budget / qii;
    // every admissible xᵢ satisfies |xᵢ − center| ≤ √t < isqrt(⌊t⌋) + 1
    let mut xi: BigInt = floor(&center) - isqrt(&floor(&t)) - 1;
    loop {
        let d = Rational::from_integer(xi.clone()) - &center;
        let used = qii * &d * &d;
        if used <= *budget {
            x[i] = xi.clone();
            descend(q, i, &(budget - &used), x, l, counts);
        } else if d.is_positive() {
            break;
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lattices::parse_lattice_expr;

    fn counts(expr: &str, b: i64) -> Vec<(i64, u64)> {
        let l = parse_lattice_expr(expr).unwrap();
        vector_counts(&l, &int(b)).unwrap().into_iter().map(|(k, v)| (i64::try_from(k).unwrap(), v)).collect()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(counts("A1", 8), vec![(2, 2), (8, 2)]);
        assert_eq!(counts("A2", 6), vec![(2, 6), (6, 6)]);
        assert_eq!(counts("A1+A1", 4), vec![(2, 4), (4, 4)]);
    }

    #[test]
    fn e_series() {
        assert_eq!(counts("E6", 6), vec![(2, 72), (4, 270), (6, 720)]);
        assert_eq!(counts("E8", 4), vec![(2, 240), (4, 2160)]);
        assert_eq!(counts("D4", 2), vec![(2, 24)]);
    }

    #[test]
    fn rejects_indefinite() {
        let u = parse_lattice_expr("U").unwrap();
        assert_eq!(vector_counts(&u, &int(2)), Err(LatticeError::NotPositiveDefinite));
    }
}
