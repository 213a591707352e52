//! Library results against independent brute-force computations.

use dmk3::arith::{int, Matrix};
use dmk3::covers::{cw_multiplicities, genus_riemann_hurwitz, random_branch_data};
use dmk3::lattices::{disc_forms_opposite, forms_isometric, smith_normal_form, vector_counts, IntegerLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Counts of nonzero vectors by norm, by scanning a coordinate box.
fn naive_counts(g: &[Vec<i64>], bound: i64, box_radius: i64) -> std::collections::BTreeMap<i64, u64> {
    let n = g.len();
    let mut out = std::collections::BTreeMap::new();
    let mut x = vec![-box_radius; n];
    loop {
        if x.iter().any(|&v| v != 0) {
            let q: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
            if q <= bound {
                *out.entry(q).or_insert(0) += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < box_radius {
                x[i] += 1;
                break;
            }
            x[i] = -box_radius;
            i += 1;
        }
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det_i64(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1)
        .into_iter()
        .map(|mut s| {
            s.push(n - 1);
            s
        })
        .collect();
    with.extend(subsets(n - 1, k));
    with
}

/// d_k = gcd of k×k minors; invariant factors are d_k / d_{k−1}.
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    let mut ds = vec![1i64];
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det_i64(&sub));
            }
        }
        ds.push(g);
    }
    (1..ds.len()).map(|k| if ds[k - 1] == 0 { 0 } else { ds[k] / ds[k - 1] }).collect()
}

fn gram_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|n| {
        (prop::collection::vec(1i64..=3, n), prop::collection::vec(-1i64..=1, n * n)).prop_map(move |(d, off)| {
            let mut g = vec![vec![0; n]; n];
            for i in 0..n {
                g[i][i] = 2 * d[i];
                for j in 0..i {
                    g[i][j] = off[i * n + j];
                    g[j][i] = off[i * n + j];
                }
            }
            g
        })
    })
}

fn lattice(g: &[Vec<i64>]) -> Option<IntegerLattice> {
    let refs: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    IntegerLattice::from_i64_rows(&refs).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn short_vectors_match_box_scan(g in gram_strategy()) {
        let Some(l) = lattice(&g) else { return Ok(()) };
        prop_assume!(l.is_positive_definite());
        // cofactors are at most 36 and det ≥ 1, so norm ≤ 8 forces |xᵢ| ≤ 17
        let fast = vector_counts(&l, &int(8)).unwrap();
        let slow = naive_counts(&g, 8, 17);
        let fast: Vec<(i64, u64)> = fast.into_iter().map(|(k, v)| (i64::try_from(k).unwrap(), v)).collect();
        let slow: Vec<(i64, u64)> = slow.into_iter().collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-6i64..=6, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        let snf = smith_normal_form(&Matrix::from_i64_rows(&refs));
        let got: Vec<BigInt> = snf.invariant_factors();
        let want: Vec<BigInt> = invariant_factors_by_minors(&m).into_iter().map(|v| int(v.abs())).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn discriminant_group_has_order_det(g in gram_strategy()) {
        let Some(l) = lattice(&g) else { return Ok(()) };
        let order: BigInt = l.discriminant_group().iter().product();
        prop_assert_eq!(order, l.det().abs());
    }

    #[test]
    fn negation_gives_opposite_forms(g in gram_strategy()) {
        let Some(l) = lattice(&g) else { return Ok(()) };
        prop_assume!(l.det().abs() <= int(12));
        let q = l.discriminant_form().unwrap();
        let qm = l.rescale_i64(-1).unwrap().discriminant_form().unwrap();
        prop_assert!(disc_forms_opposite(&q, &qm).unwrap());
        prop_assert!(forms_isometric(&q, &q).unwrap());
    }

    #[test]
    fn chevalley_weil_agrees_with_riemann_hurwitz(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let b = random_branch_data(&mut rng);
        let cw = cw_multiplicities(&b);
        prop_assert!(cw.is_consistent());
        prop_assert_eq!(cw.genus, genus_riemann_hurwitz(&b));
        prop_assert!(cw.multiplicities[0].is_zero());
    }
}

#[test]
fn minor_oracle_sanity() {
    assert_eq!(invariant_factors_by_minors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(invariant_factors_by_minors(&[vec![1, 2, 3]]), vec![1]);
    assert_eq!(naive_counts(&[vec![2, -1], vec![-1, 2]], 2, 3)[&2], 6);
    assert!(int(5).is_positive());
}
