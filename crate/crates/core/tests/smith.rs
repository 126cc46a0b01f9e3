//! Smith normal form against determinantal divisors, plus certificate checks.

use gradlab::linalg::{abelian_invariants, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    // Laplace expansion along the first row; sizes here are tiny
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// d_k = gcd of all k×k minors; the invariant factors are d_k / d_{k−1}.
fn oracle(m: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), r),
        )
    })
}

proptest! {
    #[test]
    fn diagonal_matches_minors((cols, rows) in matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        let diag: Vec<BigInt> = (0..rows.len().min(cols))
            .map(|i| s.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect();
        prop_assert_eq!(diag, oracle(&rows, cols));
    }

    #[test]
    fn invariants_describe_the_cokernel((cols, rows) in matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let inv = abelian_invariants(&m);
        let nonzero = oracle(&rows, cols);
        prop_assert_eq!(inv.free_rank, cols - nonzero.len());
        let torsion: Vec<BigInt> = nonzero.into_iter().filter(|x| !x.is_one()).collect();
        prop_assert_eq!(inv.torsion, torsion);
    }
}

#[test]
fn overflow_escalates_to_bigint() {
    let big = i64::MAX / 3;
    let rows = vec![vec![big, big - 1], vec![big - 2, big + 1]];
    let m = IntMatrix::from_rows(2, &rows);
    let s = smith_normal_form(&m);
    assert!(s.verify(&m));
    let d = det(&rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect::<Vec<_>>());
    assert_eq!((s.d.get(0, 0) * s.d.get(1, 1)).abs(), d.abs());
    assert!(s.d.get(0, 0).is_positive());
}
