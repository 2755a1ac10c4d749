//! Independent oracles used by the integration tests. Nothing here calls
//! into the elimination or Smith-form code paths of the library.
#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => BigInt::from(m[0][0]),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                BigInt::from(sign * m[0][j]) * det(&minor)
            })
            .sum(),
    }
}

/// Invariant factors as `D_k / D_{k-1}`, where `D_k` is the gcd of all
/// `k x k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
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

/// Rank over Q by plain Gaussian elimination on big rationals.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for k in c..cols {
                let d = &f * &a[rank][k];
                a[r][k] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// All nonzero integer vectors `c` with entries in `-bound..=bound`,
/// first nonzero entry positive and gcd 1, such that `sum c_t v_t = 0`.
pub fn brute_force_relations(vs: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let dim = vs.first().map_or(0, Vec::len);
    (0..vs.len())
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .filter(|c| {
            let first = c.iter().find(|&&x| x != 0);
            first.is_some_and(|&x| x > 0)
                && c.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
                && (0..dim).all(|k| c.iter().zip(vs).map(|(ct, v)| ct * v[k]).sum::<i64>() == 0)
        })
        .collect()
}

/// `(i, j)` pairs with `i < j <= h(i)` by direct double loop.
pub fn support_pairs(h: &[usize]) -> Vec<(usize, usize)> {
    let n = h.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if j <= h[i - 1] {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}
