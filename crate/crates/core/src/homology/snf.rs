//! Smith normal form over the integers.
//!
//! The reduction pivots on an entry of least absolute value. Boundary
//! matrices are almost always ±1-heavy, so the search stops at the first
//! unit it sees. The work is first attempted in checked `i64` arithmetic and
//! redone with big integers if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of `m`, all positive; `r` is
/// the rank. Empty for a zero matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    if let Some(rows) = m.to_i64_rows() {
        if let Some(d) = reduce(rows, m.cols()) {
            return d.into_iter().map(BigInt::from).collect();
        }
    }
    reduce(m.clone().into_rows(), m.cols()).expect("big-integer reduction cannot overflow")
}

/// Rank of `m` read off its Smith form.
pub fn snf_rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).len()
}

trait Entry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn divides(&self, other: &Self) -> bool;
    fn floor_div(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn abs(&self) -> Option<Self>;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && (*self == -1 || other % self == 0)
    }
    fn floor_div(&self, d: &Self) -> Option<Self> {
        if *self == i64::MIN && *d == -1 {
            return None;
        }
        Some(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(other % self))
    }
    fn floor_div(&self, d: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
}

/// Position of a least-magnitude nonzero entry in the trailing submatrix
/// starting at `(t, t)`.
fn find_pivot<T: Entry>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            if x.is_unit() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| x.abs_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols<T>(a: &mut [Vec<T>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut() {
            row.swap(j, k);
        }
    }
}

fn reduce<T: Entry>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t, cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            // clear column t below the pivot
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].floor_div(&a[t][t])?;
                let (top, bottom) = a.split_at_mut(i);
                let pivot_row = &top[t];
                let row = &mut bottom[0];
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j])?;
                    }
                }
            }
            let mut leftover: Option<usize> = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && leftover.is_none_or(|r| a[i][t].abs_lt(&a[r][t])) {
                    leftover = Some(i);
                }
            }
            if let Some(i) = leftover {
                a.swap(t, i);
                continue;
            }
            // clear row t; column t is zero below the pivot, so column
            // operations only touch row t
            let mut leftover_col = None;
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].floor_div(&a[t][t])?;
                let r = a[t][j].sub_mul(&q, &a[t][t])?;
                a[t][j] = r;
                if !a[t][j].is_zero()
                    && leftover_col.is_none_or(|k: usize| a[t][j].abs_lt(&a[t][k]))
                {
                    leftover_col = Some(j);
                }
            }
            if let Some(j) = leftover_col {
                swap_cols(&mut a, t, j);
                continue;
            }
            // the pivot must divide the whole trailing block
            if !a[t][t].is_unit() {
                let p = a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(&a[i][j])));
                if let Some(i) = bad {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                    continue;
                }
            }
            break;
        }
        factors.push(a[t][t].abs()?);
        t += 1;
    }
    Some(factors)
}
