//! Exact integer matrices.
//!
//! Everything here is carried out over arbitrary-precision integers or
//! rationals. Nothing in the crate touches floating point when deciding
//! ranks, kernels or invariant factors.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A dense integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, bottom) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = &pivot_row[col];
            for row in bottom.iter_mut() {
                let lead = row[col].clone();
                for j in col + 1..self.cols {
                    // Sylvester's identity makes this division exact.
                    let num = &row[j] * pivot - &lead * &pivot_row[j];
                    row[j] = num / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = pivot.clone();
            rank += 1;
        }
        rank
    }

    /// A basis of the rational right kernel `{x : A x = 0}`, each vector
    /// scaled to a primitive integer vector whose first nonzero entry is
    /// positive.
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let rref = self.rational_rref();
        let pivots: Vec<usize> = rref
            .iter()
            .filter_map(|row| row.iter().position(|x| !x.is_zero()))
            .collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }

    fn rational_rref(&self) -> Vec<Vec<BigRational>> {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut r = 0;
        for col in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][col].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..self.cols {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        a
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<BigInt>> {
        let cols = self.cols;
        let mut data = self.data.into_iter();
        (0..self.rows)
            .map(|_| data.by_ref().take(cols).collect())
            .collect()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    ints
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        // pivot column skipped in the middle
        let m = IntMatrix::from_rows(&[[0, 1, 2], [0, 2, 4], [0, 0, 5]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_of_triangle_relation() {
        // columns e1-e2, e2-e3, e1-e3
        let m = IntMatrix::from_columns(3, &[[1, -1, 0], [0, 1, -1], [1, 0, -1]]);
        let k = m.integer_kernel();
        assert_eq!(k.len(), 1);
        let k: Vec<i64> = k[0].iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(k, vec![1, 1, -1]);
    }

    #[test]
    fn kernel_is_primitive_with_fractions() {
        let m = IntMatrix::from_rows(&[[2, 3]]);
        let k = m.integer_kernel();
        let k: Vec<i64> = k[0].iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(k, vec![3, -2]);
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = a.transpose();
        assert_eq!(a.mul(&b), IntMatrix::from_rows(&[[5, 11], [11, 25]]));
    }
}
