//! Dense matrices over a [`Scalar`] with fraction-free rank.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{DivScalar, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix rows",
                expected: cols,
                found: r.len(),
            });
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: S) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].clone() + v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix<S> {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<S> {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn rendered(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::render).collect()).collect()
    }
}

impl<S: DivScalar> Matrix<S> {
    /// Rank by fraction-free (Bareiss) elimination; pivots are the first
    /// nonzero entry of each column, and columns without a pivot are skipped.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        let mut prev = S::one();
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(p) = (rank..r).find(|&i| !a[i * c + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..c {
                    a.swap(p * c + j, rank * c + j);
                }
            }
            let pivot = a[rank * c + col].clone();
            for i in rank + 1..r {
                let factor = a[i * c + col].clone();
                for j in col + 1..c {
                    let v = a[i * c + j].clone() * pivot.clone() - factor.clone() * a[rank * c + j].clone();
                    a[i * c + j] = v / prev.clone();
                }
                a[i * c + col] = S::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }
}

impl<S: Scalar> Serialize for Matrix<S> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.rendered().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(Matrix::<BigInt>::identity(5).rank(), 5);
        assert_eq!(Matrix::<BigInt>::zeros(3, 4).rank(), 0);
        assert_eq!(int(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(int(&[&[0, 1, 1], &[0, 1, 1], &[1, 0, 1]]).rank(), 2);
        assert_eq!(int(&[&[0, 0, 1], &[0, 0, 2]]).rank(), 1);
        assert_eq!(Matrix::<BigInt>::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = int(&[&[1, 2], &[3, 4]]);
        let b = int(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), int(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&int(&[&[1, 2, 3]])).is_err());
    }
}
