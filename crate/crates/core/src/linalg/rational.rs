//! Exact rational matrices and fraction-free rank.

use alloc::vec::Vec;
use core::ops::Index;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows * cols).map(|_| BigRational::zero()).collect(),
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            values.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.data
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Entries as `i64` if all are integers that fit.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.data
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let data = self
            .data
            .iter()
            .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data).expect("same shape")
    }

    /// Applies an index permutation: output entry `(r, c)` is input entry
    /// `source(r, c)`.
    pub(crate) fn permuted(&self, source: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (sr, sc) = source(r, c);
                data.push(self[(sr, sc)].clone());
            }
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

/// Rank over the rationals.
///
/// Each row is cleared of denominators, then the integer matrix is reduced
/// with Bareiss fraction-free elimination. Every division in the update is
/// exact, so no rational arithmetic (and no rounding) happens at any step.
pub fn exact_rank(m: &RationalMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let lcm = (0..cols).fold(BigInt::one(), |acc, c| acc.lcm(m[(r, c)].denom()));
            (0..cols)
                .map(|c| {
                    let x = &m[(r, c)];
                    x.numer() * (&lcm / x.denom())
                })
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in (rank + 1)..rows {
            for j in (c + 1)..cols {
                let num = &a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[r][j] = num / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
