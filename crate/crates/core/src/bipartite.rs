//! Operators and vectors on `C^dA ⊗ C^dB`.
//!
//! Composite indices are A-major: `(i, k) ↦ i * dB + k`, with `i` the
//! party-A index and `k` the party-B index (zero-based).

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, fix_phase_first, hermitian_eig, ComplexMatrix, RationalMatrix};
use crate::HERMITIAN_TOL;

/// A square matrix acting on `C^dA ⊗ C^dB`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BipartiteOperator {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl BipartiteOperator {
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Result<Self> {
        let n = dim_a * dim_b;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: if matrix.rows() != n { matrix.rows() } else { matrix.cols() },
            });
        }
        Ok(Self { dim_a, dim_b, matrix })
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        Self {
            dim_a,
            dim_b,
            matrix: ComplexMatrix::identity(dim_a * dim_b),
        }
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`
    pub fn pure(dim_a: usize, dim_b: usize, psi: &[Complex64]) -> Result<Self> {
        if psi.len() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                actual: psi.len(),
            });
        }
        let psi = linalg::normalized(psi)?;
        Self::new(dim_a, dim_b, ComplexMatrix::outer(&psi, &psi))
    }

    /// `A ⊗ B`
    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::UnsupportedShape(format!(
                "factors must be square, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Self::new(a.rows(), b.rows(), a.kron(b))
    }

    #[inline]
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    #[inline]
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Entry `⟨i k| X |j l⟩`.
    #[inline]
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> Complex64 {
        self.matrix[(i * self.dim_b + k, j * self.dim_b + l)]
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn is_hermitian(&self) -> bool {
        self.matrix.is_hermitian(HERMITIAN_TOL)
    }

    pub fn map_matrix(&self, f: impl FnOnce(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: f(&self.matrix),
        }
    }

    /// Checks the density-matrix role: Hermitian, unit trace, eigenvalues
    /// above `-psd_tol`.
    pub fn validate_density(&self, psd_tol: f64) -> Result<()> {
        if !self.is_hermitian() {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {:e})",
                self.matrix.hermitian_deviation()
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidState(format!("trace {} != 1", tr.re)));
        }
        let min = hermitian_eig(&self.matrix)?.min_eigenvalue();
        if min < -psd_tol {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(())
    }

    /// `Tr(self† other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self.matrix.hs_inner(&other.matrix))
    }

    pub(crate) fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.dim_a, self.dim_b) != (other.dim_a, other.dim_b) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }

    /// Effective party-B operator for a fixed party-A vector:
    /// `K_{kl} = Σ_{ij} conj(a_i) X_{(i,k),(j,l)} a_j`.
    pub fn contract_a(&self, a: &[Complex64]) -> ComplexMatrix {
        assert_eq!(a.len(), self.dim_a);
        let db = self.dim_b;
        let mut out = ComplexMatrix::zeros(db, db);
        for (i, ai) in a.iter().enumerate() {
            let ai = ai.conj();
            for (j, aj) in a.iter().enumerate() {
                let w = ai * aj;
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(k, l)] += w * self.entry(i, k, j, l);
                    }
                }
            }
        }
        out
    }

    /// Effective party-A operator for a fixed party-B vector:
    /// `K_{ij} = Σ_{kl} conj(b_k) X_{(i,k),(j,l)} b_l`.
    pub fn contract_b(&self, b: &[Complex64]) -> ComplexMatrix {
        assert_eq!(b.len(), self.dim_b);
        let da = self.dim_a;
        let mut out = ComplexMatrix::zeros(da, da);
        for (k, bk) in b.iter().enumerate() {
            let bk = bk.conj();
            for (l, bl) in b.iter().enumerate() {
                let w = bk * bl;
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..da {
                    for j in 0..da {
                        out[(i, j)] += w * self.entry(i, k, j, l);
                    }
                }
            }
        }
        out
    }
}

/// Source index of output entry `(r, c)` under the partial transpose on B.
#[inline]
fn pt_source(r: usize, c: usize, db: usize) -> (usize, usize) {
    let (i, k) = (r / db, r % db);
    let (j, l) = (c / db, c % db);
    (i * db + l, j * db + k)
}

/// Source index of output entry `(r, c)` under realignment (`d = dA = dB`):
/// output row `(i, j)`, column `(k, l)` reads input `((i, k), (j, l))`.
#[inline]
fn realign_source(r: usize, c: usize, d: usize) -> (usize, usize) {
    let (i, j) = (r / d, r % d);
    let (k, l) = (c / d, c % d);
    (i * d + k, j * d + l)
}

/// Transpose on the second factor: `((i,k),(j,l)) ← ((i,l),(j,k))`.
/// A pure index permutation, so it is an exact involution.
pub fn partial_transpose(rho: &BipartiteOperator) -> BipartiteOperator {
    let db = rho.dim_b;
    let n = rho.dim();
    let m = &rho.matrix;
    BipartiteOperator {
        dim_a: rho.dim_a,
        dim_b: db,
        matrix: ComplexMatrix::from_fn(n, n, |r, c| {
            let (sr, sc) = pt_source(r, c, db);
            m[(sr, sc)]
        }),
    }
}

/// Partial transpose of an exact matrix on `C^dA ⊗ C^dB`.
pub fn partial_transpose_exact(m: &RationalMatrix, dim_a: usize, dim_b: usize) -> Result<RationalMatrix> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.rows(),
        });
    }
    Ok(m.permuted(|r, c| pt_source(r, c, dim_b)))
}

/// Realignment `R(X)`: row `(i,j)`, column `(k,l)` holds `X_{(i,k),(j,l)}`.
pub fn realign(rho: &BipartiteOperator) -> Result<ComplexMatrix> {
    if rho.dim_a != rho.dim_b {
        return Err(Error::UnsupportedShape(format!(
            "realignment needs dA = dB, got {} and {}",
            rho.dim_a, rho.dim_b
        )));
    }
    realign_matrix(&rho.matrix, rho.dim_a)
}

/// Realignment of a raw `d² x d²` matrix. The map is its own inverse.
pub fn realign_matrix(m: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    let n = d * d;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.rows(),
        });
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (sr, sc) = realign_source(r, c, d);
        m[(sr, sc)]
    }))
}

/// A product vector `a ⊗ b` with unit, phase-normalised factors.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProductVector {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

/// Components below this fraction of the largest one are treated as zero
/// when choosing the phase reference.
const PHASE_REL_TOL: f64 = 1e-12;

impl ProductVector {
    /// Normalises both factors and makes the first nonzero component of each
    /// real and nonnegative.
    pub fn new(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        let mut a = linalg::normalized(a)?;
        let mut b = linalg::normalized(b)?;
        fix_phase_first(&mut a, PHASE_REL_TOL);
        fix_phase_first(&mut b, PHASE_REL_TOL);
        Ok(Self { a, b })
    }

    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let to_c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
        Self::new(&to_c(a), &to_c(b))
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// `a ⊗ b`, component `(i, k)` equal to `a_i b_k`.
    pub fn tensor(&self) -> Vec<Complex64> {
        tensor_vectors(&self.a, &self.b)
    }

    /// `a ⊗ b*`
    pub fn conjugate_partner(&self) -> Vec<Complex64> {
        let b_conj: Vec<Complex64> = self.b.iter().map(Complex64::conj).collect();
        tensor_vectors(&self.a, &b_conj)
    }
}

pub fn tensor_vectors(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|ai| b.iter().map(move |bk| ai * bk)).collect()
}

/// Schmidt coefficients of `v ∈ C^dA ⊗ C^dB`, descending. Their squares sum
/// to `‖v‖²`.
pub fn schmidt_coefficients(v: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Vec<f64>> {
    if v.len() != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            actual: v.len(),
        });
    }
    if linalg::norm(v) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let coeffs = ComplexMatrix::from_vec(dim_a, dim_b, v.to_vec())?;
    Ok(linalg::svd(&coeffs).singular_values)
}
