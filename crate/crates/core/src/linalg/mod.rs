//! Dense complex linear algebra for matrices up to roughly 100x100, plus
//! exact rank over the rationals.

mod eigen;
mod matrix;
mod rational;
mod svd;

use alloc::vec::Vec;

use num_complex::Complex64;

pub use eigen::{hermitian_eig, min_eigenpair, HermitianEigen};
pub use matrix::{
    fix_phase_first, fix_phase_largest, inner, norm, normalized, orthonormalize_with_completion,
    ComplexMatrix,
};
pub use rational::{exact_rank, RationalMatrix};
pub use svd::{svd, trace_norm, SvdResult};

use crate::error::{Error, Result};

/// Eigenvalues above `rel_tol * λ_max`, after checking positivity.
fn psd_spectrum(m: &ComplexMatrix, rel_tol: f64) -> Result<(HermitianEigen, f64)> {
    let eig = hermitian_eig(m)?;
    let max = eig.max_eigenvalue().max(0.0);
    let threshold = rel_tol * max;
    let min = eig.min_eigenvalue();
    if min < -threshold {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok((eig, threshold))
}

/// Number of eigenvalues strictly above `rel_tol` times the largest one.
pub fn numeric_rank(m: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    let (eig, threshold) = psd_spectrum(m, rel_tol)?;
    Ok(eig.eigenvalues.iter().filter(|&&l| l > threshold).count())
}

/// Orthogonal projector onto the numerical range of a PSD matrix.
pub fn range_projector(m: &ComplexMatrix, rel_tol: f64) -> Result<ComplexMatrix> {
    let (eig, threshold) = psd_spectrum(m, rel_tol)?;
    let columns: Vec<Vec<Complex64>> = (0..m.rows())
        .filter(|&k| eig.eigenvalues[k] > threshold)
        .map(|k| eig.eigenvector(k))
        .collect();
    Ok(projector_onto_orthonormal(&columns, m.rows()))
}

/// `I - range_projector(m)`.
pub fn kernel_projector(m: &ComplexMatrix, rel_tol: f64) -> Result<ComplexMatrix> {
    let p = range_projector(m, rel_tol)?;
    Ok(&ComplexMatrix::identity(m.rows()) - &p)
}

/// Projector onto the span of arbitrary (possibly dependent) vectors.
pub fn span_projector(vectors: &[Vec<Complex64>], dim: usize) -> Result<ComplexMatrix> {
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.len(),
            });
        }
    }
    let gram = ComplexMatrix::from_columns(vectors)?;
    let gram = &gram * &gram.adjoint();
    if vectors.is_empty() {
        return Ok(ComplexMatrix::zeros(dim, dim));
    }
    range_projector(&gram, 1e-12)
}

fn projector_onto_orthonormal(columns: &[Vec<Complex64>], dim: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(dim, dim);
    for q in columns {
        for r in 0..dim {
            for c in 0..dim {
                p[(r, c)] += q[r] * q[c].conj();
            }
        }
    }
    p
}

/// `‖(I - P) v‖ / ‖v‖`, the relative distance of `v` from the range of the
/// projector `P`.
pub fn residual_norm(v: &[Complex64], projector: &ComplexMatrix) -> Result<f64> {
    if v.len() != projector.rows() {
        return Err(Error::DimensionMismatch {
            expected: projector.rows(),
            actual: v.len(),
        });
    }
    let n = norm(v);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    let pv = projector.mul_vec(v);
    let r: Vec<Complex64> = v.iter().zip(&pv).map(|(a, b)| a - b).collect();
    Ok((norm(&r) / n).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identity_projectors() {
        let i = ComplexMatrix::identity(9);
        assert_eq!(numeric_rank(&i.scale_real(1.0 / 9.0), 1e-9).unwrap(), 9);
        assert!(range_projector(&i, 1e-9).unwrap().max_abs_diff(&i) < 1e-15);
        assert!(kernel_projector(&i, 1e-9).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn rank_one_projector() {
        let v = normalized(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0)]).unwrap();
        let p = ComplexMatrix::outer(&v, &v);
        let r = range_projector(&p, 1e-9).unwrap();
        assert!(r.max_abs_diff(&p) < 1e-14);
    }

    #[test]
    fn not_psd_is_rejected() {
        let m = ComplexMatrix::diagonal(&[1.0, -0.5]);
        assert!(matches!(numeric_rank(&m, 1e-9), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn residuals() {
        let p = ComplexMatrix::diagonal(&[1.0, 1.0, 0.0]);
        let inside = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(0.0, 0.0)];
        let outside = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 3.0)];
        assert!(residual_norm(&inside, &p).unwrap() < 1e-15);
        assert!((residual_norm(&outside, &p).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(residual_norm(&[Complex64::new(0.0, 0.0); 3], &p), Err(Error::ZeroVector));
    }

    #[test]
    fn span_of_dependent_vectors() {
        let a = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = vec![Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0)];
        let p = span_projector(&[a, b], 2).unwrap();
        assert!((p.trace().re - 1.0).abs() < 1e-14);
    }
}
