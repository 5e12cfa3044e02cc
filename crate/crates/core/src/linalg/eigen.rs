//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use super::matrix::{fix_phase_largest, ComplexMatrix};
use crate::error::Result;
use crate::{math, HERMITIAN_TOL};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `M = V diag(λ) V†`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    /// `Σ λ_i v_i v_i†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|k| self.eigenvectors[(r, k)] * self.eigenvectors[(c, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector has its first
/// component of largest modulus real and nonnegative; eigenvalues that agree
/// to `1e-12` relative are ordered lexicographically by eigenvector entries.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.ensure_hermitian(HERMITIAN_TOL)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if math::sqrt(off) <= f64::EPSILON * 1e-2 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut col = v.column(k);
            fix_phase_largest(&mut col);
            (a[(k, k)].re, col)
        })
        .collect();

    let scale = pairs.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // lexicographic tie-break inside clusters of (numerically) equal eigenvalues
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end].0 - pairs[end - 1].0 <= 1e-12 * scale {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|x, y| lex_cmp(&x.1, &y.1));
        }
        start = end;
    }

    let eigenvalues = pairs.iter().map(|(l, _)| *l).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| pairs[c].1[r]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue and its eigenvector, with the same phase and
/// tie-break rules as [`hermitian_eig`].
pub fn min_eigenpair(m: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let eig = hermitian_eig(m)?;
    Ok((eig.eigenvalues[0], eig.eigenvector(0)))
}

fn lex_cmp(x: &[Complex64], y: &[Complex64]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        let ord = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase that makes the (p,q) element real and positive
    let phase = apq.conj() / mag; // e^{-iφ}
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + math::hypot(1.0, tau))
    } else {
        -1.0 / (-tau + math::hypot(1.0, tau))
    };
    let c = 1.0 / math::hypot(1.0, t);
    let s = t * c;
    let n = a.rows();

    // A <- A J, with J = D G: col p = c a_p - s e^{-iφ} a_q, col q = s a_p + c e^{-iφ} a_q
    for r in 0..n {
        let ap = a[(r, p)];
        let aq = a[(r, q)] * phase;
        a[(r, p)] = ap * c - aq * s;
        a[(r, q)] = ap * s + aq * c;
    }
    // A <- J† A
    let phase_c = phase.conj();
    for col in 0..n {
        let ap = a[(p, col)];
        let aq = a[(q, col)] * phase_c;
        a[(p, col)] = ap * c - aq * s;
        a[(q, col)] = ap * s + aq * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for r in 0..n {
        let vp = v[(r, p)];
        let vq = v[(r, q)] * phase;
        v[(r, p)] = vp * c - vq * s;
        v[(r, q)] = vp * s + vq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use alloc::vec;

    fn residual_ok(m: &ComplexMatrix, eig: &HermitianEigen) {
        let scale = m.frobenius_norm().max(1e-300);
        for i in 0..m.rows() {
            let v = eig.eigenvector(i);
            let mv = m.mul_vec(&v);
            let r: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * eig.eigenvalues[i]).norm_sqr())
                .sum();
            assert!(math::sqrt(r) <= 1e-10 * scale, "residual {r:e} for pair {i}");
        }
        assert!(eig.reconstruct().max_abs_diff(m) <= 1e-10 * scale);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eig = hermitian_eig(&ComplexMatrix::identity(9)).unwrap();
        assert!(eig.eigenvalues.iter().all(|&l| l == 1.0));
    }

    #[test]
    fn diagonal_sorted_ascending() {
        let eig = hermitian_eig(&ComplexMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert_eq!(eig.eigenvector(0)[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
        residual_ok(&m, &eig);
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&r), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn degenerate_cluster_is_deterministic() {
        let m = ComplexMatrix::diagonal(&[1.0, 1.0, 1.0, 0.5]);
        let a = hermitian_eig(&m).unwrap();
        let b = hermitian_eig(&m).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.eigenvalues[0], 0.5);
    }
}
