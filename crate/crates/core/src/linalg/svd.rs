//! One-sided (Hestenes) Jacobi SVD.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{inner, norm, orthonormalize_with_completion, ComplexMatrix};
use crate::math;

const MAX_SWEEPS: usize = 100;

/// `M = U diag(σ) V†` with `U`, `V` having orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Descending, nonnegative.
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    pub fn trace_norm(&self) -> f64 {
        self.singular_values.iter().sum()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        ComplexMatrix::from_fn(self.u.rows(), self.v.rows(), |r, c| {
            (0..k)
                .map(|j| self.u[(r, j)] * self.v[(c, j)].conj() * self.singular_values[j])
                .sum()
        })
    }
}

/// Thin SVD: for an `m x n` matrix the factors are `m x k` and `n x k` with
/// `k = min(m, n)`.
pub fn svd(m: &ComplexMatrix) -> SvdResult {
    if m.rows() < m.cols() {
        let t = svd_tall(&m.adjoint());
        return SvdResult {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    svd_tall(m)
}

pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    svd(m).trace_norm()
}

fn svd_tall(m: &ComplexMatrix) -> SvdResult {
    let rows = m.rows();
    let n = m.cols();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| m.column(c)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|c| {
            let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
            e[c] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = cols[q].iter().map(Complex64::norm_sqr).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * math::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::hypot(1.0, tau))
                } else {
                    -1.0 / (-tau + math::hypot(1.0, tau))
                };
                let c = 1.0 / math::hypot(1.0, t);
                let s = t * c;
                rotate_pair(&mut cols, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = cols.iter().enumerate().map(|(j, c)| (norm(c), j)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let singular_values: Vec<f64> = order.iter().map(|&(s, _)| s).collect();
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut zero_from = n;
    for (k, &(s, j)) in order.iter().enumerate() {
        if s <= f64::MIN_POSITIVE {
            zero_from = k;
            break;
        }
        u_cols.push(cols[j].iter().map(|z| z / s).collect());
    }
    if zero_from < n {
        // complete U with an orthonormal set for the null singular values
        let mut seed = u_cols.clone();
        seed.extend((zero_from..n).map(|_| alloc::vec![Complex64::new(0.0, 0.0); rows]));
        u_cols = orthonormalize_with_completion(&seed, rows);
    }
    let u = ComplexMatrix::from_columns(&u_cols).expect("columns share length");
    let v_sorted: Vec<Vec<Complex64>> = order.iter().map(|&(_, j)| v[j].clone()).collect();
    let v = ComplexMatrix::from_columns(&v_sorted).expect("columns share length");
    SvdResult {
        u,
        singular_values,
        v,
    }
}

fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y * phase;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}
