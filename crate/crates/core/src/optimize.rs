//! Multistart see-saw minimisation over product vectors and over vectors of
//! bounded Schmidt rank.
//!
//! Every half-step fixes one factor and replaces the other with a minimal
//! eigenvector of the resulting effective Hermitian operator, so the
//! objective never increases within a restart. Restart `r` draws its start
//! point from a ChaCha stream seeded with `seed ^ r`, which makes the result
//! independent of the order in which restarts are evaluated.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{schmidt_coefficients, BipartiteOperator, ProductVector};
use crate::error::{Error, Result};
use crate::linalg::{self, min_eigenpair, orthonormalize_with_completion, ComplexMatrix};
use crate::HERMITIAN_TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeeSawConfig {
    pub restarts: usize,
    pub max_iter: usize,
    /// Stop once a full sweep lowers the objective by less than this.
    pub conv_tol: f64,
    pub seed: u64,
}

impl Default for SeeSawConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iter: 500,
            conv_tol: 1e-12,
            seed: 42,
        }
    }
}

impl SeeSawConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iter == 0 || self.conv_tol.is_nan() || self.conv_tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "restarts and max_iter must be >= 1 and conv_tol > 0 (got {}, {}, {})",
                self.restarts, self.max_iter, self.conv_tol
            )));
        }
        Ok(())
    }

    fn restart_rng(&self, restart: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ restart as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptResult<P> {
    pub best_value: f64,
    pub best_restart: usize,
    pub argmin: P,
    /// Final objective of every restart.
    pub restart_values: Vec<f64>,
    /// Full sweeps used by every restart.
    pub iterations_used: Vec<usize>,
    pub converged_flags: Vec<bool>,
    /// Largest increase of the objective across consecutive half-steps, per
    /// restart. Zero or rounding-level for a healthy run.
    pub max_ascent: Vec<f64>,
}

impl<P> OptResult<P> {
    pub fn converged_count(&self) -> usize {
        self.converged_flags.iter().filter(|&&c| c).count()
    }

    pub fn worst_ascent(&self) -> f64 {
        self.max_ascent.iter().copied().fold(0.0, f64::max)
    }
}

/// A real objective `f(a, b)` on unit vectors that is a Hermitian quadratic
/// form in each factor separately.
pub trait ProductQuadratic {
    fn dims(&self) -> (usize, usize);

    /// `K` with `f(a, b) = b† K b` for all unit `b`.
    fn effective_b(&self, a: &[Complex64]) -> ComplexMatrix;

    /// `K` with `f(a, b) = a† K a` for all unit `a`.
    fn effective_a(&self, b: &[Complex64]) -> ComplexMatrix;

    fn value(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        self.effective_b(a).quadratic_form(b).re
    }
}

/// `⟨ab| H |ab⟩`
#[derive(Debug, Clone, Copy)]
pub struct Expectation<'a>(pub &'a BipartiteOperator);

impl ProductQuadratic for Expectation<'_> {
    fn dims(&self) -> (usize, usize) {
        (self.0.dim_a(), self.0.dim_b())
    }

    fn effective_b(&self, a: &[Complex64]) -> ComplexMatrix {
        self.0.contract_a(a)
    }

    fn effective_a(&self, b: &[Complex64]) -> ComplexMatrix {
        self.0.contract_b(b)
    }
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(u) = linalg::normalized(&v) {
            return u;
        }
    }
}

struct Trajectory<P> {
    value: f64,
    point: P,
    iterations: usize,
    converged: bool,
    max_ascent: f64,
}

fn merge<P: Clone>(runs: Vec<Trajectory<P>>) -> OptResult<P> {
    // strict < keeps the lowest restart index among ties
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value < runs[best].value {
            best = i;
        }
    }
    OptResult {
        best_value: runs[best].value,
        best_restart: best,
        argmin: runs[best].point.clone(),
        restart_values: runs.iter().map(|r| r.value).collect(),
        iterations_used: runs.iter().map(|r| r.iterations).collect(),
        converged_flags: runs.iter().map(|r| r.converged).collect(),
        max_ascent: runs.iter().map(|r| r.max_ascent).collect(),
    }
}

/// Per-half-step objective values of one product see-saw restart, starting
/// with the value at the random initial point.
pub fn product_trajectory<Q: ProductQuadratic + ?Sized>(
    objective: &Q,
    cfg: &SeeSawConfig,
    restart: usize,
) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    run_product(objective, cfg, restart, Some(&mut values))?;
    Ok(values)
}

fn run_product<Q: ProductQuadratic + ?Sized>(
    objective: &Q,
    cfg: &SeeSawConfig,
    restart: usize,
    mut record: Option<&mut Vec<f64>>,
) -> Result<Trajectory<ProductVector>> {
    let (da, db) = objective.dims();
    let mut rng = cfg.restart_rng(restart);
    let mut a = random_unit(&mut rng, da);
    let mut b = random_unit(&mut rng, db);
    let mut value = objective.value(&a, &b);
    if let Some(rec) = record.as_deref_mut() {
        rec.push(value);
    }
    let mut max_ascent = 0.0_f64;
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..cfg.max_iter {
        iterations += 1;
        let sweep_start = value;

        let (lb, vb) = min_eigenpair(&objective.effective_b(&a))?;
        max_ascent = max_ascent.max(lb - value);
        b = vb;
        value = lb;
        if let Some(rec) = record.as_deref_mut() {
            rec.push(value);
        }

        let (la, va) = min_eigenpair(&objective.effective_a(&b))?;
        max_ascent = max_ascent.max(la - value);
        a = va;
        value = la;
        if let Some(rec) = record.as_deref_mut() {
            rec.push(value);
        }

        if sweep_start - value < cfg.conv_tol {
            converged = true;
            break;
        }
    }
    let point = ProductVector::new(&a, &b)?;
    let value = objective.value(point.a(), point.b());
    Ok(Trajectory {
        value,
        point,
        iterations,
        converged,
        max_ascent,
    })
}

/// Minimises a [`ProductQuadratic`] over unit product vectors.
pub fn min_generic_quadratic<Q: ProductQuadratic + ?Sized>(
    objective: &Q,
    cfg: &SeeSawConfig,
) -> Result<OptResult<ProductVector>> {
    cfg.validate()?;
    let runs = (0..cfg.restarts)
        .map(|r| run_product(objective, cfg, r, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(runs))
}

/// Heuristic `inf ⟨ab| H |ab⟩` over unit product vectors.
pub fn min_product_expectation(h: &BipartiteOperator, cfg: &SeeSawConfig) -> Result<OptResult<ProductVector>> {
    h.matrix().ensure_hermitian(HERMITIAN_TOL)?;
    min_generic_quadratic(&Expectation(h), cfg)
}

/// A vector `ψ = Σ_r x_r ⊗ y_r` of Schmidt rank at most `k`, stored as the
/// factor pair `X` (`dA x k`, orthonormal columns) and `Y` (`k x dB`), with
/// `ψ_{ik} = (X Y)_{ik}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LowRankPoint {
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
    /// Unit vector `ψ`, A-major.
    pub state: Vec<Complex64>,
    pub schmidt_coefficients: Vec<f64>,
}

/// Effective operator on the left factor for orthonormal rows `y_r`:
/// `K[(i,r),(j,s)] = Σ_{kl} conj(y_{rk}) H_{(i,k),(j,l)} y_{sl}`.
fn effective_left(h: &BipartiteOperator, y: &[Vec<Complex64>]) -> ComplexMatrix {
    let (da, db) = (h.dim_a(), h.dim_b());
    let rank = y.len();
    ComplexMatrix::from_fn(da * rank, da * rank, |row, col| {
        let (i, r) = (row / rank, row % rank);
        let (j, s) = (col / rank, col % rank);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..db {
            let yk = y[r][k].conj();
            if yk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (l, ysl) in y[s].iter().enumerate() {
                acc += yk * h.entry(i, k, j, l) * ysl;
            }
        }
        acc
    })
}

/// Effective operator on the right factor for orthonormal columns `x_r`:
/// `K[(r,k),(s,l)] = Σ_{ij} conj(x_{ir}) H_{(i,k),(j,l)} x_{js}`.
fn effective_right(h: &BipartiteOperator, x: &[Vec<Complex64>]) -> ComplexMatrix {
    let (da, db) = (h.dim_a(), h.dim_b());
    let rank = x.len();
    ComplexMatrix::from_fn(rank * db, rank * db, |row, col| {
        let (r, k) = (row / db, row % db);
        let (s, l) = (col / db, col % db);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..da {
            let xi = x[r][i].conj();
            if xi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, xsj) in x[s].iter().enumerate() {
                acc += xi * h.entry(i, k, j, l) * xsj;
            }
        }
        acc
    })
}

fn rayleigh(h: &BipartiteOperator, psi: &[Complex64]) -> f64 {
    let n = linalg::norm(psi);
    h.matrix().quadratic_form(psi).re / (n * n)
}

/// Per-half-step objective values of one Schmidt-rank-`rank` restart.
pub fn schmidt_trajectory(h: &BipartiteOperator, rank: usize, cfg: &SeeSawConfig, restart: usize) -> Result<Vec<f64>> {
    check_schmidt_args(h, rank)?;
    let mut values = Vec::new();
    run_schmidt(h, rank, cfg, restart, Some(&mut values))?;
    Ok(values)
}

fn run_schmidt(
    h: &BipartiteOperator,
    rank: usize,
    cfg: &SeeSawConfig,
    restart: usize,
    mut record: Option<&mut Vec<f64>>,
) -> Result<Trajectory<LowRankPoint>> {
    let (da, db) = (h.dim_a(), h.dim_b());
    let mut rng = cfg.restart_rng(restart);
    // columns of X and rows of Y, as vectors
    let mut x: Vec<Vec<Complex64>> = (0..rank).map(|_| random_unit(&mut rng, da)).collect();
    let mut y: Vec<Vec<Complex64>> = (0..rank).map(|_| random_unit(&mut rng, db)).collect();

    let compose = |x: &[Vec<Complex64>], y: &[Vec<Complex64>]| -> Vec<Complex64> {
        let mut psi = vec![Complex64::new(0.0, 0.0); da * db];
        for (xr, yr) in x.iter().zip(y) {
            for i in 0..da {
                for k in 0..db {
                    psi[i * db + k] += xr[i] * yr[k];
                }
            }
        }
        psi
    };

    let mut value = rayleigh(h, &compose(&x, &y));
    if let Some(rec) = record.as_deref_mut() {
        rec.push(value);
    }
    let mut max_ascent = 0.0_f64;
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..cfg.max_iter {
        iterations += 1;
        let sweep_start = value;

        // orthonormal rows keep ψ ↦ X an isometry; the current ψ stays feasible
        y = orthonormalize_with_completion(&y, db);
        let (lx, vx) = min_eigenpair(&effective_left(h, &y))?;
        x = (0..rank).map(|r| (0..da).map(|i| vx[i * rank + r]).collect()).collect();
        max_ascent = max_ascent.max(lx - value);
        value = lx;
        if let Some(rec) = record.as_deref_mut() {
            rec.push(value);
        }

        x = orthonormalize_with_completion(&x, da);
        let (ly, vy) = min_eigenpair(&effective_right(h, &x))?;
        y = (0..rank).map(|r| vy[r * db..(r + 1) * db].to_vec()).collect();
        max_ascent = max_ascent.max(ly - value);
        value = ly;
        if let Some(rec) = record.as_deref_mut() {
            rec.push(value);
        }

        if sweep_start - value < cfg.conv_tol {
            converged = true;
            break;
        }
    }

    let mut state = compose(&x, &y);
    let n = linalg::norm(&state);
    for z in state.iter_mut() {
        *z /= n;
    }
    linalg::fix_phase_largest(&mut state);
    let schmidt = schmidt_coefficients(&state, da, db)?;
    let value = rayleigh(h, &state);
    let left = ComplexMatrix::from_columns(&x)?;
    let right = ComplexMatrix::from_fn(rank, db, |r, k| y[r][k]);
    Ok(Trajectory {
        value,
        point: LowRankPoint {
            left,
            right,
            state,
            schmidt_coefficients: schmidt,
        },
        iterations,
        converged,
        max_ascent,
    })
}

fn check_schmidt_args(h: &BipartiteOperator, rank: usize) -> Result<()> {
    h.matrix().ensure_hermitian(HERMITIAN_TOL)?;
    if rank == 0 || rank > h.dim_a().min(h.dim_b()) {
        return Err(Error::InvalidArgument(format!(
            "Schmidt rank {rank} outside 1..={}",
            h.dim_a().min(h.dim_b())
        )));
    }
    Ok(())
}

/// Heuristic minimum of `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` over vectors of Schmidt rank at
/// most `rank`.
pub fn min_schmidt_rank_expectation(
    h: &BipartiteOperator,
    rank: usize,
    cfg: &SeeSawConfig,
) -> Result<OptResult<LowRankPoint>> {
    check_schmidt_args(h, rank)?;
    cfg.validate()?;
    let runs = (0..cfg.restarts)
        .map(|r| run_schmidt(h, rank, cfg, r, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(runs))
}

/// [`min_schmidt_rank_expectation`] with rank two.
pub fn min_schmidt2_expectation(h: &BipartiteOperator, cfg: &SeeSawConfig) -> Result<OptResult<LowRankPoint>> {
    min_schmidt_rank_expectation(h, 2, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::tensor_vectors;

    fn quick() -> SeeSawConfig {
        SeeSawConfig {
            restarts: 20,
            max_iter: 200,
            ..SeeSawConfig::default()
        }
    }

    fn swap3() -> BipartiteOperator {
        let m = ComplexMatrix::from_fn(9, 9, |r, c| {
            let (i, k) = (r / 3, r % 3);
            let (j, l) = (c / 3, c % 3);
            if i == l && k == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        BipartiteOperator::new(3, 3, m).unwrap()
    }

    fn phi_plus() -> BipartiteOperator {
        let mut psi = vec![Complex64::new(0.0, 0.0); 9];
        for i in 0..3 {
            psi[4 * i] = Complex64::new(1.0, 0.0);
        }
        BipartiteOperator::pure(3, 3, &psi).unwrap()
    }

    #[test]
    fn identity_minimum_is_one() {
        let r = min_product_expectation(&BipartiteOperator::identity(3, 3), &quick()).unwrap();
        assert!((r.best_value - 1.0).abs() < 1e-12);
        let s = min_schmidt2_expectation(&BipartiteOperator::identity(3, 3), &quick()).unwrap();
        assert!((s.best_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_product_states_exist() {
        let r = min_product_expectation(&phi_plus(), &quick()).unwrap();
        assert!(r.best_value.abs() < 1e-9);
        // SWAP has eigenvalue -1 only on antisymmetric vectors, but its product minimum is 0
        let s = min_product_expectation(&swap3(), &quick()).unwrap();
        assert!(s.best_value.abs() < 1e-9, "{}", s.best_value);
    }

    #[test]
    fn schmidt2_reaches_feasible_eigenvector() {
        // -|ψ⟩⟨ψ| with ψ of Schmidt rank 2: the unconstrained minimum is feasible
        let mut psi = vec![Complex64::new(0.0, 0.0); 9];
        psi[1] = Complex64::new(1.0, 0.0);
        psi[3] = Complex64::new(-1.0, 0.0);
        let h = BipartiteOperator::pure(3, 3, &psi).unwrap().map_matrix(|m| m.scale_real(-1.0));
        let r = min_schmidt2_expectation(&h, &quick()).unwrap();
        assert!((r.best_value + 1.0).abs() < 1e-9);
        let s = &r.argmin.schmidt_coefficients;
        assert!(s[2] < 1e-8 * s[0]);
    }

    #[test]
    fn results_are_deterministic_and_consistent() {
        let h = swap3();
        let a = min_product_expectation(&h, &quick()).unwrap();
        let b = min_product_expectation(&h, &quick()).unwrap();
        assert_eq!(a, b);
        let best = a.restart_values.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(a.best_value, best);
        let t = tensor_vectors(a.argmin.a(), a.argmin.b());
        assert!((h.matrix().quadratic_form(&t).re - a.best_value).abs() < 1e-10);
        assert!((linalg::norm(a.argmin.a()) - 1.0).abs() < 1e-12);
        assert!((linalg::norm(a.argmin.b()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let m = ComplexMatrix::from_fn(4, 4, |r, c| Complex64::new((r * 4 + c) as f64, 0.0));
        let h = BipartiteOperator::new(2, 2, m).unwrap();
        assert!(matches!(min_product_expectation(&h, &quick()), Err(Error::NotHermitian { .. })));
        let bad = SeeSawConfig { restarts: 0, ..quick() };
        assert!(min_product_expectation(&BipartiteOperator::identity(2, 2), &bad).is_err());
        assert!(min_schmidt_rank_expectation(&BipartiteOperator::identity(2, 2), 3, &quick()).is_err());
    }
}
