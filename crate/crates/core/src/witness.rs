//! Entanglement witnesses for edge states.
//!
//! * Kernel witness: `W_δ = N (P + Q^TB)` with `P`, `Q` the kernel projectors
//!   of `δ` and `δ^TB` and `N = 1/Tr(P + Q^TB)`, shifted down by its
//!   product-state infimum `ε`.
//! * Realignment witness: `I - R(U V†)` from the SVD `R(ρ) = U D V†`, made
//!   Hermitian.
//!
//! `ε` comes from the multistart see-saw, so it is an upper bound on the
//! true infimum; the witness property is therefore heuristic.

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;

use crate::bipartite::{partial_transpose, realign, realign_matrix, BipartiteOperator};
use crate::error::{Error, Result};
use crate::linalg::{kernel_projector, numeric_rank, svd, ComplexMatrix};
use crate::optimize::{min_product_expectation, min_schmidt2_expectation, LowRankPoint, OptResult, SeeSawConfig};

/// Default `eps_shift` for shifted witnesses.
pub const DEFAULT_SHIFT: f64 = 1e-6;

/// Largest imaginary part tolerated in `Tr(W† ρ)`.
pub const EVAL_IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WitnessMethod {
    Kernel,
    Realign,
    Shifted,
}

impl WitnessMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMethod::Kernel => "kernel",
            WitnessMethod::Realign => "realign",
            WitnessMethod::Shifted => "shifted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub operator: BipartiteOperator,
    pub method: WitnessMethod,
    /// For `Shifted`, the method of the witness that was shifted.
    pub base_method: Option<WitnessMethod>,
    /// Product-state infimum removed from the kernel witness.
    pub epsilon: Option<f64>,
    /// `N` of the kernel construction.
    pub normalization: Option<f64>,
    /// `eps_shift` of a shifted witness.
    pub shift: Option<f64>,
    pub source: String,
}

/// Pieces of the kernel construction before the `ε` shift.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParts {
    /// `N (P + Q^TB)`
    pub w_delta: BipartiteOperator,
    pub normalization: f64,
    pub kernel_dim: usize,
    pub pt_kernel_dim: usize,
}

pub fn kernel_parts(delta: &BipartiteOperator, rel_tol: f64) -> Result<KernelParts> {
    let n = delta.dim();
    let pt = partial_transpose(delta);
    let kernel_dim = n - numeric_rank(delta.matrix(), rel_tol)?;
    let pt_kernel_dim = n - numeric_rank(pt.matrix(), rel_tol)?;
    if kernel_dim == 0 {
        return Err(Error::NoKernel { which: "state" });
    }
    if pt_kernel_dim == 0 {
        return Err(Error::NoKernel {
            which: "partial transpose",
        });
    }
    let p = kernel_projector(delta.matrix(), rel_tol)?;
    let q = BipartiteOperator::new(delta.dim_a(), delta.dim_b(), kernel_projector(pt.matrix(), rel_tol)?)?;
    let sum = &p + partial_transpose(&q).matrix();
    let normalization = 1.0 / sum.trace().re;
    let w_delta = BipartiteOperator::new(delta.dim_a(), delta.dim_b(), sum.scale_real(normalization))?;
    Ok(KernelParts {
        w_delta,
        normalization,
        kernel_dim,
        pt_kernel_dim,
    })
}

/// `W₁ = W_δ - ε I` with `ε` the heuristic product-state minimum of `W_δ`.
pub fn kernel_witness(
    name: &str,
    delta: &BipartiteOperator,
    rel_tol: f64,
    cfg: &SeeSawConfig,
) -> Result<(Witness, OptResult<crate::ProductVector>)> {
    let parts = kernel_parts(delta, rel_tol)?;
    let opt = min_product_expectation(&parts.w_delta, cfg)?;
    let epsilon = opt.best_value;
    let id = ComplexMatrix::identity(delta.dim());
    let operator = parts.w_delta.map_matrix(|m| m - &id.scale_real(epsilon));
    Ok((
        Witness {
            operator,
            method: WitnessMethod::Kernel,
            base_method: None,
            epsilon: Some(epsilon),
            normalization: Some(parts.normalization),
            shift: None,
            source: name.into(),
        },
        opt,
    ))
}

/// `I - R(U V†)` for `R(ρ) = U D V†`, before Hermitisation. Its trace
/// pairing with `ρ` is `1 - ‖R(ρ)‖₁`.
pub fn realignment_witness_raw(rho: &BipartiteOperator) -> Result<(ComplexMatrix, f64)> {
    let r = realign(rho)?;
    let dec = svd(&r);
    let tn = dec.trace_norm();
    if tn <= 1.0 {
        return Err(Error::NotApplicable(format!(
            "realignment witness needs ‖R(ρ)‖₁ > 1, got {tn}"
        )));
    }
    let uv = &dec.u * &dec.v.adjoint();
    let raw = &ComplexMatrix::identity(rho.dim()) - &realign_matrix(&uv, rho.dim_a())?;
    Ok((raw, tn))
}

/// Hermitian part of [`realignment_witness_raw`].
pub fn realignment_witness(name: &str, rho: &BipartiteOperator) -> Result<Witness> {
    let (raw, _) = realignment_witness_raw(rho)?;
    Ok(Witness {
        operator: BipartiteOperator::new(rho.dim_a(), rho.dim_b(), raw.hermitian_part())?,
        method: WitnessMethod::Realign,
        base_method: None,
        epsilon: None,
        normalization: None,
        shift: None,
        source: name.into(),
    })
}

/// `W - (Tr(Wρ) + eps_shift) I`, so that `Tr(W̃ρ) = -eps_shift`.
pub fn shift_witness(w: &Witness, rho: &BipartiteOperator, eps_shift: f64) -> Result<Witness> {
    if eps_shift.is_nan() || eps_shift <= 0.0 {
        return Err(Error::InvalidArgument(format!("eps_shift must be > 0, got {eps_shift}")));
    }
    let offset = evaluate(w, rho)? + eps_shift;
    let id = ComplexMatrix::identity(rho.dim());
    Ok(Witness {
        operator: w.operator.map_matrix(|m| m - &id.scale_real(offset)),
        method: WitnessMethod::Shifted,
        base_method: Some(w.base_method.unwrap_or(w.method)),
        epsilon: w.epsilon,
        normalization: w.normalization,
        shift: Some(eps_shift),
        source: w.source.clone(),
    })
}

/// `Tr(W† ρ)` as a complex number.
pub fn trace_pairing(w: &BipartiteOperator, rho: &BipartiteOperator) -> Result<Complex64> {
    w.hs_inner(rho)
}

/// Real part of `Tr(W† ρ)`; fails if the imaginary part exceeds `1e-12`.
pub fn evaluate(w: &Witness, rho: &BipartiteOperator) -> Result<f64> {
    evaluate_operator(&w.operator, rho)
}

pub fn evaluate_operator(w: &BipartiteOperator, rho: &BipartiteOperator) -> Result<f64> {
    let z = trace_pairing(w, rho)?;
    if z.im.abs() > EVAL_IMAG_TOL {
        return Err(Error::ComplexTrace { imag: z.im });
    }
    Ok(z.re)
}

/// Searches for a Schmidt-rank-two state on which `W` is negative.
pub fn schmidt2_evidence(w: &Witness, cfg: &SeeSawConfig) -> Result<OptResult<LowRankPoint>> {
    min_schmidt2_expectation(&w.operator, cfg)
}
