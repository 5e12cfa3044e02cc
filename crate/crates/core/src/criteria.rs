//! Separability tests: PPT, realignment, range membership, and edge
//! certification through the range criterion.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bipartite::{partial_transpose, realign, BipartiteOperator, ProductVector};
use crate::catalog::{CatalogEntry, RangeKind};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, residual_norm, trace_norm, ComplexMatrix};
use crate::optimize::{min_generic_quadratic, OptResult, ProductQuadratic, SeeSawConfig};

/// Trace norms above `1 + REALIGNMENT_MARGIN` count as a violation.
pub const REALIGNMENT_MARGIN: f64 = 1e-9;
/// Heuristic edge verdict: the minimum must stay above this.
pub const EDGE_POSITIVE: f64 = 1e-6;
/// A restart reaching below this shows a product vector with its partner in
/// both ranges.
pub const EDGE_ZERO: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Pass,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriterionReport {
    pub criterion: String,
    pub verdict: Verdict,
    /// Minimum PT eigenvalue for PPT, trace norm for realignment.
    pub evidence: f64,
    pub tolerance: f64,
}

/// PPT test: passes iff the smallest eigenvalue of `ρ^TB` is at least `-tol`.
pub fn is_ppt(rho: &BipartiteOperator, tol: f64) -> Result<CriterionReport> {
    let min = hermitian_eig(partial_transpose(rho).matrix())?.min_eigenvalue();
    Ok(CriterionReport {
        criterion: "ppt".into(),
        verdict: if min >= -tol { Verdict::Pass } else { Verdict::Violated },
        evidence: min,
        tolerance: tol,
    })
}

/// Realignment test: violated (entanglement detected) iff `‖R(ρ)‖₁ > 1 + 1e-9`.
pub fn realignment_criterion(rho: &BipartiteOperator) -> Result<CriterionReport> {
    let tn = trace_norm(&realign(rho)?);
    Ok(CriterionReport {
        criterion: "realignment".into(),
        verdict: if tn > 1.0 + REALIGNMENT_MARGIN {
            Verdict::Violated
        } else {
            Verdict::Pass
        },
        evidence: tn,
        tolerance: REALIGNMENT_MARGIN,
    })
}

/// Range projectors of a state and of its partial transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct RangePair {
    pub dim_a: usize,
    pub dim_b: usize,
    pub range: ComplexMatrix,
    pub pt_range: ComplexMatrix,
}

impl RangePair {
    /// Projectors from the spectra of `ρ` and `ρ^TB`.
    pub fn from_state(rho: &BipartiteOperator, rel_tol: f64) -> Result<Self> {
        Ok(Self {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
            range: linalg::range_projector(rho.matrix(), rel_tol)?,
            pt_range: linalg::range_projector(partial_transpose(rho).matrix(), rel_tol)?,
        })
    }

    /// Projectors from the entry's exact range bases where stored.
    pub fn from_entry(entry: &CatalogEntry, rel_tol: f64) -> Result<Self> {
        Ok(Self {
            dim_a: entry.state.dim_a(),
            dim_b: entry.state.dim_b(),
            range: entry.range_projector(RangeKind::State, rel_tol)?,
            pt_range: entry.range_projector(RangeKind::PartialTranspose, rel_tol)?,
        })
    }

    pub fn objective(&self) -> EdgeObjective {
        let n = self.dim_a * self.dim_b;
        let id = ComplexMatrix::identity(n);
        let wrap = |m: ComplexMatrix| BipartiteOperator::new(self.dim_a, self.dim_b, m).expect("shape checked");
        EdgeObjective {
            range_complement: wrap(&id - &self.range),
            pt_range_complement: wrap(&id - &self.pt_range),
        }
    }
}

/// `‖(I - P_R) a⊗b‖² + ‖(I - P_R') a⊗b*‖²` as a [`ProductQuadratic`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeObjective {
    range_complement: BipartiteOperator,
    pt_range_complement: BipartiteOperator,
}

impl EdgeObjective {
    /// The two residual terms `(‖(I-P_R) a⊗b‖², ‖(I-P_R') a⊗b*‖²)`.
    pub fn terms(&self, a: &[Complex64], b: &[Complex64]) -> (f64, f64) {
        let bc: Vec<Complex64> = b.iter().map(Complex64::conj).collect();
        let first = self.range_complement.contract_a(a).quadratic_form(b).re;
        let second = self.pt_range_complement.contract_a(a).quadratic_form(&bc).re;
        (first.max(0.0), second.max(0.0))
    }
}

impl ProductQuadratic for EdgeObjective {
    fn dims(&self) -> (usize, usize) {
        (self.range_complement.dim_a(), self.range_complement.dim_b())
    }

    fn effective_b(&self, a: &[Complex64]) -> ComplexMatrix {
        // (a⊗b*)† M (a⊗b*) = b† conj(K) b for the Hermitian contraction K
        let k1 = self.range_complement.contract_a(a);
        let k2 = self.pt_range_complement.contract_a(a);
        &k1 + &k2.conj()
    }

    fn effective_a(&self, b: &[Complex64]) -> ComplexMatrix {
        let bc: Vec<Complex64> = b.iter().map(Complex64::conj).collect();
        &self.range_complement.contract_b(b) + &self.pt_range_complement.contract_b(&bc)
    }

    fn value(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        let (x, y) = self.terms(a, b);
        x + y
    }
}

/// Edge objective at `(a, b)` with ranges taken from the spectra of `ρ`.
pub fn edge_objective(rho: &BipartiteOperator, a: &[Complex64], b: &[Complex64], rel_tol: f64) -> Result<f64> {
    let p = ProductVector::new(a, b)?;
    Ok(RangePair::from_state(rho, rel_tol)?.objective().value(p.a(), p.b()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EdgeVerdict {
    /// Every restart stayed above [`EDGE_POSITIVE`]; multistart cannot rule
    /// out a missed zero.
    EdgeHeuristic,
    NotEdge,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeCertificate {
    pub state: String,
    pub verdict: EdgeVerdict,
    /// Heuristic minimum of the edge objective.
    pub minimum: f64,
    pub restarts: usize,
    pub converged_restarts: usize,
    /// Smallest and largest restart value.
    pub restart_min: f64,
    pub restart_max: f64,
    pub argmin: ProductVector,
    /// `‖(I - P_R) a⊗b‖` at the argmin.
    pub residual_range: f64,
    /// `‖(I - P_R') a⊗b*‖` at the argmin.
    pub residual_pt_range: f64,
}

fn ensure_ppt(rho: &BipartiteOperator, tol: f64) -> Result<()> {
    let report = is_ppt(rho, tol)?;
    if report.verdict != Verdict::Pass {
        return Err(Error::NotPpt {
            min_eigenvalue: report.evidence,
        });
    }
    Ok(())
}

/// Minimises the edge objective with the see-saw optimiser.
pub fn certify_with_ranges(
    name: &str,
    ranges: &RangePair,
    cfg: &SeeSawConfig,
) -> Result<(EdgeCertificate, OptResult<ProductVector>)> {
    let objective = ranges.objective();
    let result = min_generic_quadratic(&objective, cfg)?;
    let p = &result.argmin;
    let t = p.tensor();
    let partner = p.conjugate_partner();
    let residual_range = residual_norm(&t, &ranges.range)?;
    let residual_pt_range = residual_norm(&partner, &ranges.pt_range)?;
    let restart_min = result.restart_values.iter().copied().fold(f64::INFINITY, f64::min);
    let restart_max = result.restart_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let verdict = if restart_min > EDGE_POSITIVE {
        EdgeVerdict::EdgeHeuristic
    } else if restart_min < EDGE_ZERO {
        EdgeVerdict::NotEdge
    } else {
        EdgeVerdict::Inconclusive
    };
    let cert = EdgeCertificate {
        state: name.into(),
        verdict,
        minimum: result.best_value,
        restarts: result.restart_values.len(),
        converged_restarts: result.converged_count(),
        restart_min,
        restart_max,
        argmin: p.clone(),
        residual_range,
        residual_pt_range,
    };
    Ok((cert, result))
}

/// Edge certification of an arbitrary PPT state (numerical ranges).
pub fn certify_edge(
    name: &str,
    rho: &BipartiteOperator,
    cfg: &SeeSawConfig,
    rel_tol: f64,
    ppt_tol: f64,
) -> Result<EdgeCertificate> {
    ensure_ppt(rho, ppt_tol)?;
    let ranges = RangePair::from_state(rho, rel_tol)?;
    Ok(certify_with_ranges(name, &ranges, cfg)?.0)
}

/// Edge certification of a catalog entry, using its exact range bases.
pub fn certify_entry(entry: &CatalogEntry, cfg: &SeeSawConfig, rel_tol: f64, ppt_tol: f64) -> Result<EdgeCertificate> {
    ensure_ppt(&entry.state, ppt_tol)?;
    let ranges = RangePair::from_entry(entry, rel_tol)?;
    Ok(certify_with_ranges(&entry.name, &ranges, cfg)?.0)
}

/// Residual of `v` against the entry's range (or PT range), from the exact
/// basis when one is stored.
pub fn range_membership(v: &[Complex64], entry: &CatalogEntry, which: RangeKind, rel_tol: f64) -> Result<f64> {
    residual_norm(v, &entry.range_projector(which, rel_tol)?)
}
