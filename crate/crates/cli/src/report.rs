//! JSON report types.

use edgestate_core::criteria::{CriterionReport, EdgeCertificate};
use edgestate_core::optimize::{LowRankPoint, OptResult, SeeSawConfig};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub eig: f64,
    pub pos: f64,
    pub shift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Ranks {
    pub numeric: usize,
    pub pt_numeric: usize,
    /// From the exact integer numerators, for catalog states that have them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pt_exact: Option<usize>,
}

/// A pipeline stage that either ran or was skipped for a stated reason.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Stage<T> {
    Done { result: T },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Schmidt2Summary {
    pub best_value: f64,
    pub best_restart: usize,
    pub schmidt_coefficients: Vec<f64>,
    pub restarts: usize,
    pub converged_restarts: usize,
}

impl From<&OptResult<LowRankPoint>> for Schmidt2Summary {
    fn from(r: &OptResult<LowRankPoint>) -> Self {
        Schmidt2Summary {
            best_value: r.best_value,
            best_restart: r.best_restart,
            schmidt_coefficients: r.argmin.schmidt_coefficients.clone(),
            restarts: r.restart_values.len(),
            converged_restarts: r.converged_count(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub normalization: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
    /// `Tr(W ρ)`
    pub evaluation: f64,
    pub schmidt2: Schmidt2Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub method: &'static str,
    pub shifted: bool,
    #[serde(flatten)]
    pub outcome: Stage<WitnessValues>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub state: String,
    pub dims: [usize; 2],
    pub seed: u64,
    pub optimizer: SeeSawConfig,
    pub tolerances: Tolerances,
    pub ranks: Ranks,
    pub ppt: CriterionReport,
    pub realignment: CriterionReport,
    pub edge: Stage<EdgeCertificate>,
    pub witnesses: Stage<Vec<WitnessSummary>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Schmidt2Report {
    pub tool: ToolInfo,
    pub source: String,
    pub dims: [usize; 2],
    pub optimizer: SeeSawConfig,
    pub best_value: f64,
    pub schmidt_coefficients: Vec<f64>,
    pub result: OptResult<LowRankPoint>,
}
