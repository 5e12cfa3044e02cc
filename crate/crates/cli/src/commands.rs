use std::fmt::Write as _;
use std::path::Path;

use edgestate_core::bipartite::partial_transpose;
use edgestate_core::catalog::{self, CatalogEntry};
use edgestate_core::criteria::{certify_edge as certify_state, certify_entry, is_ppt, realignment_criterion, EdgeCertificate, Verdict};
use edgestate_core::linalg::{exact_rank, hermitian_eig};
use edgestate_core::optimize::min_schmidt2_expectation;
use edgestate_core::witness::{
    evaluate, kernel_witness, realignment_witness, schmidt2_evidence, shift_witness, Witness, DEFAULT_SHIFT,
};
use edgestate_core::{BipartiteOperator, ComplexMatrix, Error, HERMITIAN_TOL};

use crate::report::{
    AnalysisReport, Ranks, Schmidt2Report, Schmidt2Summary, Stage, ToolInfo, Tolerances, WitnessSummary,
    WitnessValues,
};
use crate::{CliError, GlobalArgs, MatrixFile, Metadata, MethodArg};

/// A validated density matrix from the catalog or from a file.
pub struct Loaded {
    pub name: String,
    pub state: BipartiteOperator,
    pub entry: Option<CatalogEntry>,
}

/// Resolves a catalog name, falling back to a matrix file path.
pub fn load(input: &str, g: &GlobalArgs) -> Result<Loaded, CliError> {
    let loaded = if let Ok(entry) = catalog::lookup(input) {
        Loaded {
            name: entry.name.clone(),
            state: entry.state.clone(),
            entry: Some(entry),
        }
    } else {
        let path = Path::new(input);
        if !path.is_file() {
            return Err(CliError::Parse(format!(
                "'{input}' is neither a catalog state ({}) nor a readable file",
                catalog::NAMES.join(", ")
            )));
        }
        let file = MatrixFile::read(path)?;
        Loaded {
            name: file.name().unwrap_or(input).to_string(),
            state: file.to_operator()?,
            entry: None,
        }
    };
    loaded.state.validate_density(g.tol_pos)?;
    Ok(loaded)
}

pub fn catalog() -> String {
    let mut out = String::new();
    for entry in catalog::all_entries() {
        let _ = writeln!(out, "{:<18}{}", entry.name, entry.rank_label());
    }
    out
}

pub fn export(name: &str) -> Result<MatrixFile, CliError> {
    let entry = catalog::lookup(name)?;
    let meta = Metadata {
        name: Some(entry.name.clone()),
        ..Metadata::default()
    };
    Ok(MatrixFile::from_operator(&entry.state, Some(meta)))
}

/// Counts eigenvalues with `|λ| > tol · max |λ|`; works for indefinite matrices.
fn spectral_rank(m: &ComplexMatrix, tol: f64) -> Result<usize, CliError> {
    let eig = hermitian_eig(m)?;
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    Ok(eig.eigenvalues.iter().filter(|x| x.abs() > tol * scale).count())
}

fn build_witness(loaded: &Loaded, method: MethodArg, g: &GlobalArgs) -> Result<Witness, CliError> {
    let cfg = g.config()?;
    Ok(match method {
        MethodArg::Kernel => kernel_witness(&loaded.name, &loaded.state, g.tol_eig, &cfg)?.0,
        MethodArg::Realign => realignment_witness(&loaded.name, &loaded.state)?,
    })
}

fn method_name(method: MethodArg) -> &'static str {
    match method {
        MethodArg::Kernel => "kernel",
        MethodArg::Realign => "realign",
    }
}

fn summarize(w: &Witness, rho: &BipartiteOperator, g: &GlobalArgs) -> Result<WitnessValues, CliError> {
    let evidence = schmidt2_evidence(w, &g.config()?)?;
    Ok(WitnessValues {
        epsilon: w.epsilon,
        normalization: w.normalization,
        shift: w.shift,
        evaluation: evaluate(w, rho)?,
        schmidt2: Schmidt2Summary::from(&evidence),
    })
}

fn witness_stage(loaded: &Loaded, g: &GlobalArgs, shift: f64) -> Result<Vec<WitnessSummary>, CliError> {
    let mut out = Vec::new();
    for method in [MethodArg::Kernel, MethodArg::Realign] {
        let name = method_name(method);
        match build_witness(loaded, method, g) {
            Ok(w) => {
                let shifted = shift_witness(&w, &loaded.state, shift)?;
                out.push(WitnessSummary {
                    method: name,
                    shifted: false,
                    outcome: Stage::Done {
                        result: summarize(&w, &loaded.state, g)?,
                    },
                });
                out.push(WitnessSummary {
                    method: name,
                    shifted: true,
                    outcome: Stage::Done {
                        result: summarize(&shifted, &loaded.state, g)?,
                    },
                });
            }
            Err(CliError::Inapplicable(reason)) => out.push(WitnessSummary {
                method: name,
                shifted: false,
                outcome: Stage::Skipped { reason },
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn certify(loaded: &Loaded, g: &GlobalArgs) -> Result<EdgeCertificate, CliError> {
    let cfg = g.config()?;
    Ok(match &loaded.entry {
        Some(entry) => certify_entry(entry, &cfg, g.tol_eig, g.tol_pos)?,
        None => certify_state(&loaded.name, &loaded.state, &cfg, g.tol_eig, g.tol_pos)?,
    })
}

pub fn analyze(input: &str, g: &GlobalArgs) -> Result<AnalysisReport, CliError> {
    let cfg = g.config()?;
    let shift = g.shift.unwrap_or(DEFAULT_SHIFT);
    if shift.is_nan() || shift <= 0.0 {
        return Err(CliError::Parse(format!("--shift must be > 0, got {shift}")));
    }
    let loaded = load(input, g)?;
    let rho = &loaded.state;
    let exact = loaded.entry.as_ref().and_then(|e| e.exact.as_ref());
    let ranks = Ranks {
        numeric: spectral_rank(rho.matrix(), g.tol_eig)?,
        pt_numeric: spectral_rank(partial_transpose(rho).matrix(), g.tol_eig)?,
        exact: exact.map(|x| exact_rank(&x.numerators)),
        pt_exact: exact.map(|x| exact_rank(&x.pt_numerators)),
    };
    let ppt = is_ppt(rho, g.tol_pos)?;
    let realignment = realignment_criterion(rho).map_err(|e| match e {
        Error::UnsupportedShape(m) => CliError::Inapplicable(m),
        other => other.into(),
    })?;
    let (edge, witnesses) = if ppt.verdict == Verdict::Pass {
        (
            Stage::Done {
                result: certify(&loaded, g)?,
            },
            Stage::Done {
                result: witness_stage(&loaded, g, shift)?,
            },
        )
    } else {
        let reason = format!(
            "state is not PPT (min eigenvalue of the partial transpose {:e})",
            ppt.evidence
        );
        (
            Stage::Skipped { reason: reason.clone() },
            Stage::Skipped { reason },
        )
    };
    Ok(AnalysisReport {
        tool: ToolInfo::current(),
        state: loaded.name,
        dims: [rho.dim_a(), rho.dim_b()],
        seed: cfg.seed,
        optimizer: cfg,
        tolerances: Tolerances {
            eig: g.tol_eig,
            pos: g.tol_pos,
            shift,
        },
        ranks,
        ppt,
        realignment,
        edge,
        witnesses,
    })
}

pub fn certify_edge(input: &str, g: &GlobalArgs) -> Result<EdgeCertificate, CliError> {
    certify(&load(input, g)?, g)
}

/// Builds the witness file and a short text summary including `Tr(W ρ)`.
pub fn witness(input: &str, method: MethodArg, g: &GlobalArgs) -> Result<(MatrixFile, String), CliError> {
    let loaded = load(input, g)?;
    let mut w = build_witness(&loaded, method, g)?;
    if let Some(eps) = g.shift {
        w = shift_witness(&w, &loaded.state, eps)?;
    }
    let value = evaluate(&w, &loaded.state)?;
    let mut summary = format!("witness {} for {}\n", w.method.as_str(), loaded.name);
    if let Some(n) = w.normalization {
        let _ = writeln!(summary, "N = {n:.16e}");
    }
    if let Some(eps) = w.epsilon {
        let _ = writeln!(summary, "epsilon = {eps:.16e}");
    }
    if let Some(s) = w.shift {
        let _ = writeln!(summary, "shift = {s:.16e}");
    }
    let _ = writeln!(summary, "Tr(W rho) = {value:.16e}");
    let meta = Metadata {
        name: Some(format!("W[{}]({})", w.method.as_str(), loaded.name)),
        method: Some(w.method.as_str().into()),
        base_method: w.base_method.map(|m| m.as_str().into()),
        epsilon: w.epsilon,
        normalization: w.normalization,
        shift: w.shift,
        evaluation: Some(value),
    };
    Ok((MatrixFile::from_operator(&w.operator, Some(meta)), summary))
}

pub fn schmidt2(path: &Path, g: &GlobalArgs) -> Result<Schmidt2Report, CliError> {
    let cfg = g.config()?;
    let file = MatrixFile::read(path)?;
    let op = file.to_operator()?;
    if !op.matrix().is_hermitian(HERMITIAN_TOL) {
        return Err(CliError::Parse(format!(
            "{} does not hold a Hermitian operator (deviation {:e})",
            path.display(),
            op.matrix().hermitian_deviation()
        )));
    }
    let result = min_schmidt2_expectation(&op, &cfg)?;
    Ok(Schmidt2Report {
        tool: ToolInfo::current(),
        source: file.name().map(str::to_string).unwrap_or_else(|| path.display().to_string()),
        dims: file.dims,
        optimizer: cfg,
        best_value: result.best_value,
        schmidt_coefficients: result.argmin.schmidt_coefficients.clone(),
        result,
    })
}
