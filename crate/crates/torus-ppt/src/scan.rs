//! Parameter-grid evaluation shared by the CLI `scan` command and the
//! browser demo: per-point analytic verdicts next to the dense eigenvalue
//! oracle, with an agreement flag.

use crate::families::Family;
use crate::linalg::{is_psd, partial_transpose_dense};
use crate::states::{ClassState, CriterionReport};

/// Verdict disagreements are only alarming beyond this slack band
/// (relative to the density's Frobenius scale).
pub const AGREEMENT_BAND: f64 = 1e-8;

/// One grid point of a family scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub param_name: String,
    pub param_value: f64,
    pub analytic_positive: bool,
    pub analytic_ppt: bool,
    pub oracle_min_eig: f64,
    pub oracle_pt_min_eig: f64,
    pub agreement: bool,
}

/// Eigenvalue-oracle verdicts for a class state.
pub struct OracleVerdicts {
    pub min_eig: f64,
    pub pt_min_eig: f64,
    pub positive: bool,
    pub ppt: bool,
}

pub fn oracle_verdicts(state: &ClassState, tol: f64) -> OracleVerdicts {
    let rho = state.to_density();
    let report = is_psd(&rho, tol).expect("class densities are hermitian");
    let pt = partial_transpose_dense(&rho, state.d()).expect("density has the right size");
    let pt_report = is_psd(&pt, tol).expect("partial transpose is hermitian");
    OracleVerdicts {
        min_eig: report.min_eigenvalue,
        pt_min_eig: pt_report.min_eigenvalue,
        positive: report.is_psd,
        ppt: pt_report.is_psd,
    }
}

/// Equal verdicts, or a margin within the agreement band on both sides.
pub fn verdicts_agree(
    analytic: &CriterionReport,
    oracle_verdict: bool,
    oracle_margin: f64,
    scale: f64,
) -> bool {
    analytic.verdict == oracle_verdict
        || analytic.min_slack().abs().min(oracle_margin.abs()) <= AGREEMENT_BAND * scale.max(1.0)
}

/// Uniform closed-interval grid including both endpoints.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "grid needs at least two points");
    (0..steps)
        .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
        .collect()
}

/// Evaluates a family along a parameter grid.
pub fn scan_family_grid(
    family: &Family,
    param: &str,
    values: &[f64],
    tol: f64,
) -> Result<Vec<ScanRow>, String> {
    values
        .iter()
        .map(|&value| {
            let state = family
                .with_param(param, value)
                .map_err(|e| e.to_string())?
                .build()
                .map_err(|e| e.to_string())?;
            Ok(scan_point(&state, param, value, tol))
        })
        .collect()
}

/// Evaluates a single prepared state as a scan row.
pub fn scan_point(state: &ClassState, param: &str, value: f64, tol: f64) -> ScanRow {
    let positive = state.check_positive(tol);
    let ppt = state.check_ppt(tol);
    let oracle = oracle_verdicts(state, tol);
    let scale = state.to_density().frobenius_norm();
    let agreement = verdicts_agree(&positive, oracle.positive, oracle.min_eig, scale)
        && verdicts_agree(&ppt, oracle.ppt, oracle.pt_min_eig, scale);
    ScanRow {
        param_name: param.to_string(),
        param_value: value,
        analytic_positive: positive.verdict,
        analytic_ppt: ppt.verdict,
        oracle_min_eig: oracle.min_eig,
        oracle_pt_min_eig: oracle.pt_min_eig,
        agreement,
    }
}

/// CSV rendering with the canonical column order.
pub fn scan_rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(
        "param_name,param_value,analytic_positive,analytic_ppt,oracle_min_eig,oracle_pt_min_eig,agreement\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.param_name,
            r.param_value,
            r.analytic_positive,
            r.analytic_ppt,
            r.oracle_min_eig,
            r.oracle_pt_min_eig,
            r.agreement
        ));
    }
    out
}
