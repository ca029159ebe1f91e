//! Browser demo bindings: interactive threshold scans, per-state criterion
//! reports and decomposition certificates for the torus-invariant state
//! families. Every entry point returns a JSON string for the static page in
//! `www/` to render; no framework involved.
//!
//! The `*_impl` functions hold the logic and are plain Rust (testable on any
//! target); the `#[wasm_bindgen]` exports only translate errors to JS.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use torus_ppt::cones::{v2_certificate_werner, v_upper2_certificate, verify_certificate};
use torus_ppt::families::Family;
use torus_ppt::linalg::{hermitian_eigenvalues, partial_transpose_dense};
use torus_ppt::scan::{linspace, scan_family_grid, scan_point};
use torus_ppt::states::ClassState;

const TOL: f64 = 1e-9;

fn parse_family(name: &str, d: usize, value: f64) -> Result<(Family, &'static str), String> {
    let family = match name {
        "werner" => Family::Werner { d, p: value },
        "isotropic" => Family::Isotropic { d, lambda: value },
        "horodecki-sigma" => Family::HorodeckiSigma { alpha: value },
        "ha-gamma" => Family::HaGamma { d, gamma: value },
        "ha-bs" => Family::HaBs { d, s: value },
        other => return Err(format!("unknown family {other:?}")),
    };
    let param = family.scan_param().expect("demo families are scannable");
    Ok((family, param))
}

#[derive(Serialize)]
struct ScanRowJson {
    value: f64,
    analytic_positive: bool,
    analytic_ppt: bool,
    oracle_min_eig: f64,
    oracle_pt_min_eig: f64,
    agreement: bool,
}

#[derive(Serialize)]
struct ScanJson {
    family: String,
    param: &'static str,
    d: usize,
    ppt_threshold: Option<f64>,
    rows: Vec<ScanRowJson>,
}

fn scan_family_impl(
    family: &str,
    d: usize,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<String, String> {
    if !(2..=2000).contains(&steps) || !from.is_finite() || !to.is_finite() || from > to {
        return Err("grid needs from <= to and 2..=2000 steps".into());
    }
    let (base, param) = parse_family(family, d, from)?;
    let rows = scan_family_grid(&base, param, &linspace(from, to, steps), TOL)?;
    let doc = ScanJson {
        family: family.to_string(),
        param,
        d: base.descriptor().d,
        ppt_threshold: base.ppt_threshold(),
        rows: rows
            .into_iter()
            .map(|r| ScanRowJson {
                value: r.param_value,
                analytic_positive: r.analytic_positive,
                analytic_ppt: r.analytic_ppt,
                oracle_min_eig: r.oracle_min_eig,
                oracle_pt_min_eig: r.oracle_pt_min_eig,
                agreement: r.agreement,
            })
            .collect(),
    };
    Ok(serde_json::to_string(&doc).expect("serializable"))
}

/// Sweeps one family parameter over a closed grid; rows carry the analytic
/// verdicts and the dense-oracle eigenvalues for plotting.
#[wasm_bindgen]
pub fn scan_family(
    family: &str,
    d: usize,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<String, JsValue> {
    scan_family_impl(family, d, from, to, steps).map_err(|e| JsValue::from_str(&e))
}

#[derive(Serialize)]
struct CheckJson {
    family: String,
    class: String,
    d: usize,
    value: f64,
    trace: f64,
    positive: bool,
    ppt: bool,
    positive_slacks: Vec<(String, f64)>,
    ppt_slacks: Vec<(String, f64)>,
    eigenvalues: Vec<f64>,
    pt_eigenvalues: Vec<f64>,
    agreement: bool,
}

fn check_family_impl(family: &str, d: usize, value: f64) -> Result<String, String> {
    let (base, param) = parse_family(family, d, value)?;
    let state = base.build().map_err(|e| e.to_string())?;
    let positive = state.check_positive(TOL);
    let ppt = state.check_ppt(TOL);
    let rho = state.to_density();
    let eigenvalues = hermitian_eigenvalues(&rho).map_err(|e| e.to_string())?;
    let pt = partial_transpose_dense(&rho, state.d()).map_err(|e| e.to_string())?;
    let pt_eigenvalues = hermitian_eigenvalues(&pt).map_err(|e| e.to_string())?;
    let row = scan_point(&state, param, value, TOL);
    let doc = CheckJson {
        family: family.to_string(),
        class: state.class_name().to_string(),
        d: state.d(),
        value,
        trace: state.state_trace(),
        positive: positive.verdict,
        ppt: ppt.verdict,
        positive_slacks: positive.slacks,
        ppt_slacks: ppt.slacks,
        eigenvalues,
        pt_eigenvalues,
        agreement: row.agreement,
    };
    Ok(serde_json::to_string(&doc).expect("serializable"))
}

/// Full criterion report for one family member: slack tables and the two
/// spectra (of ρ and of its partial transpose).
#[wasm_bindgen]
pub fn check_family(family: &str, d: usize, value: f64) -> Result<String, JsValue> {
    check_family_impl(family, d, value).map_err(|e| JsValue::from_str(&e))
}

#[derive(Serialize)]
struct CertTermJson {
    weight: f64,
    schmidt_rank: usize,
    vector: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct CertJson {
    family: String,
    claim: String,
    residual: f64,
    sound: bool,
    terms: Vec<CertTermJson>,
}

fn certify_family_impl(family: &str, d: usize, value: f64) -> Result<String, String> {
    let (base, _) = parse_family(family, d, value)?;
    let state = base.build().map_err(|e| e.to_string())?;
    let cert = match &state {
        ClassState::Werner(s) => v2_certificate_werner(s, TOL),
        ClassState::Isotropic(s) => v_upper2_certificate(s, TOL),
    }
    .map_err(|e| e.to_string())?;
    let check = verify_certificate(&cert, &state).map_err(|e| e.to_string())?;
    let doc = CertJson {
        family: family.to_string(),
        claim: cert.claim.as_str().to_string(),
        residual: cert.residual,
        sound: check.sound,
        terms: cert
            .terms
            .iter()
            .map(|t| CertTermJson {
                weight: t.weight,
                schmidt_rank: t.schmidt_rank,
                vector: t.vector.iter().map(|z: &Complex64| (z.re, z.im)).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&doc).expect("serializable"))
}

/// Schmidt-cone certificate for one family member: V₂ via the block
/// decomposition for Werner-like states, V² for isotropic-like PPT states.
#[wasm_bindgen]
pub fn certify_family(family: &str, d: usize, value: f64) -> Result<String, JsValue> {
    certify_family_impl(family, d, value).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_json_parses_and_flags_threshold() {
        let text = scan_family_impl("werner", 3, 0.0, 1.0, 21).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["rows"].as_array().unwrap().len(), 21);
        assert_eq!(doc["ppt_threshold"], 0.5);
        assert_eq!(doc["rows"][0]["analytic_ppt"], true);
        assert_eq!(doc["rows"][20]["analytic_ppt"], false);
    }

    #[test]
    fn check_json_has_spectra() {
        let text = check_family_impl("isotropic", 3, 0.5).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["eigenvalues"].as_array().unwrap().len(), 9);
        assert_eq!(doc["ppt"], false);
        assert_eq!(doc["agreement"], true);
    }

    #[test]
    fn certificate_json_is_sound() {
        let text = certify_family_impl("werner", 3, 0.3).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["claim"], "V2");
        assert_eq!(doc["sound"], true);
        assert_eq!(doc["terms"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn rejects_unknown_family() {
        assert!(scan_family_impl("nope", 3, 0.0, 1.0, 5).is_err());
        assert!(check_family_impl("werner", 1, 0.3).is_err());
    }
}
