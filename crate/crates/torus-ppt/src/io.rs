//! JSON file formats.
//!
//! * Matrix file: `{"rows": n, "cols": n, "data": [[re, im], ...]}`, row-major.
//! * State file: `{"d": n, "class": "isotropic-like"|"werner-like",
//!   "a"|"b": [[[re, im], ...], ...], "c": [[...], ...]}`; the `c` diagonal
//!   must be zero and the parameter matrix hermitian within `1e-9` relative.
//! * Certificate file: `{"claim": ..., "residual": ...,
//!   "terms": [{"weight": w, "vector": [[re, im], ...], "schmidt_rank": r}]}`.
//!
//! Floats go through `serde_json`'s shortest round-trip encoding, so every
//! value written parses back to the identical bits.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::{ConeClaim, DecompositionCertificate};
use crate::linalg::{DenseMatrix, LinalgError};
use crate::states::{ClassState, IsotropicLikeState, StateError, WernerLikeState};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse failure: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid matrix file: {0}")]
    InvalidMatrix(#[from] LinalgError),
    #[error("invalid state file: {0}")]
    InvalidState(#[from] StateError),
    #[error("invalid file: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<(f64, f64)>,
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    let doc = MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        data: m.data().iter().map(|z| (z.re, z.im)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("matrix serialization cannot fail")
}

pub fn matrix_from_json(text: &str) -> Result<DenseMatrix, IoError> {
    let doc: MatrixJson = serde_json::from_str(text)?;
    let data: Vec<Complex64> = doc
        .data
        .iter()
        .map(|(re, im)| Complex64::new(*re, *im))
        .collect();
    Ok(DenseMatrix::new(doc.rows, doc.cols, data)?)
}

pub fn write_matrix(path: &Path, m: &DenseMatrix) -> Result<(), IoError> {
    Ok(fs::write(path, matrix_to_json(m))?)
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, IoError> {
    matrix_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    d: usize,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Vec<(f64, f64)>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Vec<Vec<(f64, f64)>>>,
    c: Vec<Vec<f64>>,
}

fn complex_rows(d: usize, m: &DenseMatrix) -> Vec<Vec<(f64, f64)>> {
    (0..d)
        .map(|r| (0..d).map(|c| (m.get(r, c).re, m.get(r, c).im)).collect())
        .collect()
}

fn real_rows(d: usize, c: &[f64]) -> Vec<Vec<f64>> {
    (0..d).map(|r| c[r * d..(r + 1) * d].to_vec()).collect()
}

fn parse_complex_matrix(d: usize, rows: &[Vec<(f64, f64)>]) -> Result<DenseMatrix, IoError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(IoError::Invalid(format!(
            "parameter matrix must be {d}x{d}"
        )));
    }
    let data: Vec<Complex64> = rows
        .iter()
        .flatten()
        .map(|(re, im)| Complex64::new(*re, *im))
        .collect();
    Ok(DenseMatrix::new(d, d, data)?)
}

pub fn state_to_json(state: &ClassState) -> String {
    let d = state.d();
    let doc = match state {
        ClassState::Isotropic(s) => StateJson {
            d,
            class: "isotropic-like".into(),
            a: Some(complex_rows(d, s.a())),
            b: None,
            c: real_rows(d, s.c_matrix()),
        },
        ClassState::Werner(s) => StateJson {
            d,
            class: "werner-like".into(),
            a: None,
            b: Some(complex_rows(d, s.b())),
            c: real_rows(d, s.c_matrix()),
        },
    };
    serde_json::to_string_pretty(&doc).expect("state serialization cannot fail")
}

pub fn state_from_json(text: &str) -> Result<ClassState, IoError> {
    let doc: StateJson = serde_json::from_str(text)?;
    if doc.c.len() != doc.d || doc.c.iter().any(|r| r.len() != doc.d) {
        return Err(IoError::Invalid(format!("c matrix must be {0}x{0}", doc.d)));
    }
    let c: Vec<f64> = doc.c.iter().flatten().copied().collect();
    match doc.class.as_str() {
        "isotropic-like" => {
            let rows = doc
                .a
                .as_ref()
                .ok_or_else(|| IoError::Invalid("isotropic-like state needs key \"a\"".into()))?;
            let a = parse_complex_matrix(doc.d, rows)?;
            Ok(ClassState::Isotropic(IsotropicLikeState::new(doc.d, a, c)?))
        }
        "werner-like" => {
            let rows = doc
                .b
                .as_ref()
                .ok_or_else(|| IoError::Invalid("werner-like state needs key \"b\"".into()))?;
            let b = parse_complex_matrix(doc.d, rows)?;
            Ok(ClassState::Werner(WernerLikeState::new(doc.d, b, c)?))
        }
        other => Err(IoError::Invalid(format!("unknown state class {other:?}"))),
    }
}

pub fn write_state(path: &Path, state: &ClassState) -> Result<(), IoError> {
    Ok(fs::write(path, state_to_json(state))?)
}

pub fn read_state(path: &Path) -> Result<ClassState, IoError> {
    state_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
struct CertificateTermJson {
    weight: f64,
    vector: Vec<(f64, f64)>,
    schmidt_rank: usize,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    claim: String,
    residual: f64,
    terms: Vec<CertificateTermJson>,
}

pub fn certificate_to_json(cert: &DecompositionCertificate) -> String {
    let doc = CertificateJson {
        claim: cert.claim.as_str().to_string(),
        residual: cert.residual,
        terms: cert
            .terms
            .iter()
            .map(|t| CertificateTermJson {
                weight: t.weight,
                vector: t.vector.iter().map(|z| (z.re, z.im)).collect(),
                schmidt_rank: t.schmidt_rank,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("certificate serialization cannot fail")
}

pub fn certificate_from_json(text: &str) -> Result<DecompositionCertificate, IoError> {
    let doc: CertificateJson = serde_json::from_str(text)?;
    let claim = ConeClaim::parse(&doc.claim)
        .ok_or_else(|| IoError::Invalid(format!("unknown claim {:?}", doc.claim)))?;
    Ok(DecompositionCertificate {
        claim,
        residual: doc.residual,
        terms: doc
            .terms
            .into_iter()
            .map(|t| crate::cones::CertificateTerm {
                weight: t.weight,
                vector: t
                    .vector
                    .iter()
                    .map(|(re, im)| Complex64::new(*re, *im))
                    .collect(),
                schmidt_rank: t.schmidt_rank,
            })
            .collect(),
    })
}

pub fn write_certificate(path: &Path, cert: &DecompositionCertificate) -> Result<(), IoError> {
    Ok(fs::write(path, certificate_to_json(cert))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::sampling::SeededSampler;

    #[test]
    fn matrix_round_trip_is_bitwise() {
        let mut sampler = SeededSampler::new(2);
        let mut m = DenseMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                m.set(r, c, sampler.complex_normal());
            }
        }
        let text = matrix_to_json(&m);
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn state_round_trip_is_bitwise() {
        let iso = ClassState::Isotropic(families::ha_gamma(3, 1.7).unwrap());
        let back = state_from_json(&state_to_json(&iso)).unwrap();
        assert_eq!(back, iso);

        let wer = ClassState::Werner(families::werner(4, 0.37).unwrap());
        let back = state_from_json(&state_to_json(&wer)).unwrap();
        assert_eq!(back, wer);
    }

    #[test]
    fn readers_return_errors_instead_of_panicking() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        // Random bytes and mutilated valid documents must all come back as
        // Err from every reader.
        let valid = state_to_json(&ClassState::Werner(families::werner(3, 0.4).unwrap()));
        runner
            .run(
                &(any::<Vec<u8>>(), 0usize..valid.len()),
                |(noise, truncate_at)| {
                    let garbage = String::from_utf8_lossy(&noise).into_owned();
                    let _ = state_from_json(&garbage);
                    let _ = matrix_from_json(&garbage);
                    let _ = certificate_from_json(&garbage);
                    assert!(state_from_json(&valid[..truncate_at]).is_err());
                    Ok(())
                },
            )
            .unwrap();
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(state_from_json("{not json").is_err());
        // Non-hermitian a.
        let bad = r#"{"d":2,"class":"isotropic-like",
            "a":[[[0,0],[1,0]],[[0.5,0],[0,0]]],
            "c":[[0,1],[1,0]]}"#;
        assert!(matches!(
            state_from_json(bad),
            Err(IoError::InvalidState(StateError::NonHermitian { .. }))
        ));
        // Nonzero c diagonal.
        let bad = r#"{"d":2,"class":"isotropic-like",
            "a":[[[1,0],[0,0]],[[0,0],[1,0]]],
            "c":[[0.1,1],[1,0]]}"#;
        assert!(matches!(
            state_from_json(bad),
            Err(IoError::InvalidState(StateError::NonZeroCDiagonal))
        ));
        // Wrong class key.
        let bad = r#"{"d":2,"class":"werner-like",
            "a":[[[1,0],[0,0]],[[0,0],[1,0]]],
            "c":[[0,1],[1,0]]}"#;
        assert!(matches!(state_from_json(bad), Err(IoError::Invalid(_))));
        // Non-finite entry.
        let bad = r#"{"rows":1,"cols":1,"data":[[1e999,0]]}"#;
        assert!(matrix_from_json(bad).is_err());
    }
}
