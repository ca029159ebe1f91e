//! Positive-map engine on Choi matrices.
//!
//! A linear map `Φ : M_d → M_d` is stored solely through its Choi matrix
//! `choi[(i,k),(j,l)] = ⟨k|Φ(|i⟩⟨j|)|l⟩`; applying `1 ⊗ Φ` to a bipartite
//! density then works blockwise. A decomposable map (CP + CP∘τ) can never
//! detect a PPT state, so a PPT state mapped to something non-PSD is
//! one-sided evidence of indecomposability; if the state additionally
//! carries `V₂` and `V²` certificates, the same negativity is evidence of
//! atomicity. Conclusions are only reported when every prerequisite
//! certificate actually verified.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::cones::{v2_membership_search, v_upper2_certificate, verify_certificate, ConeError};
use crate::families::{FamilyDescriptor, ParamValue};
use crate::linalg::{flat_index, hermitian_eigenvalues, DenseMatrix, LinalgError};
use crate::states::{ClassState, IsotropicLikeState};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("map {map} is not defined for d={d}")]
    UnsupportedDimension { map: String, d: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("choi matrix is not hermitian")]
    NonHermitianChoi,
    #[error("state is not positive (minimum slack {0:.3e})")]
    NotPositiveState(f64),
    #[error("state is not PPT (minimum slack {0:.3e})")]
    NotPptState(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A map `M_d → M_d` through its Choi matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MapRepresentation {
    name: String,
    d: usize,
    choi: DenseMatrix,
}

impl MapRepresentation {
    /// Requires a hermitian d²×d² Choi matrix (hermiticity-preserving map).
    pub fn new(name: &str, d: usize, choi: DenseMatrix) -> Result<Self, MapError> {
        if d < 2 {
            return Err(MapError::UnsupportedDimension {
                map: name.into(),
                d,
            });
        }
        if choi.rows() != d * d || choi.cols() != d * d {
            return Err(MapError::DimensionMismatch {
                expected: format!("{0}x{0}", d * d),
                got: format!("{}x{}", choi.rows(), choi.cols()),
            });
        }
        if !choi.is_hermitian() {
            return Err(MapError::NonHermitianChoi);
        }
        Ok(MapRepresentation {
            name: name.into(),
            d,
            choi,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn choi(&self) -> &DenseMatrix {
        &self.choi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinMap {
    /// `Φ(X) = Xᵀ`.
    Transpose,
    /// `Φ(X) = Tr(X)·I − X`.
    Reduction,
    /// The d = 3 Choi-type map `Φ(X)_kk = X_kk + X_{k⊖1,k⊖1}`,
    /// `Φ(X)_kl = −X_kl` for `k ≠ l`.
    Choi3,
}

impl BuiltinMap {
    pub fn parse(name: &str) -> Option<BuiltinMap> {
        match name {
            "transpose" => Some(BuiltinMap::Transpose),
            "reduction" => Some(BuiltinMap::Reduction),
            "choi3" => Some(BuiltinMap::Choi3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinMap::Transpose => "transpose",
            BuiltinMap::Reduction => "reduction",
            BuiltinMap::Choi3 => "choi3",
        }
    }
}

/// Choi matrices of the built-in maps. `choi3` requires `d = 3`.
pub fn builtin_map(map: BuiltinMap, d: usize) -> Result<MapRepresentation, MapError> {
    if d < 2 || (map == BuiltinMap::Choi3 && d != 3) {
        return Err(MapError::UnsupportedDimension {
            map: map.name().into(),
            d,
        });
    }
    let n = d * d;
    let mut choi = DenseMatrix::zeros(n, n);
    let one = Complex64::new(1.0, 0.0);
    match map {
        BuiltinMap::Transpose => {
            // ⟨k|(|i⟩⟨j|)ᵀ|l⟩ = δ_kj δ_il.
            for i in 1..=d {
                for k in 1..=d {
                    choi.set(flat_index(d, i, k), flat_index(d, k, i), one);
                }
            }
        }
        BuiltinMap::Reduction => {
            // ⟨k|(δ_ij I − |i⟩⟨j|)|l⟩ = δ_ij δ_kl − δ_ki δ_jl.
            for i in 1..=d {
                for k in 1..=d {
                    let row = flat_index(d, i, k);
                    let v = choi.get(row, flat_index(d, i, k)) + one;
                    choi.set(row, flat_index(d, i, k), v);
                }
            }
            for i in 1..=d {
                for j in 1..=d {
                    let row = flat_index(d, i, i);
                    let col = flat_index(d, j, j);
                    let v = choi.get(row, col) - one;
                    choi.set(row, col, v);
                }
            }
        }
        BuiltinMap::Choi3 => {
            // Diagonal pattern X_kk + X_{k⊖1,k⊖1}, off-diagonal −X_kl.
            for i in 1..=d {
                for k in 1..=d {
                    // X_ii feeds Φ(X)_kk when k = i or k⊖1 = i (k = i⊕1).
                    let hit = k == i || (i % d) + 1 == k;
                    if hit {
                        choi.set(flat_index(d, i, k), flat_index(d, i, k), one);
                    }
                }
            }
            for i in 1..=d {
                for j in 1..=d {
                    if i != j {
                        choi.set(flat_index(d, i, i), flat_index(d, j, j), -one);
                    }
                }
            }
        }
    }
    MapRepresentation::new(map.name(), d, choi)
}

/// `(1 ⊗ Φ)ρ`, computed blockwise: writing `ρ = Σ |i⟩⟨j| ⊗ ρ_ij`, the output
/// is `Σ |i⟩⟨j| ⊗ Φ(ρ_ij)` with `Φ(X)_kl = Σ_{mn} X_mn choi[(m,k),(n,l)]`.
/// Zero Choi entries are skipped, so permutation-like maps (transpose) act
/// as exact entry relocations.
pub fn apply_map(rho: &DenseMatrix, phi: &MapRepresentation) -> Result<DenseMatrix, MapError> {
    let d = phi.d();
    let n = d * d;
    if rho.rows() != n || rho.cols() != n {
        return Err(MapError::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut out = DenseMatrix::zeros(n, n);
    for i in 1..=d {
        for j in 1..=d {
            // Block ρ_ij, entry (m, n) at ρ[(i,m),(j,n)].
            for k in 1..=d {
                for l in 1..=d {
                    let mut acc = zero;
                    for m in 1..=d {
                        for nn in 1..=d {
                            let w = phi.choi.get(flat_index(d, m, k), flat_index(d, nn, l));
                            if w != zero {
                                acc += rho.get(flat_index(d, i, m), flat_index(d, j, nn)) * w;
                            }
                        }
                    }
                    out.set(flat_index(d, i, k), flat_index(d, j, l), acc);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvidenceConclusion {
    /// The map detected a PPT state, which no decomposable map can do.
    IndecomposableEvidence,
    /// The map detected a state carrying verified `V₂` and `V²` certificates.
    AtomicEvidence,
    NoEvidence,
}

impl EvidenceConclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            EvidenceConclusion::IndecomposableEvidence => "INDECOMPOSABLE_EVIDENCE",
            EvidenceConclusion::AtomicEvidence => "ATOMIC_EVIDENCE",
            EvidenceConclusion::NoEvidence => "NO_EVIDENCE",
        }
    }
}

/// Identifies the state an evidence report speaks about: a family member
/// with its parameters, or a reference to a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateDescriptor {
    Family(FamilyDescriptor),
    File(String),
}

impl fmt::Display for StateDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateDescriptor::File(path) => write!(f, "file:{path}"),
            StateDescriptor::Family(desc) => {
                write!(f, "{}(d={}", desc.name, desc.d)?;
                for (key, value) in &desc.params {
                    match value {
                        ParamValue::Scalar(v) => write!(f, ", {key}={v}")?,
                        ParamValue::Vector(v) => write!(f, ", {key}={v:?}")?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

/// One-sided numerical evidence record. `prerequisites` lists only claims
/// that actually verified; a conclusion other than `NoEvidence` is emitted
/// only when the eigenvalue is negative beyond tolerance and all listed
/// prerequisites hold.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceReport {
    pub map_name: String,
    pub state_descriptor: StateDescriptor,
    pub min_eigenvalue: f64,
    pub conclusion: EvidenceConclusion,
    pub prerequisites: Vec<String>,
}

fn min_output_eigenvalue(
    state: &ClassState,
    phi: &MapRepresentation,
) -> Result<(f64, f64), MapError> {
    let rho = state.to_density();
    let mapped = apply_map(&rho, phi)?;
    let eig = hermitian_eigenvalues(&mapped)?;
    let scale = mapped.frobenius_norm().max(1.0);
    Ok((eig[0], scale))
}

/// Indecomposability probe: requires a positive state; verifies PPT, applies
/// the map, and reports evidence only when a verified-PPT state comes out
/// negative.
pub fn indecomposability_evidence(
    phi: &MapRepresentation,
    state: &ClassState,
    descriptor: StateDescriptor,
    tol: f64,
) -> Result<EvidenceReport, MapError> {
    let positive = state.check_positive(tol);
    if !positive.verdict {
        return Err(MapError::NotPositiveState(positive.min_slack()));
    }
    let mut prerequisites = vec!["positive".to_string()];
    let ppt = state.check_ppt(tol);
    if ppt.verdict {
        prerequisites.push("ppt".to_string());
    }
    let (min_eigenvalue, scale) = min_output_eigenvalue(state, phi)?;
    let detected = min_eigenvalue < -tol * scale;
    let conclusion = if ppt.verdict && detected {
        EvidenceConclusion::IndecomposableEvidence
    } else {
        EvidenceConclusion::NoEvidence
    };
    Ok(EvidenceReport {
        map_name: phi.name.clone(),
        state_descriptor: descriptor,
        min_eigenvalue,
        conclusion,
        prerequisites,
    })
}

/// Atomicity probe for PPT isotropic-like states: obtains the constructive
/// `V²` certificate, attempts a `V₂` certificate by NNLS over sampled rank-2
/// generators, and reports evidence only when both verified and the mapped
/// state is negative. A missing `V₂` certificate downgrades the conclusion
/// rather than guessing.
pub fn atomicity_evidence(
    phi: &MapRepresentation,
    state: &IsotropicLikeState,
    descriptor: StateDescriptor,
    tol: f64,
    v2_samples: usize,
    seed: u64,
    eps: f64,
) -> Result<EvidenceReport, MapError> {
    let positive = state.check_positive(tol);
    if !positive.verdict {
        return Err(MapError::NotPositiveState(positive.min_slack()));
    }
    let ppt = state.check_ppt(tol);
    if !ppt.verdict {
        return Err(MapError::NotPptState(ppt.min_slack()));
    }
    let mut prerequisites = vec!["positive".to_string(), "ppt".to_string()];
    let class_state = ClassState::Isotropic(state.clone());

    let vup2 = v_upper2_certificate(state, tol)?;
    let vup2_ok = verify_certificate(&vup2, &class_state)?.sound;
    if vup2_ok {
        prerequisites.push("V_UPPER_2".to_string());
    }

    let v2 = v2_membership_search(state, v2_samples, seed, eps)?;
    let v2_ok = match &v2 {
        Some(cert) => verify_certificate(cert, &class_state)?.sound,
        None => false,
    };
    if v2_ok {
        prerequisites.push("V2".to_string());
    }

    let (min_eigenvalue, scale) = min_output_eigenvalue(&class_state, phi)?;
    let detected = min_eigenvalue < -tol * scale;
    let conclusion = if vup2_ok && v2_ok && detected {
        EvidenceConclusion::AtomicEvidence
    } else {
        EvidenceConclusion::NoEvidence
    };
    Ok(EvidenceReport {
        map_name: phi.name.clone(),
        state_descriptor: descriptor,
        min_eigenvalue,
        conclusion,
        prerequisites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linalg::partial_transpose_dense;
    use crate::sampling::SeededSampler;

    const TOL: f64 = 1e-9;

    #[test]
    fn transpose_map_equals_partial_transpose_bitwise() {
        let mut sampler = SeededSampler::new(3);
        for d in 2..=4usize {
            let phi = builtin_map(BuiltinMap::Transpose, d).unwrap();
            for _ in 0..10 {
                let lambda = sampler.unit_complex_vector(d);
                let rho = families::lambda_vector(&lambda).unwrap().to_density();
                let lhs = apply_map(&rho, &phi).unwrap();
                let rhs = partial_transpose_dense(&rho, d).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identity_choi_acts_as_identity() {
        let d = 3;
        let mut choi = DenseMatrix::zeros(9, 9);
        for i in 1..=d {
            for j in 1..=d {
                choi.set(
                    flat_index(d, i, i),
                    flat_index(d, j, j),
                    Complex64::new(1.0, 0.0),
                );
            }
        }
        let phi = MapRepresentation::new("identity", d, choi).unwrap();
        let rho = families::isotropic(3, 0.4).unwrap().to_density();
        assert_eq!(apply_map(&rho, &phi).unwrap(), rho);
    }

    #[test]
    fn apply_map_is_linear() {
        let d = 3;
        let phi = builtin_map(BuiltinMap::Reduction, d).unwrap();
        let rho1 = families::isotropic(3, 0.3).unwrap().to_density();
        let rho2 = families::werner(3, 0.6).unwrap().to_density();
        let combo = rho1
            .scaled(Complex64::new(0.7, 0.0))
            .add(&rho2.scaled(Complex64::new(0.3, 0.0)));
        let lhs = apply_map(&combo, &phi).unwrap();
        let rhs = apply_map(&rho1, &phi)
            .unwrap()
            .scaled(Complex64::new(0.7, 0.0))
            .add(
                &apply_map(&rho2, &phi)
                    .unwrap()
                    .scaled(Complex64::new(0.3, 0.0)),
            );
        assert!(lhs.sub(&rhs).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn reduction_detects_maximally_entangled() {
        let phi = builtin_map(BuiltinMap::Reduction, 2).unwrap();
        let rho = families::isotropic(2, 1.0).unwrap().to_density();
        let out = apply_map(&rho, &phi).unwrap();
        let eig = hermitian_eigenvalues(&out).unwrap();
        assert!(eig[0] < -1e-9, "min eigenvalue {}", eig[0]);

        // A positive map keeps the maximally mixed state PSD.
        let mixed = DenseMatrix::identity(4).scaled(Complex64::new(0.25, 0.0));
        let out = apply_map(&mixed, &phi).unwrap();
        assert!(hermitian_eigenvalues(&out).unwrap()[0] >= -1e-12);
    }

    #[test]
    fn choi3_requires_d3() {
        assert!(matches!(
            builtin_map(BuiltinMap::Choi3, 2),
            Err(MapError::UnsupportedDimension { .. })
        ));
        let phi = builtin_map(BuiltinMap::Choi3, 3).unwrap();
        assert_eq!(phi.d(), 3);
        // The Choi matrix must be hermitian (checked on construction) and
        // act correctly on a basis state: Φ(E_11) = diag(1, 1, 0) under ⊖1.
        let mut rho = DenseMatrix::zeros(9, 9);
        rho.set(0, 0, Complex64::new(1.0, 0.0)); // |11⟩⟨11| = E_11 ⊗ E_11
        let out = apply_map(&rho, &phi).unwrap();
        // Block (1,1) of the output is Φ(E_11): diagonal hits at k with
        // k = 1 or k⊖1 = 1 (k = 2).
        assert_eq!(out.get(flat_index(3, 1, 1), flat_index(3, 1, 1)).re, 1.0);
        assert_eq!(out.get(flat_index(3, 1, 2), flat_index(3, 1, 2)).re, 1.0);
        assert_eq!(out.get(flat_index(3, 1, 3), flat_index(3, 1, 3)).re, 0.0);
    }

    #[test]
    fn transpose_never_gives_evidence_on_ppt_states() {
        let phi = builtin_map(BuiltinMap::Transpose, 3).unwrap();
        let state = ClassState::Isotropic(families::isotropic(3, 0.2).unwrap());
        let report = indecomposability_evidence(
            &phi,
            &state,
            StateDescriptor::File("isotropic.json".into()),
            TOL,
        )
        .unwrap();
        assert_eq!(report.conclusion, EvidenceConclusion::NoEvidence);
        assert!(report.prerequisites.contains(&"ppt".to_string()));
        assert!(report.min_eigenvalue >= -1e-9);
    }

    #[test]
    fn reduction_is_decomposable_no_evidence_on_ppt() {
        let phi = builtin_map(BuiltinMap::Reduction, 3).unwrap();
        let state = ClassState::Isotropic(families::isotropic(3, 0.2).unwrap());
        let report = indecomposability_evidence(
            &phi,
            &state,
            StateDescriptor::File("isotropic.json".into()),
            TOL,
        )
        .unwrap();
        assert_eq!(report.conclusion, EvidenceConclusion::NoEvidence);
    }

    #[test]
    fn evidence_requires_positive_state() {
        let phi = builtin_map(BuiltinMap::Transpose, 3).unwrap();
        let state = ClassState::Werner(families::werner(3, 1.4).unwrap());
        assert!(matches!(
            indecomposability_evidence(
                &phi,
                &state,
                StateDescriptor::File("werner.json".into()),
                TOL
            ),
            Err(MapError::NotPositiveState(_))
        ));
    }

    #[test]
    fn atomicity_report_structure() {
        let u = 1.0 / 3f64.sqrt();
        let lam = families::lambda_vector(&[Complex64::new(u, 0.0); 3]).unwrap();
        let phi = builtin_map(BuiltinMap::Choi3, 3).unwrap();
        let report = atomicity_evidence(
            &phi,
            &lam,
            StateDescriptor::File("lam.json".into()),
            TOL,
            150,
            4,
            1e-6,
        )
        .unwrap();
        // The V² certificate always verifies for a PPT isotropic-like state.
        assert!(report.prerequisites.contains(&"V_UPPER_2".to_string()));
        // No overclaim: a conclusion needs every prerequisite verified and a
        // negative eigenvalue.
        if report.conclusion == EvidenceConclusion::AtomicEvidence {
            assert!(report.prerequisites.contains(&"V2".to_string()));
            assert!(report.min_eigenvalue < -1e-9);
        }

        // Transpose: PPT precondition forces a PSD output, never evidence.
        let phi = builtin_map(BuiltinMap::Transpose, 3).unwrap();
        let report = atomicity_evidence(
            &phi,
            &lam,
            StateDescriptor::File("lam.json".into()),
            TOL,
            50,
            4,
            1e-6,
        )
        .unwrap();
        assert_eq!(report.conclusion, EvidenceConclusion::NoEvidence);
        assert!(report.min_eigenvalue >= -1e-9);

        // Non-PPT input is refused.
        let pure = families::isotropic(2, 1.0).unwrap();
        let phi2 = builtin_map(BuiltinMap::Transpose, 2).unwrap();
        assert!(matches!(
            atomicity_evidence(
                &phi2,
                &pure,
                StateDescriptor::File("pure.json".into()),
                TOL,
                10,
                1,
                1e-6
            ),
            Err(MapError::NotPptState(_))
        ));
    }
}
