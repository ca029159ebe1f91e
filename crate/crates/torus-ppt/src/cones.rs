//! Separability and Schmidt-cone machinery.
//!
//! `V_k` is the cone of positive bipartite operators with Schmidt number at
//! most `k`; `V^l` additionally asks the operator to be PPT with
//! `SN((1⊗τ)A) ≤ l`. Separable operators form `V₁ = V¹`.
//!
//! The constructions here are one-sided: a returned
//! [`DecompositionCertificate`] is an explicit weighted pure-state
//! decomposition that anyone can recheck ([`verify_certificate`]), while the
//! absence of a certificate proves nothing.
//!
//! * Every PPT isotropic-like state is in `V²`: its partial transpose splits
//!   into `a_ii |ii⟩⟨ii|` terms and PSD 2×2 blocks on `span{|ij⟩, |ji⟩}`,
//!   whose eigenvectors have Schmidt rank ≤ 2 ([`v_upper2_certificate`]).
//! * Every positive Werner-like state is in `V₂` by the same block split of
//!   the state itself ([`v2_certificate_werner`]).
//! * Class projections of product states give separable members (Eq.-level
//!   closed form, [`separable_from_product`]); projections of rank-2 pure
//!   states give `V₂` members ([`v2_candidate`]).
//! * [`separability_search`] and [`v2_membership_search`] probe the converse
//!   numerically: nonnegative least squares over sampled generators.

mod nnls;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    flat_index, hermitian_eigen, partial_transpose_dense, schmidt_rank, tensor_product,
    DenseMatrix, LinalgError,
};
use crate::sampling::SeededSampler;
use crate::states::{ClassState, IsotropicLikeState, StateError, WernerLikeState};

/// Schmidt-rank tolerance used when classifying certificate terms.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ConeError {
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("state is not PPT (minimum slack {0:.3e})")]
    NotPpt(f64),
    #[error("state is not positive (minimum slack {0:.3e})")]
    NotPositive(f64),
    #[error("state trace must be 1 within 1e-9, got {0}")]
    BadTrace(f64),
    #[error("claim {claim} cannot be verified against a {class} state")]
    ClaimMismatch { claim: String, class: String },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// What a decomposition certificate asserts about its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeClaim {
    /// Separable: projection of a mixture of product states (rank-1 terms).
    Separable,
    /// Member of `V₂` (all terms of Schmidt rank ≤ 2).
    V2,
    /// Member of `V²` (the partial transpose decomposes into rank ≤ 2 terms).
    VUpper2,
}

impl ConeClaim {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConeClaim::Separable => "SEPARABLE",
            ConeClaim::V2 => "V2",
            ConeClaim::VUpper2 => "V_UPPER_2",
        }
    }

    pub fn parse(text: &str) -> Option<ConeClaim> {
        match text {
            "SEPARABLE" => Some(ConeClaim::Separable),
            "V2" => Some(ConeClaim::V2),
            "V_UPPER_2" => Some(ConeClaim::VUpper2),
            _ => None,
        }
    }

    pub fn rank_bound(&self) -> usize {
        match self {
            ConeClaim::Separable => 1,
            ConeClaim::V2 | ConeClaim::VUpper2 => 2,
        }
    }
}

/// One weighted pure term of a decomposition, `weight · |vector⟩⟨vector|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateTerm {
    pub weight: f64,
    /// Length-d² vector in the `|ij⟩` flattening.
    pub vector: Vec<Complex64>,
    pub schmidt_rank: usize,
}

/// Explicit decomposition evidence. Depending on the claim and target class
/// the terms rebuild the density itself (Werner-like `V2`) or its partial
/// transpose (`V_UPPER_2`); for `SEPARABLE` and isotropic-like `V2` the
/// class projection `P(Σ wᵢ |vᵢ⟩⟨vᵢ|)` matches the target parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionCertificate {
    pub claim: ConeClaim,
    pub terms: Vec<CertificateTerm>,
    pub residual: f64,
}

/// Pair `(α, β)` generating the product state `|α ⊗ β⟩⟨α ⊗ β|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVectorPair {
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
}

impl ProductVectorPair {
    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    fn validate(&self) -> Result<usize, ConeError> {
        let d = self.alpha.len();
        if d < 2 || self.beta.len() != d {
            return Err(ConeError::DimensionMismatch {
                expected: format!("two length-{d} vectors with d >= 2"),
                got: format!("{} and {}", self.alpha.len(), self.beta.len()),
            });
        }
        let na: f64 = self.alpha.iter().map(|z| z.norm_sqr()).sum();
        let nb: f64 = self.beta.iter().map(|z| z.norm_sqr()).sum();
        if na <= 0.0 || nb <= 0.0 {
            return Err(ConeError::ZeroVector);
        }
        Ok(d)
    }

    /// `α ⊗ β` in the `|ij⟩` flattening.
    pub fn tensor(&self) -> Vec<Complex64> {
        tensor_product(&self.alpha, &self.beta)
    }
}

/// Quadruple `(α, β, ψ, φ)` generating `½|α⊗β + ψ⊗φ⟩⟨·|`, a pure state of
/// Schmidt rank ≤ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtTwoQuadruple {
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
    pub psi: Vec<Complex64>,
    pub phi: Vec<Complex64>,
}

impl SchmidtTwoQuadruple {
    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    fn validate(&self) -> Result<usize, ConeError> {
        let d = self.alpha.len();
        if d < 2 || self.beta.len() != d || self.psi.len() != d || self.phi.len() != d {
            return Err(ConeError::DimensionMismatch {
                expected: format!("four length-{d} vectors with d >= 2"),
                got: format!(
                    "{}, {}, {}, {}",
                    self.alpha.len(),
                    self.beta.len(),
                    self.psi.len(),
                    self.phi.len()
                ),
            });
        }
        let norm_sq: f64 = self.tensor().iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(ConeError::ZeroVector);
        }
        Ok(d)
    }

    /// `α ⊗ β + ψ ⊗ φ`.
    pub fn tensor(&self) -> Vec<Complex64> {
        let mut v = tensor_product(&self.alpha, &self.beta);
        for (lhs, rhs) in v.iter_mut().zip(tensor_product(&self.psi, &self.phi)) {
            *lhs += rhs;
        }
        v
    }
}

/// Class projection of the product state `|α⊗β⟩⟨α⊗β|`:
/// `a_ij = (α_i β_i) conj(α_j β_j)`, `c_ij = |α_i|² |β_j|²`. Always positive
/// and PPT (every pair slack vanishes identically).
pub fn separable_from_product(pair: &ProductVectorPair) -> Result<IsotropicLikeState, ConeError> {
    let d = pair.validate()?;
    let w: Vec<Complex64> = (0..d).map(|i| pair.alpha[i] * pair.beta[i]).collect();
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, w[i] * w[j].conj());
            if i != j {
                c[i * d + j] = pair.alpha[i].norm_sqr() * pair.beta[j].norm_sqr();
            }
        }
    }
    Ok(IsotropicLikeState::new(d, a, c)?)
}

/// Class projection of `½|α⊗β + ψ⊗φ⟩⟨·|`: with `w_i = α_iβ_i + ψ_iφ_i` and
/// `v_ij = α_iβ_j + ψ_iφ_j`, `a_ij = ½ w_i conj(w_j)` and `c_ij = ½|v_ij|²`.
pub fn v2_candidate(quad: &SchmidtTwoQuadruple) -> Result<IsotropicLikeState, ConeError> {
    let d = quad.validate()?;
    let w: Vec<Complex64> = (0..d)
        .map(|i| quad.alpha[i] * quad.beta[i] + quad.psi[i] * quad.phi[i])
        .collect();
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, w[i] * w[j].conj() * 0.5);
            if i != j {
                let v_ij = quad.alpha[i] * quad.beta[j] + quad.psi[i] * quad.phi[j];
                c[i * d + j] = 0.5 * v_ij.norm_sqr();
            }
        }
    }
    Ok(IsotropicLikeState::new(d, a, c)?)
}

fn basis_vector(d: usize, i: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    v[flat_index(d, i, j)] = Complex64::new(1.0, 0.0);
    v
}

/// Eigendecomposes the diagonal-plus-2×2-blocks structure shared by the two
/// direct certificates. `diag[i]` weights `|ii⟩⟨ii|`; `block(i,j)` supplies
/// the 2×2 hermitian block on `span{|ij⟩, |ji⟩}`.
fn block_decomposition(
    d: usize,
    diag: impl Fn(usize) -> f64,
    block: impl Fn(usize, usize) -> DenseMatrix,
) -> Vec<CertificateTerm> {
    let mut terms = Vec::new();
    for i in 1..=d {
        let w = diag(i);
        if w > 0.0 {
            terms.push(CertificateTerm {
                weight: w,
                vector: basis_vector(d, i, i),
                schmidt_rank: 1,
            });
        }
    }
    for i in 1..=d {
        for j in i + 1..=d {
            let eig = hermitian_eigen(&block(i, j)).expect("2x2 block is hermitian");
            for k in 0..2 {
                if eig.values[k] > 0.0 {
                    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
                    v[flat_index(d, i, j)] = eig.vectors.get(0, k);
                    v[flat_index(d, j, i)] = eig.vectors.get(1, k);
                    let rank = schmidt_rank(&v, d, RANK_TOL).expect("eigenvector is nonzero");
                    terms.push(CertificateTerm {
                        weight: eig.values[k],
                        vector: v,
                        schmidt_rank: rank,
                    });
                }
            }
        }
    }
    terms
}

fn reconstruction_error(terms: &[CertificateTerm], target: &DenseMatrix) -> f64 {
    let n = target.rows();
    let mut rebuilt = DenseMatrix::zeros(n, n);
    for term in terms {
        rebuilt = rebuilt.add(&DenseMatrix::weighted_projector(&term.vector, term.weight));
    }
    rebuilt.sub(target).frobenius_norm()
}

/// `V²` membership certificate for a PPT isotropic-like state: the partial
/// transpose `Σ a_ii |ii⟩⟨ii| + Σ_{i<j} X_ij` is rebuilt from the PSD block
/// eigendecompositions, every term of Schmidt rank ≤ 2.
pub fn v_upper2_certificate(
    state: &IsotropicLikeState,
    tol: f64,
) -> Result<DecompositionCertificate, ConeError> {
    let report = state.check_ppt(tol);
    if !report.verdict {
        return Err(ConeError::NotPpt(report.min_slack()));
    }
    let d = state.d();
    let terms = block_decomposition(
        d,
        |i| state.a_entry(i, i).re,
        |i, j| {
            let a = state.a_entry(i, j);
            DenseMatrix::new(
                2,
                2,
                vec![
                    Complex64::new(state.c_entry(i, j), 0.0),
                    a,
                    a.conj(),
                    Complex64::new(state.c_entry(j, i), 0.0),
                ],
            )
            .expect("finite block")
        },
    );
    let target = partial_transpose_dense(&state.to_density(), d)?;
    let residual = reconstruction_error(&terms, &target);
    Ok(DecompositionCertificate {
        claim: ConeClaim::VUpper2,
        terms,
        residual,
    })
}

/// `V₂` membership certificate for a positive Werner-like state: the density
/// itself is `Σ b_ii |ii⟩⟨ii|` plus PSD blocks `[[c_ij, b_ij], [conj(b_ij),
/// c_ji]]` on `span{|ij⟩, |ji⟩}`, so its eigendecomposition uses only terms
/// of Schmidt rank ≤ 2.
pub fn v2_certificate_werner(
    state: &WernerLikeState,
    tol: f64,
) -> Result<DecompositionCertificate, ConeError> {
    let report = state.check_positive(tol);
    if !report.verdict {
        return Err(ConeError::NotPositive(report.min_slack()));
    }
    let d = state.d();
    let terms = block_decomposition(
        d,
        |i| state.b_entry(i, i).re,
        |i, j| {
            let b = state.b_entry(i, j);
            DenseMatrix::new(
                2,
                2,
                vec![
                    Complex64::new(state.c_entry(i, j), 0.0),
                    b,
                    b.conj(),
                    Complex64::new(state.c_entry(j, i), 0.0),
                ],
            )
            .expect("finite block")
        },
    );
    let target = state.to_density();
    let residual = reconstruction_error(&terms, &target);
    Ok(DecompositionCertificate {
        claim: ConeClaim::V2,
        terms,
        residual,
    })
}

/// Fixed real parametrization of an isotropic-like state: `â` diagonal in
/// index order, then the upper triangle row-major as `(re, im)`, then the
/// off-diagonal `c` row-major. Length `2d² − d`.
pub fn isotropic_param_vector(state: &IsotropicLikeState) -> Vec<f64> {
    let d = state.d();
    let mut v = Vec::with_capacity(2 * d * d - d);
    for i in 1..=d {
        v.push(state.a_entry(i, i).re);
    }
    for i in 1..=d {
        for j in i + 1..=d {
            let z = state.a_entry(i, j);
            v.push(z.re);
            v.push(z.im);
        }
    }
    for i in 1..=d {
        for j in 1..=d {
            if i != j {
                v.push(state.c_entry(i, j));
            }
        }
    }
    v
}

fn nnls_certificate(
    target: &IsotropicLikeState,
    generators: Vec<(Vec<Complex64>, IsotropicLikeState)>,
    eps: f64,
    claim: ConeClaim,
) -> Option<DecompositionCertificate> {
    let d = target.d();
    let rows = 2 * d * d - d;
    let cols = generators.len();
    if cols == 0 {
        return None;
    }
    // Columns are trace-1 generator parameter vectors, so the NNLS weights
    // double as trace weights.
    let mut data = vec![0.0f64; rows * cols];
    for (c, (_, gen_state)) in generators.iter().enumerate() {
        for (r, value) in isotropic_param_vector(gen_state).into_iter().enumerate() {
            data[r * cols + c] = value;
        }
    }
    let b = isotropic_param_vector(target);
    let solution = nnls::nnls(
        &nnls::ColMatrix {
            data: &data,
            rows,
            cols,
        },
        &b,
        1e-10,
    );
    let weight_sum: f64 = solution.x.iter().sum();
    if solution.residual > eps || (weight_sum - 1.0).abs() > eps {
        return None;
    }
    let mut terms = Vec::new();
    for (c, (vector, _)) in generators.iter().enumerate() {
        if solution.x[c] > 0.0 {
            // The generator state is the projection of |v⟩⟨v| / ‖v‖², so the
            // per-term weight on the raw projector |v⟩⟨v| carries that norm.
            let norm_sq: f64 = vector.iter().map(|z| z.norm_sqr()).sum();
            let rank = schmidt_rank(vector, d, RANK_TOL).expect("generator vector is nonzero");
            terms.push(CertificateTerm {
                weight: solution.x[c] / norm_sq,
                vector: vector.clone(),
                schmidt_rank: rank,
            });
        }
    }
    Some(DecompositionCertificate {
        claim,
        terms,
        residual: solution.residual,
    })
}

/// Numerical separability probe for a trace-1 isotropic-like state: draws
/// `n_samples` seeded product pairs, projects each into the class and solves
/// a nonnegative least-squares fit of the target parameters. A certificate
/// is returned only when the fit residual and the trace-weight defect are
/// both within `eps`; absence of a certificate proves nothing.
pub fn separability_search(
    state: &IsotropicLikeState,
    n_samples: usize,
    seed: u64,
    eps: f64,
) -> Result<Option<DecompositionCertificate>, ConeError> {
    separability_search_with_generators(state, &[], n_samples, seed, eps)
}

/// [`separability_search`] with caller-supplied product pairs prepended to
/// the sampled ones (used to plant known generators).
pub fn separability_search_with_generators(
    state: &IsotropicLikeState,
    planted: &[ProductVectorPair],
    n_samples: usize,
    seed: u64,
    eps: f64,
) -> Result<Option<DecompositionCertificate>, ConeError> {
    let trace = state.state_trace();
    if (trace - 1.0).abs() > 1e-9 {
        return Err(ConeError::BadTrace(trace));
    }
    let d = state.d();
    let mut sampler = SeededSampler::new(seed);
    let mut generators = Vec::with_capacity(planted.len() + n_samples);
    for pair in planted {
        let normalized = normalize_pair(pair)?;
        let projected = separable_from_product(&normalized)?;
        generators.push((normalized.tensor(), projected));
    }
    for _ in 0..n_samples {
        let pair = ProductVectorPair {
            alpha: sampler.unit_complex_vector(d),
            beta: sampler.unit_complex_vector(d),
        };
        let projected = separable_from_product(&pair)?;
        generators.push((pair.tensor(), projected));
    }
    Ok(nnls_certificate(
        state,
        generators,
        eps,
        ConeClaim::Separable,
    ))
}

fn normalize_pair(pair: &ProductVectorPair) -> Result<ProductVectorPair, ConeError> {
    pair.validate()?;
    let na = pair.alpha.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb = pair.beta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(ProductVectorPair {
        alpha: pair.alpha.iter().map(|z| z / na).collect(),
        beta: pair.beta.iter().map(|z| z / nb).collect(),
    })
}

/// Numerical `V₂` membership probe over sampled rank-2 generators; the
/// target is normalized internally, so any positive trace is accepted.
/// Same one-sidedness as [`separability_search`].
pub fn v2_membership_search(
    state: &IsotropicLikeState,
    n_samples: usize,
    seed: u64,
    eps: f64,
) -> Result<Option<DecompositionCertificate>, ConeError> {
    v2_membership_search_with_generators(state, &[], n_samples, seed, eps)
}

/// [`v2_membership_search`] with planted quadruples.
pub fn v2_membership_search_with_generators(
    state: &IsotropicLikeState,
    planted: &[SchmidtTwoQuadruple],
    n_samples: usize,
    seed: u64,
    eps: f64,
) -> Result<Option<DecompositionCertificate>, ConeError> {
    let trace = state.state_trace();
    if trace <= 0.0 {
        return Err(ConeError::BadTrace(trace));
    }
    let normalized_target = state.normalize()?;
    let d = state.d();
    let mut sampler = SeededSampler::new(seed);
    let mut generators = Vec::with_capacity(planted.len() + n_samples);
    let mut push = |quad: &SchmidtTwoQuadruple| -> Result<(), ConeError> {
        let candidate = v2_candidate(quad)?;
        let t = candidate.state_trace();
        if t <= 0.0 {
            return Ok(()); // degenerate draw, skip
        }
        generators.push((quad.tensor(), candidate.normalize()?));
        Ok(())
    };
    for quad in planted {
        push(quad)?;
    }
    for _ in 0..n_samples {
        let quad = SchmidtTwoQuadruple {
            alpha: sampler.unit_complex_vector(d),
            beta: sampler.unit_complex_vector(d),
            psi: sampler.unit_complex_vector(d),
            phi: sampler.unit_complex_vector(d),
        };
        push(&quad)?;
    }
    let cert = nnls_certificate(&normalized_target, generators, eps, ConeClaim::V2);
    // Rescale the weights from the normalized target back to the original.
    Ok(cert.map(|mut c| {
        for term in &mut c.terms {
            term.weight *= trace;
        }
        c.residual *= trace;
        c
    }))
}

/// Result of independently rechecking a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateCheck {
    pub reconstruction_error: f64,
    pub max_term_rank: usize,
    pub weights_nonnegative: bool,
    /// All of: nonnegative weights, every recomputed term rank within the
    /// claim's bound, reconstruction within the recorded residual (plus
    /// rounding headroom).
    pub sound: bool,
}

/// Recomputes a certificate's reconstruction error and term ranks against
/// its target state. Dispatch follows the claim: `V_UPPER_2` rebuilds the
/// partial transpose of an isotropic-like target, Werner-like `V2` rebuilds
/// the density itself, and `SEPARABLE` / isotropic-like `V2` rebuild the
/// class parameters via the projection of `Σ wᵢ |vᵢ⟩⟨vᵢ|`.
pub fn verify_certificate(
    cert: &DecompositionCertificate,
    state: &ClassState,
) -> Result<CertificateCheck, ConeError> {
    let weights_nonnegative = cert.terms.iter().all(|t| t.weight >= 0.0);
    let d = state.d();
    let mut max_term_rank = 0;
    for term in &cert.terms {
        let rank = schmidt_rank(&term.vector, d, RANK_TOL)?;
        max_term_rank = max_term_rank.max(rank);
    }

    let reconstruction_error = match (cert.claim, state) {
        (ConeClaim::VUpper2, ClassState::Isotropic(s)) => {
            let target = partial_transpose_dense(&s.to_density(), d)?;
            reconstruction_error_dense(&cert.terms, &target)
        }
        (ConeClaim::V2, ClassState::Werner(s)) => {
            reconstruction_error_dense(&cert.terms, &s.to_density())
        }
        (ConeClaim::Separable | ConeClaim::V2, ClassState::Isotropic(s)) => {
            reconstruction_error_projected(&cert.terms, s)?
        }
        _ => {
            return Err(ConeError::ClaimMismatch {
                claim: cert.claim.as_str().into(),
                class: state.class_name().into(),
            })
        }
    };

    let rank_ok = max_term_rank <= cert.claim.rank_bound();
    let scale = state.to_density().frobenius_norm().max(1.0);
    let sound = weights_nonnegative
        && rank_ok
        && reconstruction_error <= cert.residual * (1.0 + 1e-9) + 1e-12 * scale;
    Ok(CertificateCheck {
        reconstruction_error,
        max_term_rank,
        weights_nonnegative,
        sound,
    })
}

fn reconstruction_error_dense(terms: &[CertificateTerm], target: &DenseMatrix) -> f64 {
    reconstruction_error(terms, target)
}

fn reconstruction_error_projected(
    terms: &[CertificateTerm],
    target: &IsotropicLikeState,
) -> Result<f64, ConeError> {
    let d = target.d();
    // P(Σ w |v⟩⟨v|) read off componentwise: a_ij = Σ w v_(ii) conj(v_(jj)),
    // c_ij = Σ w |v_(ij)|².
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for term in terms {
        if term.vector.len() != d * d {
            return Err(ConeError::DimensionMismatch {
                expected: format!("{} entries", d * d),
                got: format!("{}", term.vector.len()),
            });
        }
        for i in 1..=d {
            for j in 1..=d {
                let vii = term.vector[flat_index(d, i, i)];
                let vjj = term.vector[flat_index(d, j, j)];
                let prev = a.get(i - 1, j - 1);
                a.set(i - 1, j - 1, prev + vii * vjj.conj() * term.weight);
                if i != j {
                    c[(i - 1) * d + (j - 1)] +=
                        term.weight * term.vector[flat_index(d, i, j)].norm_sqr();
                }
            }
        }
    }
    // Same metric as the NNLS parameter vector: â diagonal and upper
    // triangle once each, off-diagonal c once each. Counting both â
    // triangles would inflate the error against the recorded residual.
    let mut err_sq = 0.0;
    for i in 1..=d {
        for j in i..=d {
            err_sq += (a.get(i - 1, j - 1) - target.a_entry(i, j)).norm_sqr();
        }
        for j in 1..=d {
            if i != j {
                let diff = c[(i - 1) * d + (j - 1)] - target.c_entry(i, j);
                err_sq += diff * diff;
            }
        }
    }
    Ok(err_sq.sqrt())
}
