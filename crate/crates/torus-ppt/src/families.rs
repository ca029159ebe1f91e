//! Constructors for the named families of torus-invariant states, each with
//! its analytic positivity/PPT region where a closed form exists.
//!
//! Trace-1 families: [`werner`], [`isotropic`], [`shor_family`],
//! [`horodecki_sigma`], [`diagonal_family`]. Un-normalized families (their
//! criteria are scale-invariant): [`stormer`], [`ha_gamma`], [`ha_bs`],
//! [`lambda_vector`]. [`horodecki_rho_a`] builds a 9×9 matrix that is *not*
//! a class member; it exists to exercise the class projector.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{flat_index, DenseMatrix};
use crate::states::{ClassState, IsotropicLikeState, WernerLikeState};

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("weights must be nonnegative and sum to 1 within 1e-12")]
    BadWeights,
    #[error("vector must be normalized to unit 2-norm within 1e-12")]
    NotNormalized,
}

fn require_d(d: usize) -> Result<(), FamilyError> {
    if d < 2 {
        return Err(FamilyError::BadParameter(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if d > 8 {
        return Err(FamilyError::BadParameter(format!(
            "dimension must be at most 8 (dense oracle cap), got {d}"
        )));
    }
    Ok(())
}

/// `i ⊕ k` on 1-based indices with wraparound (`d ⊕ 1 = 1`).
fn wrap(d: usize, i: usize, k: usize) -> usize {
    (i - 1 + k) % d + 1
}

/// Werner state `W_p = (1−p) Q⁺ + p Q⁻` in Werner-like parameters:
/// `b_ij = x₋` off-diagonal, `b_ii = x₋ + x₊`, `c_ij = x₊`, with
/// `x± = (1−p)/(d²+d) ± p/(d²−d)`. Trace 1; positive iff `p ∈ [0,1]`,
/// PPT iff `p ≤ 1/2`. Out-of-range `p` is allowed; the criteria report it.
pub fn werner(d: usize, p: f64) -> Result<WernerLikeState, FamilyError> {
    require_d(d)?;
    let df = d as f64;
    let x_plus = (1.0 - p) / (df * df + df) + p / (df * df - df);
    let x_minus = (1.0 - p) / (df * df + df) - p / (df * df - df);
    let mut b = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                b.set(i, i, Complex64::new(x_minus + x_plus, 0.0));
            } else {
                b.set(i, j, Complex64::new(x_minus, 0.0));
                c[i * d + j] = x_plus;
            }
        }
    }
    Ok(WernerLikeState::new(d, b, c).expect("werner parameters are valid"))
}

/// The two-point spectrum of the Werner `b̂`: `x₊` with multiplicity `d−1`
/// and `d·x₋ + x₊` once.
pub fn werner_b_spectrum(d: usize, p: f64) -> (f64, f64) {
    let df = d as f64;
    let x_plus = (1.0 - p) / (df * df + df) + p / (df * df - df);
    let x_minus = (1.0 - p) / (df * df + df) - p / (df * df - df);
    (x_plus, df * x_minus + x_plus)
}

/// Isotropic state: `c_ij = (1−λ)/d²`, `a_ij = λ/d + δ_ij (1−λ)/d²`.
/// Trace 1; positive iff `−1/(d²−1) ≤ λ ≤ 1`, PPT iff `λ ≤ 1/(d+1)`.
pub fn isotropic(d: usize, lambda: f64) -> Result<IsotropicLikeState, FamilyError> {
    require_d(d)?;
    let df = d as f64;
    let diag_extra = (1.0 - lambda) / (df * df);
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                a.set(i, i, Complex64::new(lambda / df + diag_extra, 0.0));
            } else {
                a.set(i, j, Complex64::new(lambda / df, 0.0));
                c[i * d + j] = diag_extra;
            }
        }
    }
    Ok(IsotropicLikeState::new(d, a, c).expect("isotropic parameters are valid"))
}

pub fn isotropic_ppt_threshold(d: usize) -> f64 {
    1.0 / (d as f64 + 1.0)
}

pub fn isotropic_positive_window(d: usize) -> (f64, f64) {
    let df = d as f64;
    (-1.0 / (df * df - 1.0), 1.0)
}

/// Two-parameter mixture of `Σ a |ii⟩⟨ii|` with the antisymmetric (`weight b`
/// per pair) and symmetric (`weight c`) two-level projectors
/// `|ψ∓_ij⟩⟨ψ∓_ij|`, `ψ±_ij = (|ij⟩ ± |ji⟩)/√2`. The unit-trace condition
/// fixes `a = 1/d − (b+c)(d−1)/2`. Werner-like with `b_ii = a`,
/// `b_ij = (c−b)/2`, `c_ij = (c+b)/2`; PPT iff `c+b ≥ 0`,
/// `1 − d(d−1)b ≥ 0` and `2 − d(d−2)b − d²c ≥ 0` (the last two are the
/// scaled eigenvalues of `b̂`).
pub fn shor_family(d: usize, b: f64, c: f64) -> Result<WernerLikeState, FamilyError> {
    require_d(d)?;
    let df = d as f64;
    let a = 1.0 / df - (b + c) * (df - 1.0) / 2.0;
    let mut bm = DenseMatrix::zeros(d, d);
    let mut cm = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                bm.set(i, i, Complex64::new(a, 0.0));
            } else {
                bm.set(i, j, Complex64::new((c - b) / 2.0, 0.0));
                cm[i * d + j] = (c + b) / 2.0;
            }
        }
    }
    Ok(WernerLikeState::new(d, bm, cm).expect("shor parameters are valid"))
}

/// The three analytic PPT slack expressions for [`shor_family`].
pub fn shor_ppt_slacks(d: usize, b: f64, c: f64) -> [f64; 3] {
    let df = d as f64;
    [
        c + b,
        1.0 - df * (df - 1.0) * b,
        2.0 - df * (df - 2.0) * b - df * df * c,
    ]
}

/// 3⊗3 state `σ_α = (2/7) P⁺ + (α/7) σ₊ + ((5−α)/7) σ₋`: isotropic-like
/// with `a_ij = 2/21`, cyclic `c_{i,i⊕1} = α/21`, `c_{i⊕1,i} = (5−α)/21`.
/// Trace 1; within the documented domain `2 ≤ α ≤ 5` it is positive
/// everywhere and PPT iff `α ≤ 4` (pair slack `α(5−α) − 4` over 441).
pub fn horodecki_sigma(alpha: f64) -> IsotropicLikeState {
    let d = 3;
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, Complex64::new(2.0 / 21.0, 0.0));
        }
    }
    for i in 1..=d {
        let fwd = wrap(d, i, 1);
        c[(i - 1) * d + (fwd - 1)] = alpha / 21.0;
        c[(fwd - 1) * d + (i - 1)] = (5.0 - alpha) / 21.0;
    }
    IsotropicLikeState::new(d, a, c).expect("sigma_alpha parameters are valid")
}

pub const HORODECKI_SIGMA_PPT_THRESHOLD: f64 = 4.0;

/// Cyclic-shift diagonal generalization of `σ_α`:
/// `ρ = a₁ P̃⁺/d + Σ_i Σ_{j=2..d} (a_j/d) |i, i⊕(j−1)⟩⟨i, i⊕(j−1)|` with
/// weights summing to 1 (`P̃⁺ = Σ_{ij}|ii⟩⟨jj|`). Isotropic-like with
/// `a_ij = a₁/d` and `c_{i,i⊕(j−1)} = a_j/d`; trace 1. PPT iff
/// `a_{j} a_{d+2−j} ≥ a₁²` for `j = 2..d` (each pair slack is that product
/// difference over d²).
pub fn diagonal_family(d: usize, weights: &[f64]) -> Result<IsotropicLikeState, FamilyError> {
    require_d(d)?;
    if weights.len() != d
        || weights.iter().any(|w| !w.is_finite() || *w < 0.0)
        || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12
    {
        return Err(FamilyError::BadWeights);
    }
    let df = d as f64;
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, Complex64::new(weights[0] / df, 0.0));
        }
    }
    for i in 1..=d {
        for j in 2..=d {
            let col = wrap(d, i, j - 1);
            c[(i - 1) * d + (col - 1)] = weights[j - 1] / df;
        }
    }
    Ok(IsotropicLikeState::new(d, a, c).expect("diagonal family parameters are valid"))
}

/// The advisory sufficient PPT predicate for [`diagonal_family`]:
/// `a_{i+1} a_{d−i+1} ≥ a₁²` for `i = 1..d−1`. Under this crate's cyclic
/// reading it coincides with the exact pair criterion, but the eigen oracle
/// remains the verdict authority.
pub fn diagonal_family_ppt_sufficient(weights: &[f64]) -> bool {
    let d = weights.len();
    let a1_sq = weights[0] * weights[0];
    (1..d).all(|i| weights[i] * weights[d - i] >= a1_sq)
}

/// Størmer's positive PPT matrix generalized to d⊗d: `a_ij = α` and free
/// upper-triangle `c_ij > 0` with `c_ji = α²/c_ij`, so every pair slack
/// `c_ij c_ji − |a_ij|²` is zero. Un-normalized.
///
/// `c_upper` is row-major over pairs `i < j`, length `d(d−1)/2`. The
/// original 3⊗3 matrix is `stormer(3, &[2μ; 3], 1)`.
pub fn stormer(d: usize, c_upper: &[f64], alpha: f64) -> Result<IsotropicLikeState, FamilyError> {
    require_d(d)?;
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(FamilyError::BadParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let n_pairs = d * (d - 1) / 2;
    if c_upper.len() != n_pairs {
        return Err(FamilyError::BadParameter(format!(
            "expected {n_pairs} upper-triangle c entries, got {}",
            c_upper.len()
        )));
    }
    if c_upper.iter().any(|x| *x <= 0.0 || !x.is_finite()) {
        return Err(FamilyError::BadParameter(
            "upper-triangle c entries must be positive".into(),
        ));
    }
    let mut a = DenseMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, Complex64::new(alpha, 0.0));
        }
    }
    let mut c = vec![0.0; d * d];
    let mut k = 0;
    for i in 1..=d {
        for j in i + 1..=d {
            c[(i - 1) * d + (j - 1)] = c_upper[k];
            c[(j - 1) * d + (i - 1)] = alpha * alpha / c_upper[k];
            k += 1;
        }
    }
    Ok(IsotropicLikeState::new(d, a, c).expect("stormer parameters are valid"))
}

/// Ha's one-parameter family: `a_ij = 1`, `c_{i⊕1,i} = λ`, `c_{i,i⊕1} = λ'`,
/// remaining `c_ij = 1`, with `λ = (γ² + d − 1)/d` and `λ' = (γ⁻² + d − 1)/d`.
/// Positive and PPT for every `γ > 0` since `λλ' ≥ 1`. Un-normalized.
pub fn ha_gamma(d: usize, gamma: f64) -> Result<IsotropicLikeState, FamilyError> {
    require_d(d)?;
    if gamma <= 0.0 || !gamma.is_finite() {
        return Err(FamilyError::BadParameter(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let df = d as f64;
    let lambda = (gamma * gamma + df - 1.0) / df;
    let lambda_prime = (1.0 / (gamma * gamma) + df - 1.0) / df;
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, Complex64::new(1.0, 0.0));
            if i != j {
                c[i * d + j] = 1.0;
            }
        }
    }
    for i in 1..=d {
        let fwd = wrap(d, i, 1);
        c[(fwd - 1) * d + (i - 1)] = lambda;
        c[(i - 1) * d + (fwd - 1)] = lambda_prime;
    }
    Ok(IsotropicLikeState::new(d, a, c).expect("ha_gamma parameters are valid"))
}

/// The `(λ, λ')` pair of [`ha_gamma`].
pub fn ha_gamma_lambdas(d: usize, gamma: f64) -> (f64, f64) {
    let df = d as f64;
    (
        (gamma * gamma + df - 1.0) / df,
        (1.0 / (gamma * gamma) + df - 1.0) / df,
    )
}

/// Ha's second family `B_s = Σ_i (|u_i⟩⟨u_i| + |z_i⟩⟨z_i|)` with `u_i = |ii⟩`
/// and `z_i = s⁻¹|i⊕1, i⟩ + s|i, i⊕1⟩`. Werner-like; for `d = 3` the band
/// `b̂ = I + P + Pᵀ` is the all-ones matrix and the state is PPT for every
/// `s`, while for `d ≥ 4` that circulant has negative eigenvalues
/// (`1 + 2cos(2πk/d)`) and PPT fails. Un-normalized. Built by accumulating
/// the projectors, which also handles the `d = 2` index collisions.
pub fn ha_bs(d: usize, s: f64) -> Result<WernerLikeState, FamilyError> {
    require_d(d)?;
    if s <= 0.0 || !s.is_finite() {
        return Err(FamilyError::BadParameter(format!(
            "s must be positive, got {s}"
        )));
    }
    let mut b = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 1..=d {
        let f = wrap(d, i, 1);
        // |u_i⟩⟨u_i|
        let bii = b.get(i - 1, i - 1) + Complex64::new(1.0, 0.0);
        b.set(i - 1, i - 1, bii);
        // |z_i⟩⟨z_i| cross terms land on b, diagonal terms on c.
        let bf = b.get(i - 1, f - 1) + Complex64::new(1.0, 0.0);
        b.set(i - 1, f - 1, bf);
        let bb = b.get(f - 1, i - 1) + Complex64::new(1.0, 0.0);
        b.set(f - 1, i - 1, bb);
        c[(i - 1) * d + (f - 1)] += s * s;
        c[(f - 1) * d + (i - 1)] += 1.0 / (s * s);
    }
    Ok(WernerLikeState::new(d, b, c).expect("ha_bs parameters are valid"))
}

/// PPT state from a normalized complex vector: `a_ij = λ_i conj(λ_j)`,
/// `c_ij = |λ_i conj(λ_j)|`. `â` is rank ≤ 1 PSD and every pair slack is
/// exactly zero.
pub fn lambda_vector(lambda: &[Complex64]) -> Result<IsotropicLikeState, FamilyError> {
    let d = lambda.len();
    require_d(d)?;
    let norm_sq: f64 = lambda.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq.sqrt() - 1.0).abs() > 1e-12 {
        return Err(FamilyError::NotNormalized);
    }
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = lambda[i] * lambda[j].conj();
            a.set(i, j, prod);
            if i != j {
                c[i * d + j] = prod.norm();
            }
        }
    }
    Ok(IsotropicLikeState::new(d, a, c).expect("lambda parameters are valid"))
}

/// The 3⊗3 Horodecki matrix split `ρ_a = ρ'_a + ρ''_a` with
/// `ρ'_a = αa (Σ_{ij}|ii⟩⟨jj| + Σ_{i≠j}|ij⟩⟨ij|)`,
/// `ρ''_a = (α/2)√(1−a²) (|31⟩⟨33| + |33⟩⟨31|)`, `α = 1/(8a+1)`.
/// `ρ'_a` is isotropic-like; `ρ''_a` breaks the torus symmetry, so the sum
/// is not a class member. Returned exactly as printed (its trace is
/// `9a/(8a+1)`, not 1; see [`horodecki_rho_a_normalized`]).
pub fn horodecki_rho_a(a: f64) -> Result<DenseMatrix, FamilyError> {
    let (prime, double_prime) = horodecki_rho_a_parts(a)?;
    Ok(prime.add(&double_prime))
}

/// The `(ρ'_a, ρ''_a)` split of [`horodecki_rho_a`].
pub fn horodecki_rho_a_parts(a: f64) -> Result<(DenseMatrix, DenseMatrix), FamilyError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(FamilyError::BadParameter(format!(
            "a must lie in [0, 1], got {a}"
        )));
    }
    let d = 3;
    let alpha = 1.0 / (8.0 * a + 1.0);
    let mut prime = DenseMatrix::zeros(9, 9);
    for i in 1..=d {
        for j in 1..=d {
            prime.set(
                flat_index(d, i, i),
                flat_index(d, j, j),
                Complex64::new(alpha * a, 0.0),
            );
            if i != j {
                prime.set(
                    flat_index(d, i, j),
                    flat_index(d, i, j),
                    Complex64::new(alpha * a, 0.0),
                );
            }
        }
    }
    let mut double_prime = DenseMatrix::zeros(9, 9);
    let w = 0.5 * alpha * (1.0 - a * a).sqrt();
    double_prime.set(
        flat_index(d, 3, 1),
        flat_index(d, 3, 3),
        Complex64::new(w, 0.0),
    );
    double_prime.set(
        flat_index(d, 3, 3),
        flat_index(d, 3, 1),
        Complex64::new(w, 0.0),
    );
    Ok((prime, double_prime))
}

/// [`horodecki_rho_a`] divided by its trace.
pub fn horodecki_rho_a_normalized(a: f64) -> Result<DenseMatrix, FamilyError> {
    let rho = horodecki_rho_a(a)?;
    let t = rho.trace().re;
    if t <= 0.0 {
        return Err(FamilyError::BadParameter(format!(
            "rho_a has non-positive trace {t}"
        )));
    }
    Ok(rho.scaled(Complex64::new(1.0 / t, 0.0)))
}

/// Scalar or vector family parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

/// Name, dimension and parameter record of a constructed family member.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDescriptor {
    pub name: String,
    pub d: usize,
    pub params: BTreeMap<String, ParamValue>,
    pub normalized: bool,
}

/// A family plus its parameters; the uniform entry point used by the CLI
/// and scan plumbing.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Werner {
        d: usize,
        p: f64,
    },
    Isotropic {
        d: usize,
        lambda: f64,
    },
    ShorFamily {
        d: usize,
        b: f64,
        c: f64,
    },
    HorodeckiSigma {
        alpha: f64,
    },
    DiagonalFamily {
        d: usize,
        weights: Vec<f64>,
    },
    Stormer {
        d: usize,
        c_upper: Vec<f64>,
        alpha: f64,
    },
    HaGamma {
        d: usize,
        gamma: f64,
    },
    HaBs {
        d: usize,
        s: f64,
    },
    LambdaVector {
        lambda: Vec<Complex64>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Werner { .. } => "werner",
            Family::Isotropic { .. } => "isotropic",
            Family::ShorFamily { .. } => "shor-family",
            Family::HorodeckiSigma { .. } => "horodecki-sigma",
            Family::DiagonalFamily { .. } => "diagonal-family",
            Family::Stormer { .. } => "stormer",
            Family::HaGamma { .. } => "ha-gamma",
            Family::HaBs { .. } => "ha-bs",
            Family::LambdaVector { .. } => "lambda-vector",
        }
    }

    pub fn build(&self) -> Result<ClassState, FamilyError> {
        Ok(match self {
            Family::Werner { d, p } => ClassState::Werner(werner(*d, *p)?),
            Family::Isotropic { d, lambda } => ClassState::Isotropic(isotropic(*d, *lambda)?),
            Family::ShorFamily { d, b, c } => ClassState::Werner(shor_family(*d, *b, *c)?),
            Family::HorodeckiSigma { alpha } => ClassState::Isotropic(horodecki_sigma(*alpha)),
            Family::DiagonalFamily { d, weights } => {
                ClassState::Isotropic(diagonal_family(*d, weights)?)
            }
            Family::Stormer { d, c_upper, alpha } => {
                ClassState::Isotropic(stormer(*d, c_upper, *alpha)?)
            }
            Family::HaGamma { d, gamma } => ClassState::Isotropic(ha_gamma(*d, *gamma)?),
            Family::HaBs { d, s } => ClassState::Werner(ha_bs(*d, *s)?),
            Family::LambdaVector { lambda } => ClassState::Isotropic(lambda_vector(lambda)?),
        })
    }

    /// Name of the single scannable scalar parameter, if the family has one.
    pub fn scan_param(&self) -> Option<&'static str> {
        match self {
            Family::Werner { .. } => Some("p"),
            Family::Isotropic { .. } => Some("lambda"),
            Family::ShorFamily { .. } => Some("b"),
            Family::HorodeckiSigma { .. } => Some("alpha"),
            Family::Stormer { .. } => Some("alpha"),
            Family::HaGamma { .. } => Some("gamma"),
            Family::HaBs { .. } => Some("s"),
            Family::DiagonalFamily { .. } | Family::LambdaVector { .. } => None,
        }
    }

    /// Returns a copy with the named scalar parameter replaced.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Family, FamilyError> {
        let mut out = self.clone();
        match (&mut out, name) {
            (Family::Werner { p, .. }, "p") => *p = value,
            (Family::Isotropic { lambda, .. }, "lambda") => *lambda = value,
            (Family::ShorFamily { b, .. }, "b") => *b = value,
            (Family::ShorFamily { c, .. }, "c") => *c = value,
            (Family::HorodeckiSigma { alpha }, "alpha") => *alpha = value,
            (Family::Stormer { alpha, .. }, "alpha") => *alpha = value,
            (Family::HaGamma { gamma, .. }, "gamma") => *gamma = value,
            (Family::HaBs { s, .. }, "s") => *s = value,
            _ => {
                return Err(FamilyError::BadParameter(format!(
                    "family {} has no scalar parameter {name}",
                    self.name()
                )))
            }
        }
        Ok(out)
    }

    /// Analytic PPT threshold on the scannable parameter, where one exists.
    pub fn ppt_threshold(&self) -> Option<f64> {
        match self {
            Family::Werner { .. } => Some(0.5),
            Family::Isotropic { d, .. } => Some(isotropic_ppt_threshold(*d)),
            Family::HorodeckiSigma { .. } => Some(HORODECKI_SIGMA_PPT_THRESHOLD),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        let mut params = BTreeMap::new();
        let (d, normalized) = match self {
            Family::Werner { d, p } => {
                params.insert("p".into(), ParamValue::Scalar(*p));
                (*d, true)
            }
            Family::Isotropic { d, lambda } => {
                params.insert("lambda".into(), ParamValue::Scalar(*lambda));
                (*d, true)
            }
            Family::ShorFamily { d, b, c } => {
                params.insert("b".into(), ParamValue::Scalar(*b));
                params.insert("c".into(), ParamValue::Scalar(*c));
                (*d, true)
            }
            Family::HorodeckiSigma { alpha } => {
                params.insert("alpha".into(), ParamValue::Scalar(*alpha));
                (3, true)
            }
            Family::DiagonalFamily { d, weights } => {
                params.insert("weights".into(), ParamValue::Vector(weights.clone()));
                (*d, true)
            }
            Family::Stormer { d, c_upper, alpha } => {
                params.insert("alpha".into(), ParamValue::Scalar(*alpha));
                params.insert("c_upper".into(), ParamValue::Vector(c_upper.clone()));
                (*d, false)
            }
            Family::HaGamma { d, gamma } => {
                params.insert("gamma".into(), ParamValue::Scalar(*gamma));
                (*d, false)
            }
            Family::HaBs { d, s } => {
                params.insert("s".into(), ParamValue::Scalar(*s));
                (*d, false)
            }
            Family::LambdaVector { lambda } => {
                let flat: Vec<f64> = lambda.iter().flat_map(|z| [z.re, z.im]).collect();
                params.insert("lambda".into(), ParamValue::Vector(flat));
                (lambda.len(), false)
            }
        };
        FamilyDescriptor {
            name: self.name().to_string(),
            d,
            params,
            normalized,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, is_psd, partial_transpose_dense};
    use crate::sampling::SeededSampler;
    use crate::states::{check_torus_invariance, project_isotropic, InvarianceMode};

    const TOL: f64 = 1e-9;

    #[test]
    fn werner_endpoints_and_thresholds() {
        // p = 0 is Q⁺ for d = 2: diagonal |ii⟩ entries 1/3, cross 1/6.
        let q_plus = werner(2, 0.0).unwrap();
        assert!((q_plus.b_entry(1, 1).re - 1.0 / 3.0).abs() < 1e-15);
        assert!((q_plus.b_entry(1, 2).re - 1.0 / 6.0).abs() < 1e-15);
        assert!((q_plus.c_entry(1, 2) - 1.0 / 6.0).abs() < 1e-15);
        assert!(q_plus.check_positive(TOL).verdict);
        assert!(q_plus.check_ppt(TOL).verdict);

        // PPT boundary at p = 1/2: d·x₋ + x₊ = 0.
        let (_, low) = werner_b_spectrum(2, 0.5);
        assert!(low.abs() < 1e-15);

        // p = 0.6: positive but not PPT.
        let w = werner(3, 0.6).unwrap();
        assert!(w.check_positive(TOL).verdict);
        assert!(!w.check_ppt(TOL).verdict);
        let oracle = is_psd(&partial_transpose_dense(&w.to_density(), 3).unwrap(), TOL).unwrap();
        assert!(!oracle.is_psd);

        // Trace 1 and two-point b̂ spectrum {x₊ (×2), d·x₋ + x₊}.
        let w = werner(3, 0.3).unwrap();
        assert!((w.state_trace() - 1.0).abs() < 1e-12);
        let eig = hermitian_eigenvalues(w.b()).unwrap();
        let (x_plus, other) = werner_b_spectrum(3, 0.3);
        let mut expected = [x_plus, x_plus, other];
        expected.sort_by(f64::total_cmp);
        for (lhs, rhs) in eig.iter().zip(expected) {
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn isotropic_thresholds() {
        for d in 2..=4usize {
            let (lo, hi) = isotropic_positive_window(d);
            let eps = 1e-6;
            assert!(isotropic(d, lo + eps).unwrap().check_positive(TOL).verdict);
            assert!(!isotropic(d, lo - eps).unwrap().check_positive(TOL).verdict);
            assert!(isotropic(d, hi - eps).unwrap().check_positive(TOL).verdict);
            assert!(!isotropic(d, hi + eps).unwrap().check_positive(TOL).verdict);

            let thr = isotropic_ppt_threshold(d);
            assert!(isotropic(d, thr - eps).unwrap().check_ppt(TOL).verdict);
            assert!(!isotropic(d, thr + eps).unwrap().check_ppt(TOL).verdict);
            assert!((isotropic(d, 0.3).unwrap().state_trace() - 1.0).abs() < 1e-12);
        }

        // Boundary pair slack at λ = 1/(d+1) vanishes: (1/12)² − (1/12)² for d = 3.
        let boundary = isotropic(3, 0.25).unwrap();
        let report = boundary.check_ppt(TOL);
        let pair = report
            .slacks
            .iter()
            .find(|(l, _)| l == "pair[1,2]")
            .unwrap()
            .1;
        assert!(pair.abs() < 1e-16);

        // λ = 1 (d = 2) is the pure maximally entangled state: slack −1/4.
        let pure = isotropic(2, 1.0).unwrap();
        let report = pure.check_ppt(TOL);
        let pair = report
            .slacks
            .iter()
            .find(|(l, _)| l == "pair[1,2]")
            .unwrap()
            .1;
        assert!((pair + 0.25).abs() < 1e-15);
        assert!(!report.verdict);

        // λ = 0 is maximally mixed: PPT.
        assert!(isotropic(4, 0.0).unwrap().check_ppt(TOL).verdict);
    }

    #[test]
    fn isotropic_rank_one_at_lambda_one() {
        // At λ = 1 the density is the maximally entangled projector.
        let rho = isotropic(3, 1.0).unwrap().to_density();
        let report = is_psd(&rho, TOL).unwrap();
        assert!(report.is_psd && report.min_eigenvalue >= -1e-9);
        let eig = hermitian_eigenvalues(&rho).unwrap();
        assert!((eig[8] - 1.0).abs() < 1e-12);
        assert!(eig[7].abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_maximally_entangled_spectrum() {
        // (1 ⊗ τ)|P⁺⟩⟨P⁺| is the flip over d: eigenvalues ±1/d.
        let rho = isotropic(2, 1.0).unwrap().to_density();
        let pt = partial_transpose_dense(&rho, 2).unwrap();
        let eig = hermitian_eigenvalues(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (lhs, rhs) in eig.iter().zip(expect) {
            assert!((lhs - rhs).abs() < 1e-13);
        }
    }

    #[test]
    fn shor_family_inequalities_match_oracle() {
        let d = 3;
        // Zero parameters: diagonal state, trivially PPT.
        let zero = shor_family(d, 0.0, 0.0).unwrap();
        assert!((zero.b_entry(1, 1).re - 1.0 / 3.0).abs() < 1e-15);
        assert!(zero.check_ppt(TOL).verdict);

        // b = 1/6 puts b̂ on its singular line 1 − d(d−1)b = 0.
        let singular = shor_family(d, 1.0 / 6.0, 0.05).unwrap();
        let eig = hermitian_eigenvalues(singular.b()).unwrap();
        assert!(eig[0].abs() < 1e-12);

        let mut sampler = SeededSampler::new(77);
        for _ in 0..50 {
            let b = sampler.uniform_in(-0.3, 0.4);
            let c = sampler.uniform_in(-0.3, 0.4);
            let state = shor_family(d, b, c).unwrap();
            assert!((state.state_trace() - 1.0).abs() < 1e-12);
            let slacks = shor_ppt_slacks(d, b, c);
            let analytic = slacks.iter().all(|s| *s >= -TOL);
            let oracle = is_psd(
                &partial_transpose_dense(&state.to_density(), d).unwrap(),
                TOL,
            )
            .unwrap();
            if analytic != oracle.is_psd {
                let margin = slacks
                    .iter()
                    .fold(f64::INFINITY, |m, s| m.min(s.abs()))
                    .min(oracle.min_eigenvalue.abs());
                assert!(margin <= 1e-8);
            }
        }
    }

    #[test]
    fn horodecki_sigma_pattern_and_threshold() {
        let s = horodecki_sigma(4.0);
        assert!((s.state_trace() - 1.0).abs() < 1e-12);
        assert_eq!(s.a_entry(2, 3), Complex64::new(2.0 / 21.0, 0.0));
        assert!((s.c_entry(1, 2) - 4.0 / 21.0).abs() < 1e-15);
        assert!((s.c_entry(2, 1) - 1.0 / 21.0).abs() < 1e-15);

        // α = 4 sits on the boundary: pair slack exactly (α(5−α) − 4)/441 = 0.
        let report = s.check_ppt(TOL);
        let pair = report
            .slacks
            .iter()
            .find(|(l, _)| l == "pair[1,2]")
            .unwrap()
            .1;
        assert!(pair.abs() < 1e-16);

        // α = 2 PPT with slack 2/441, α = 5 not PPT with slack −4/441.
        let ppt = horodecki_sigma(2.0).check_ppt(TOL);
        let pair = ppt.slacks.iter().find(|(l, _)| l == "pair[1,2]").unwrap().1;
        assert!((pair - 2.0 / 441.0).abs() < 1e-15 && ppt.verdict);
        let not_ppt = horodecki_sigma(5.0).check_ppt(TOL);
        let pair = not_ppt
            .slacks
            .iter()
            .find(|(l, _)| l == "pair[1,2]")
            .unwrap()
            .1;
        assert!((pair + 4.0 / 441.0).abs() < 1e-15 && !not_ppt.verdict);

        // x-block at α = 4, pair (1,2): [[4/21, 2/21], [2/21, 1/21]], det 0.
        let blocks = s.x_blocks();
        let xb = &blocks[0];
        assert_eq!(xb.block.get(0, 0).re, 4.0 / 21.0);
        assert_eq!(xb.block.get(0, 1).re, 2.0 / 21.0);
        assert_eq!(xb.block.get(1, 1).re, 1.0 / 21.0);
        let det = xb.block.get(0, 0).re * xb.block.get(1, 1).re - xb.block.get(0, 1).norm_sqr();
        assert!(det.abs() < 1e-18);
    }

    #[test]
    fn diagonal_family_cases() {
        // Pure P⁺ weight: not PPT.
        let p_plus = diagonal_family(3, &[1.0, 0.0, 0.0]).unwrap();
        assert!((p_plus.state_trace() - 1.0).abs() < 1e-12);
        assert!((p_plus.a_entry(1, 2).re - 1.0 / 3.0).abs() < 1e-15);
        assert!(!p_plus.check_ppt(TOL).verdict);

        // Diagonal-only weights: separable diagonal state, PPT.
        let diag = diagonal_family(3, &[0.0, 0.5, 0.5]).unwrap();
        assert!(diag.check_ppt(TOL).verdict);
        assert!(diag.check_positive(TOL).verdict);

        // Uniform weights: PPT boundary, sufficient predicate tight.
        let uniform = diagonal_family(3, &[1.0 / 3.0; 3]).unwrap();
        assert!(uniform.check_ppt(TOL).verdict);
        assert!(diagonal_family_ppt_sufficient(&[1.0 / 3.0; 3]));
        let oracle = is_psd(
            &partial_transpose_dense(&uniform.to_density(), 3).unwrap(),
            TOL,
        )
        .unwrap();
        assert!(oracle.is_psd);

        // σ_α embeds as weights (2/7, α/7, (5−α)/7).
        let alpha = 3.3;
        let via_weights =
            diagonal_family(3, &[2.0 / 7.0, alpha / 7.0, (5.0 - alpha) / 7.0]).unwrap();
        let direct = horodecki_sigma(alpha);
        let diff = via_weights.to_density().sub(&direct.to_density());
        assert!(diff.frobenius_norm() < 1e-15);

        // Analytic verdict matches the dense oracle over random weights.
        let mut sampler = SeededSampler::new(404);
        for d in [3usize, 4] {
            for _ in 0..25 {
                let raw: Vec<f64> = (0..d).map(|_| sampler.uniform_in(0.0, 1.0)).collect();
                let total: f64 = raw.iter().sum();
                let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
                let state = diagonal_family(d, &weights).unwrap();
                assert!((state.state_trace() - 1.0).abs() < 1e-12);
                let analytic = state.check_ppt(TOL);
                let oracle = is_psd(
                    &partial_transpose_dense(&state.to_density(), d).unwrap(),
                    TOL,
                )
                .unwrap();
                if analytic.verdict != oracle.is_psd {
                    assert!(analytic.min_slack().abs().min(oracle.min_eigenvalue.abs()) <= 1e-8);
                }
            }
        }

        assert_eq!(
            diagonal_family(3, &[0.5, 0.2, 0.2]),
            Err(FamilyError::BadWeights)
        );
        assert_eq!(
            diagonal_family(3, &[-0.1, 0.6, 0.5]),
            Err(FamilyError::BadWeights)
        );
    }

    #[test]
    fn stormer_slacks_exactly_zero() {
        let s = stormer(3, &[2.0, 2.0, 2.0], 1.0).unwrap();
        assert_eq!(s.c_entry(1, 2), 2.0);
        assert_eq!(s.c_entry(2, 1), 0.5);
        for (label, slack) in &s.check_ppt(TOL).slacks {
            if label.starts_with("pair") {
                assert_eq!(*slack, 0.0, "{label}");
            }
        }
        assert!(s.check_positive(TOL).verdict && s.check_ppt(TOL).verdict);

        // d = 2 raw trace: Tr â + Σc = 2 + 2 = 4.
        let s2 = stormer(2, &[1.0], 1.0).unwrap();
        assert_eq!(s2.state_trace(), 4.0);
        assert!((s2.normalize().unwrap().state_trace() - 1.0).abs() < 1e-12);

        assert!(matches!(
            stormer(3, &[1.0, -1.0, 1.0], 1.0),
            Err(FamilyError::BadParameter(_))
        ));
        assert!(matches!(
            stormer(3, &[1.0, 1.0, 1.0], 0.0),
            Err(FamilyError::BadParameter(_))
        ));
    }

    #[test]
    fn ha_gamma_family() {
        // γ = 1: λ = λ' = 1, trace 9 for d = 3, normalized entries 1/9.
        let s = ha_gamma(3, 1.0).unwrap();
        assert_eq!(s.state_trace(), 9.0);
        let n = s.normalize().unwrap();
        assert!((n.a_entry(1, 2).re - 1.0 / 9.0).abs() < 1e-15);
        assert!((n.c_entry(1, 2) - 1.0 / 9.0).abs() < 1e-15);

        // γ = 2 (d = 3): λ = 2, λ' = 3/4, λλ' ≥ 1 so PPT.
        let (l, lp) = ha_gamma_lambdas(3, 2.0);
        assert!((l - 2.0).abs() < 1e-15 && (lp - 0.75).abs() < 1e-15);
        assert!(ha_gamma(3, 2.0).unwrap().check_ppt(TOL).verdict);

        // λλ' ≥ 1 across a log grid.
        for k in 0..50 {
            let gamma = 10f64.powf(-2.0 + 4.0 * k as f64 / 49.0);
            let (l, lp) = ha_gamma_lambdas(4, gamma);
            assert!(l * lp - 1.0 >= -1e-15);
            assert!(ha_gamma(4, gamma).unwrap().check_ppt(TOL).verdict);
        }

        // γ ↔ 1/γ swaps λ and λ' (c transposed).
        let fwd = ha_gamma(3, 1.7).unwrap();
        let bwd = ha_gamma(3, 1.0 / 1.7).unwrap();
        for i in 1..=3usize {
            for j in 1..=3usize {
                if i != j {
                    assert!((fwd.c_entry(i, j) - bwd.c_entry(j, i)).abs() < 1e-12);
                }
            }
        }

        assert!(matches!(
            ha_gamma(3, 0.0),
            Err(FamilyError::BadParameter(_))
        ));
    }

    #[test]
    fn ha_bs_family() {
        // d = 3, s = 1: b̂ is the all-ones matrix (PSD, rank 1); PPT.
        let s = ha_bs(3, 1.0).unwrap();
        for i in 1..=3usize {
            for j in 1..=3usize {
                assert_eq!(s.b_entry(i, j), Complex64::new(1.0, 0.0));
            }
        }
        let eig = hermitian_eigenvalues(s.b()).unwrap();
        assert!(eig[0].abs() < 1e-12 && (eig[2] - 3.0).abs() < 1e-12);
        assert!(s.check_ppt(TOL).verdict);

        // d = 3, s = 2: c band {4, 1/4}, positivity pair slack 0.
        let s = ha_bs(3, 2.0).unwrap();
        assert_eq!(s.c_entry(1, 2), 4.0);
        assert_eq!(s.c_entry(2, 1), 0.25);
        assert!(s.check_positive(TOL).verdict);
        let report = s.check_positive(TOL);
        let pair = report
            .slacks
            .iter()
            .find(|(l, _)| l == "pair[1,2]")
            .unwrap()
            .1;
        assert!(pair.abs() < 1e-15);

        // d = 4: the circulant with first row (1,1,0,1) has eigenvalue −1,
        // so PPT fails; the analytic verdict must match the dense oracle.
        let s4 = ha_bs(4, 1.0).unwrap();
        assert_eq!(s4.b_entry(1, 2), Complex64::new(1.0, 0.0));
        assert_eq!(s4.b_entry(1, 3), Complex64::new(0.0, 0.0));
        assert_eq!(s4.b_entry(1, 4), Complex64::new(1.0, 0.0));
        let eig = hermitian_eigenvalues(s4.b()).unwrap();
        assert!((eig[0] + 1.0).abs() < 1e-12);
        let analytic = s4.check_ppt(TOL);
        let oracle = is_psd(&partial_transpose_dense(&s4.to_density(), 4).unwrap(), TOL).unwrap();
        assert!(!analytic.verdict && !oracle.is_psd);

        // Positivity holds for any s (sum of projectors), and the raw state
        // normalizes to unit trace.
        for k in 0..20 {
            let sv = 10f64.powf(-1.0 + 2.0 * k as f64 / 19.0);
            let state = ha_bs(4, sv).unwrap();
            assert!(state.check_positive(TOL).verdict);
            assert!((state.normalize().unwrap().state_trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_vector_states() {
        // Basis vector: pure product |11⟩⟨11|.
        let e1 = lambda_vector(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let rho = e1.to_density();
        assert_eq!(rho.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(rho.trace(), Complex64::new(1.0, 0.0));

        // Uniform vector: a_ij = c_ij = 1/3, PPT with zero slacks.
        let u = 1.0 / 3f64.sqrt();
        let s = lambda_vector(&[Complex64::new(u, 0.0); 3]).unwrap();
        assert!((s.a_entry(1, 2).re - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.c_entry(1, 2) - 1.0 / 3.0).abs() < 1e-15);
        let report = s.check_ppt(TOL);
        assert!(report.verdict);
        for (label, slack) in &report.slacks {
            if label.starts_with("pair") {
                assert!(slack.abs() <= 1e-14, "{label}: {slack}");
            }
        }

        // (1, i)/√2: a₁₂ = −i/2, c₁₂ = c₂₁ = 1/2.
        let v = 1.0 / 2f64.sqrt();
        let s = lambda_vector(&[Complex64::new(v, 0.0), Complex64::new(0.0, v)]).unwrap();
        assert!((s.a_entry(1, 2) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!((s.c_entry(1, 2) - 0.5).abs() < 1e-15);
        assert!(s.check_ppt(TOL).verdict);

        assert_eq!(
            lambda_vector(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]),
            Err(FamilyError::NotNormalized)
        );
    }

    #[test]
    fn horodecki_rho_a_symmetry_and_projection() {
        // a = 1: ρ'' vanishes, the matrix is torus-invariant and projection
        // round-trips.
        let rho = horodecki_rho_a(1.0).unwrap();
        assert!(check_torus_invariance(&rho, 3, InvarianceMode::UUStar, 20, 7).unwrap());
        let projected = project_isotropic(&rho, 3).unwrap();
        assert!(projected.to_density().sub(&rho).frobenius_norm() < 1e-15);

        // a = 0.5: symmetry broken, projection drops exactly ρ''.
        let rho = horodecki_rho_a(0.5).unwrap();
        assert!(!check_torus_invariance(&rho, 3, InvarianceMode::UUStar, 20, 7).unwrap());
        let (prime, double_prime) = horodecki_rho_a_parts(0.5).unwrap();
        let projected = project_isotropic(&rho, 3).unwrap();
        assert!(projected.to_density().sub(&prime).frobenius_norm() <= 1e-12);
        let alpha = 1.0 / (8.0 * 0.5 + 1.0);
        let expected = 0.5 * alpha * (1.0 - 0.25f64).sqrt() * 2f64.sqrt();
        assert!((double_prime.frobenius_norm() - expected).abs() < 1e-15);

        // Printed trace is 9a/(8a+1); the normalized variant fixes it.
        assert!((rho.trace().re - 9.0 * 0.5 / 5.0).abs() < 1e-15);
        let n = horodecki_rho_a_normalized(0.5).unwrap();
        assert!((n.trace().re - 1.0).abs() < 1e-14);

        assert!(matches!(
            horodecki_rho_a(1.5),
            Err(FamilyError::BadParameter(_))
        ));
    }

    #[test]
    fn horodecki_sigma_projection_recovers_exactly() {
        let sigma = horodecki_sigma(3.0);
        let recovered = project_isotropic(&sigma.to_density(), 3).unwrap();
        assert_eq!(recovered, sigma);
        assert_eq!(recovered.a_entry(1, 3), Complex64::new(2.0 / 21.0, 0.0));
    }

    #[test]
    fn largest_supported_dimension_agrees_with_oracle() {
        // d = 8 puts the density at the 64x64 solver cap.
        let w = werner(8, 0.4).unwrap();
        let analytic = w.check_ppt(TOL);
        let oracle = is_psd(&partial_transpose_dense(&w.to_density(), 8).unwrap(), TOL).unwrap();
        assert_eq!(analytic.verdict, oracle.is_psd);
        assert!(analytic.verdict); // 0.4 < 1/2
        assert!(matches!(werner(9, 0.4), Err(FamilyError::BadParameter(_))));
    }

    #[test]
    fn family_enum_round_trip() {
        let fam = Family::Werner { d: 3, p: 0.4 };
        let state = fam.build().unwrap();
        assert_eq!(state.class_name(), "werner-like");
        assert_eq!(fam.scan_param(), Some("p"));
        let moved = fam.with_param("p", 0.7).unwrap();
        assert_eq!(moved, Family::Werner { d: 3, p: 0.7 });
        assert!(fam.with_param("q", 0.7).is_err());
        let desc = fam.descriptor();
        assert_eq!(desc.name, "werner");
        assert_eq!(desc.d, 3);
        assert!(matches!(desc.params["p"], ParamValue::Scalar(v) if v == 0.4));
    }
}
