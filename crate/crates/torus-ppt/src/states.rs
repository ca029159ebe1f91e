//! The two torus-invariant state classes and their closed-form criteria.
//!
//! An isotropic-like state is `ρ = Σ_{ij} a_ij |ii⟩⟨jj| + Σ_{i≠j} c_ij |ij⟩⟨ij|`
//! with hermitian `â` and real `c`; a Werner-like state is
//! `ρ̃ = Σ_{ij} b_ij |ij⟩⟨ji| + Σ_{i≠j} c_ij |ij⟩⟨ij|`. Partial transposition
//! swaps the two classes parameter-for-parameter, so PPT of one class is
//! positivity of the other:
//!
//! * isotropic-like positive  ⇔  `â ⪰ 0` and all `c_ij ≥ 0`;
//! * isotropic-like PPT       ⇔  all `a_ii ≥ 0`, all `c_ij ≥ 0`, and
//!   `c_ij c_ji − |a_ij|² ≥ 0` for every pair `i < j` (PSD-ness of the 2×2
//!   blocks the partial transpose splits into);
//! * Werner-like positive     ⇔  the same diagonal/pair inequalities with
//!   `b` in place of `a`;
//! * Werner-like PPT          ⇔  `b̂ ⪰ 0` and all `c_ij ≥ 0`.
//!
//! All verdicts are reported with per-inequality slacks so that boundary
//! cases stay inspectable, and every criterion can be cross-checked against
//! the dense eigenvalue oracle in [`crate::linalg`].

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{flat_index, hermitian_eigenvalues, DenseMatrix, LinalgError, HERMITICITY_TOL};
use crate::sampling::SeededSampler;

/// Largest supported local dimension; densities are d²×d² and the dense
/// oracle caps at 64×64.
pub const MAX_LOCAL_DIM: usize = 8;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("state dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("state dimension must be at most {MAX_LOCAL_DIM}, got {0}")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("parameter matrix is not hermitian: defect {defect:.3e} exceeds {bound:.3e}")]
    NonHermitian { defect: f64, bound: f64 },
    #[error("c matrix must have an identically zero diagonal")]
    NonZeroCDiagonal,
    #[error("parameters must be finite")]
    NonFinite,
    #[error("state trace must be positive, got {0}")]
    NonPositiveTrace(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn validate_c(d: usize, c: &[f64]) -> Result<(), StateError> {
    if c.len() != d * d {
        return Err(StateError::DimensionMismatch {
            expected: format!("{} c entries", d * d),
            got: format!("{}", c.len()),
        });
    }
    if !c.iter().all(|x| x.is_finite()) {
        return Err(StateError::NonFinite);
    }
    if (0..d).any(|i| c[i * d + i] != 0.0) {
        return Err(StateError::NonZeroCDiagonal);
    }
    Ok(())
}

fn validate_param_matrix(d: usize, m: &DenseMatrix) -> Result<(), StateError> {
    if d < 2 {
        return Err(StateError::DimensionTooSmall(d));
    }
    if d > MAX_LOCAL_DIM {
        return Err(StateError::DimensionTooLarge(d));
    }
    if m.rows() != d || m.cols() != d {
        return Err(StateError::DimensionMismatch {
            expected: format!("{d}x{d}"),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let bound = HERMITICITY_TOL * m.frobenius_norm().max(1.0);
    let defect = m.hermiticity_defect();
    if defect > bound {
        return Err(StateError::NonHermitian { defect, bound });
    }
    Ok(())
}

fn c_frobenius(c: &[f64]) -> f64 {
    c.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Which torus action a dense matrix is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceMode {
    /// `U_x ⊗ U_x` (the Werner-like class).
    UU,
    /// `U_x ⊗ U_x*` (the isotropic-like class).
    UUStar,
}

/// Verdict of a positivity or PPT criterion with the margin of every
/// inequality that entered it. `verdict` is true exactly when all slacks
/// are ≥ `−tol` (the stored `tol` is already scaled by the parameter size).
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub verdict: bool,
    pub tol: f64,
    pub slacks: Vec<(String, f64)>,
}

impl CriterionReport {
    fn from_slacks(slacks: Vec<(String, f64)>, tol: f64) -> Self {
        let verdict = slacks.iter().all(|(_, s)| *s >= -tol);
        CriterionReport {
            verdict,
            tol,
            slacks,
        }
    }

    pub fn min_slack(&self) -> f64 {
        self.slacks
            .iter()
            .map(|(_, s)| *s)
            .fold(f64::INFINITY, f64::min)
    }
}

/// 2×2 block of the partially transposed isotropic-like state acting on
/// `span{|ij⟩, |ji⟩}` for a pair `i < j`.
#[derive(Debug, Clone)]
pub struct XBlock {
    pub i: usize,
    pub j: usize,
    /// `[[c_ij, a_ij], [conj(a_ij), c_ji]]`.
    pub block: DenseMatrix,
}

/// `U_x ⊗ U_x*`-invariant state, parametrized by a hermitian d×d matrix `â`
/// and a real d×d matrix `c` with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicLikeState {
    d: usize,
    a: DenseMatrix,
    c: Vec<f64>,
}

/// `U_x ⊗ U_x`-invariant state, parametrized by a hermitian d×d matrix `b̂`
/// and a real d×d matrix `c` with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct WernerLikeState {
    d: usize,
    b: DenseMatrix,
    c: Vec<f64>,
}

impl IsotropicLikeState {
    /// `c` is row-major d×d; its diagonal must be identically zero.
    pub fn new(d: usize, a: DenseMatrix, c: Vec<f64>) -> Result<Self, StateError> {
        validate_param_matrix(d, &a)?;
        validate_c(d, &c)?;
        Ok(IsotropicLikeState { d, a, c })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn c_matrix(&self) -> &[f64] {
        &self.c
    }

    /// `a_ij`, 1-based.
    pub fn a_entry(&self, i: usize, j: usize) -> Complex64 {
        self.a.get(i - 1, j - 1)
    }

    /// `c_ij`, 1-based.
    pub fn c_entry(&self, i: usize, j: usize) -> f64 {
        self.c[(i - 1) * self.d + (j - 1)]
    }

    fn scale(&self) -> f64 {
        self.a.frobenius_norm().max(c_frobenius(&self.c)).max(1.0)
    }

    /// Dense d²×d² matrix with `a_ij` at `(|ii⟩, |jj⟩)` and `c_ij` at
    /// `(|ij⟩, |ij⟩)`.
    pub fn to_density(&self) -> DenseMatrix {
        let d = self.d;
        let mut m = DenseMatrix::zeros(d * d, d * d);
        for i in 1..=d {
            for j in 1..=d {
                m.set(flat_index(d, i, i), flat_index(d, j, j), self.a_entry(i, j));
                if i != j {
                    m.set(
                        flat_index(d, i, j),
                        flat_index(d, i, j),
                        Complex64::new(self.c_entry(i, j), 0.0),
                    );
                }
            }
        }
        m
    }

    /// `Tr ρ = Tr â + Σ_{i≠j} c_ij`.
    pub fn state_trace(&self) -> f64 {
        let diag: f64 = (1..=self.d).map(|i| self.a_entry(i, i).re).sum();
        let off: f64 = ordered_pairs(self.d).map(|(i, j)| self.c_entry(i, j)).sum();
        diag + off
    }

    pub fn normalize(&self) -> Result<Self, StateError> {
        let t = self.state_trace();
        if t <= 0.0 {
            return Err(StateError::NonPositiveTrace(t));
        }
        Ok(IsotropicLikeState {
            d: self.d,
            a: self.a.scaled(Complex64::new(1.0 / t, 0.0)),
            c: self.c.iter().map(|x| x / t).collect(),
        })
    }

    /// Positivity: `â ⪰ 0` and every `c_ij ≥ 0`.
    pub fn check_positive(&self, tol: f64) -> CriterionReport {
        let tol_eff = tol * self.scale();
        let mut slacks = Vec::new();
        let eig = hermitian_eigenvalues(&self.a).expect("â is hermitian by construction");
        slacks.push(("min_eig".to_string(), eig[0]));
        for (i, j) in ordered_pairs(self.d) {
            slacks.push((format!("c[{i},{j}]"), self.c_entry(i, j)));
        }
        CriterionReport::from_slacks(slacks, tol_eff)
    }

    /// PPT: the partial transpose splits into the diagonal `a_ii` terms and
    /// the 2×2 blocks of [`Self::x_blocks`], so it is PSD iff every `a_ii ≥ 0`,
    /// every `c_ij ≥ 0`, and every pair determinant `c_ij c_ji − |a_ij|² ≥ 0`.
    pub fn check_ppt(&self, tol: f64) -> CriterionReport {
        let tol_eff = tol * self.scale();
        CriterionReport::from_slacks(pair_criterion_slacks(self.d, &self.a, &self.c), tol_eff)
    }

    /// Relabels the parameters into the dual class: `(1 ⊗ τ)ρ` has `b = a`
    /// and the same `c`. Exact (no arithmetic), hence an involution.
    pub fn partial_transpose_symbolic(&self) -> WernerLikeState {
        WernerLikeState {
            d: self.d,
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }

    /// The 2×2 blocks `[[c_ij, a_ij], [conj(a_ij), c_ji]]` of the partial
    /// transpose, one per pair `i < j`.
    pub fn x_blocks(&self) -> Vec<XBlock> {
        let mut blocks = Vec::new();
        for i in 1..=self.d {
            for j in i + 1..=self.d {
                let a = self.a_entry(i, j);
                let block = DenseMatrix::new(
                    2,
                    2,
                    vec![
                        Complex64::new(self.c_entry(i, j), 0.0),
                        a,
                        a.conj(),
                        Complex64::new(self.c_entry(j, i), 0.0),
                    ],
                )
                .expect("2x2 block entries are finite");
                blocks.push(XBlock { i, j, block });
            }
        }
        blocks
    }
}

impl WernerLikeState {
    pub fn new(d: usize, b: DenseMatrix, c: Vec<f64>) -> Result<Self, StateError> {
        validate_param_matrix(d, &b)?;
        validate_c(d, &c)?;
        Ok(WernerLikeState { d, b, c })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    pub fn c_matrix(&self) -> &[f64] {
        &self.c
    }

    pub fn b_entry(&self, i: usize, j: usize) -> Complex64 {
        self.b.get(i - 1, j - 1)
    }

    pub fn c_entry(&self, i: usize, j: usize) -> f64 {
        self.c[(i - 1) * self.d + (j - 1)]
    }

    fn scale(&self) -> f64 {
        self.b.frobenius_norm().max(c_frobenius(&self.c)).max(1.0)
    }

    /// Dense d²×d² matrix with `b_ij` at `(|ij⟩, |ji⟩)` (for `i = j` this is
    /// the diagonal `b_ii` at `(|ii⟩, |ii⟩)`) and `c_ij` at `(|ij⟩, |ij⟩)`.
    pub fn to_density(&self) -> DenseMatrix {
        let d = self.d;
        let mut m = DenseMatrix::zeros(d * d, d * d);
        for i in 1..=d {
            for j in 1..=d {
                m.set(flat_index(d, i, j), flat_index(d, j, i), self.b_entry(i, j));
                if i != j {
                    m.set(
                        flat_index(d, i, j),
                        flat_index(d, i, j),
                        Complex64::new(self.c_entry(i, j), 0.0),
                    );
                }
            }
        }
        m
    }

    pub fn state_trace(&self) -> f64 {
        let diag: f64 = (1..=self.d).map(|i| self.b_entry(i, i).re).sum();
        let off: f64 = ordered_pairs(self.d).map(|(i, j)| self.c_entry(i, j)).sum();
        diag + off
    }

    pub fn normalize(&self) -> Result<Self, StateError> {
        let t = self.state_trace();
        if t <= 0.0 {
            return Err(StateError::NonPositiveTrace(t));
        }
        Ok(WernerLikeState {
            d: self.d,
            b: self.b.scaled(Complex64::new(1.0 / t, 0.0)),
            c: self.c.iter().map(|x| x / t).collect(),
        })
    }

    /// Positivity: `ρ̃` splits into the `b_ii |ii⟩⟨ii|` terms and 2×2 blocks
    /// `[[c_ij, b_ij], [conj(b_ij), c_ji]]`, so it is PSD iff every
    /// `b_ii ≥ 0`, every `c_ij ≥ 0`, and every pair determinant
    /// `c_ij c_ji − |b_ij|² ≥ 0`.
    pub fn check_positive(&self, tol: f64) -> CriterionReport {
        let tol_eff = tol * self.scale();
        CriterionReport::from_slacks(pair_criterion_slacks(self.d, &self.b, &self.c), tol_eff)
    }

    /// PPT: `b̂ ⪰ 0` and every `c_ij ≥ 0`.
    pub fn check_ppt(&self, tol: f64) -> CriterionReport {
        let tol_eff = tol * self.scale();
        let mut slacks = Vec::new();
        let eig = hermitian_eigenvalues(&self.b).expect("b̂ is hermitian by construction");
        slacks.push(("min_eig".to_string(), eig[0]));
        for (i, j) in ordered_pairs(self.d) {
            slacks.push((format!("c[{i},{j}]"), self.c_entry(i, j)));
        }
        CriterionReport::from_slacks(slacks, tol_eff)
    }

    pub fn partial_transpose_symbolic(&self) -> IsotropicLikeState {
        IsotropicLikeState {
            d: self.d,
            a: self.b.clone(),
            c: self.c.clone(),
        }
    }
}

/// Shared slack list for the "diagonal + 2×2 blocks" structure: diagonal
/// entries first, then every `c_ij`, then the pair determinants. Werner-like
/// positivity and isotropic-like PPT use exactly this list, which makes the
/// partial-transpose duality an equality of reports, not just of verdicts.
fn pair_criterion_slacks(d: usize, m: &DenseMatrix, c: &[f64]) -> Vec<(String, f64)> {
    let mut slacks = Vec::new();
    for i in 1..=d {
        slacks.push((format!("diag[{i}]"), m.get(i - 1, i - 1).re));
    }
    for (i, j) in ordered_pairs(d) {
        slacks.push((format!("c[{i},{j}]"), c[(i - 1) * d + (j - 1)]));
    }
    for i in 1..=d {
        for j in i + 1..=d {
            let det = c[(i - 1) * d + (j - 1)] * c[(j - 1) * d + (i - 1)]
                - m.get(i - 1, j - 1).norm_sqr();
            slacks.push((format!("pair[{i},{j}]"), det));
        }
    }
    slacks
}

fn ordered_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=d).flat_map(move |i| (1..=d).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Either class, for code paths that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassState {
    Isotropic(IsotropicLikeState),
    Werner(WernerLikeState),
}

impl ClassState {
    pub fn d(&self) -> usize {
        match self {
            ClassState::Isotropic(s) => s.d(),
            ClassState::Werner(s) => s.d(),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            ClassState::Isotropic(_) => "isotropic-like",
            ClassState::Werner(_) => "werner-like",
        }
    }

    pub fn to_density(&self) -> DenseMatrix {
        match self {
            ClassState::Isotropic(s) => s.to_density(),
            ClassState::Werner(s) => s.to_density(),
        }
    }

    pub fn state_trace(&self) -> f64 {
        match self {
            ClassState::Isotropic(s) => s.state_trace(),
            ClassState::Werner(s) => s.state_trace(),
        }
    }

    pub fn normalize(&self) -> Result<ClassState, StateError> {
        Ok(match self {
            ClassState::Isotropic(s) => ClassState::Isotropic(s.normalize()?),
            ClassState::Werner(s) => ClassState::Werner(s.normalize()?),
        })
    }

    pub fn check_positive(&self, tol: f64) -> CriterionReport {
        match self {
            ClassState::Isotropic(s) => s.check_positive(tol),
            ClassState::Werner(s) => s.check_positive(tol),
        }
    }

    pub fn check_ppt(&self, tol: f64) -> CriterionReport {
        match self {
            ClassState::Isotropic(s) => s.check_ppt(tol),
            ClassState::Werner(s) => s.check_ppt(tol),
        }
    }

    /// Swaps the class; applying twice returns the original state exactly.
    pub fn partial_transpose_symbolic(&self) -> ClassState {
        match self {
            ClassState::Isotropic(s) => ClassState::Werner(s.partial_transpose_symbolic()),
            ClassState::Werner(s) => ClassState::Isotropic(s.partial_transpose_symbolic()),
        }
    }
}

fn check_projection_input(sigma: &DenseMatrix, d: usize) -> Result<(), StateError> {
    let n = d * d;
    if sigma.rows() != n || sigma.cols() != n {
        return Err(StateError::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", sigma.rows(), sigma.cols()),
        });
    }
    let bound = HERMITICITY_TOL * sigma.frobenius_norm().max(1.0);
    let defect = sigma.hermiticity_defect();
    if defect > bound {
        return Err(StateError::NonHermitian { defect, bound });
    }
    Ok(())
}

/// Projects a dense hermitian d²×d² matrix onto the isotropic-like class by
/// reading `a_ij = ⟨ii|σ|jj⟩` and `c_ij = ⟨ij|σ|ij⟩`. Entries are copied
/// without arithmetic, so the projection is bitwise idempotent on class
/// members and trace-preserving.
pub fn project_isotropic(sigma: &DenseMatrix, d: usize) -> Result<IsotropicLikeState, StateError> {
    check_projection_input(sigma, d)?;
    let mut a = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 1..=d {
        for j in 1..=d {
            a.set(
                i - 1,
                j - 1,
                sigma.get(flat_index(d, i, i), flat_index(d, j, j)),
            );
            if i != j {
                c[(i - 1) * d + (j - 1)] = sigma.get(flat_index(d, i, j), flat_index(d, i, j)).re;
            }
        }
    }
    IsotropicLikeState::new(d, a, c)
}

/// Werner-class analogue of [`project_isotropic`]: `b_ij = ⟨ij|σ|ji⟩`
/// (with `b_ii = ⟨ii|σ|ii⟩`) and `c_ij = ⟨ij|σ|ij⟩` for `i ≠ j`.
pub fn project_werner(sigma: &DenseMatrix, d: usize) -> Result<WernerLikeState, StateError> {
    check_projection_input(sigma, d)?;
    let mut b = DenseMatrix::zeros(d, d);
    let mut c = vec![0.0; d * d];
    for i in 1..=d {
        for j in 1..=d {
            b.set(
                i - 1,
                j - 1,
                sigma.get(flat_index(d, i, j), flat_index(d, j, i)),
            );
            if i != j {
                c[(i - 1) * d + (j - 1)] = sigma.get(flat_index(d, i, j), flat_index(d, i, j)).re;
            }
        }
    }
    WernerLikeState::new(d, b, c)
}

/// Samples `trials` random torus elements `U_x = exp(−i·diag(x))` and checks
/// that `σ` commutes with `U_x ⊗ U_x` (mode [`InvarianceMode::UU`]) or
/// `U_x ⊗ U_x*` ([`InvarianceMode::UUStar`]) in Frobenius norm, relative
/// bound `1e-10 · ‖σ‖_F`. Deterministic given the seed.
pub fn check_torus_invariance(
    sigma: &DenseMatrix,
    d: usize,
    mode: InvarianceMode,
    trials: usize,
    seed: u64,
) -> Result<bool, StateError> {
    let n = d * d;
    if sigma.rows() != n || sigma.cols() != n {
        return Err(StateError::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", sigma.rows(), sigma.cols()),
        });
    }
    let mut sampler = SeededSampler::new(seed);
    let fro = sigma.frobenius_norm();
    let bound = 1e-10 * fro;
    for _ in 0..trials {
        let x: Vec<f64> = (0..d)
            .map(|_| sampler.uniform_in(0.0, 2.0 * std::f64::consts::PI))
            .collect();
        // W = U_x ⊗ U_x^(*) is diagonal, so the commutator norm is
        // Σ_rc |σ_rc|² |w_r − w_c|² without any matrix products.
        let phase = |flat: usize| -> Complex64 {
            let idx = BasisIndexLocal::from_flat(d, flat);
            let angle = match mode {
                InvarianceMode::UU => -(x[idx.0 - 1] + x[idx.1 - 1]),
                InvarianceMode::UUStar => -(x[idx.0 - 1] - x[idx.1 - 1]),
            };
            Complex64::from_polar(1.0, angle)
        };
        let w: Vec<Complex64> = (0..n).map(phase).collect();
        let mut comm_sq = 0.0;
        for r in 0..n {
            for c in 0..n {
                let entry = sigma.get(r, c);
                if entry != Complex64::new(0.0, 0.0) {
                    comm_sq += entry.norm_sqr() * (w[r] - w[c]).norm_sqr();
                }
            }
        }
        if comm_sq.sqrt() > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

struct BasisIndexLocal(usize, usize);

impl BasisIndexLocal {
    fn from_flat(d: usize, flat: usize) -> Self {
        BasisIndexLocal(flat / d + 1, flat % d + 1)
    }
}
