//! Dense complex linear algebra at desk scale: a Hermitian eigensolver
//! (cyclic Jacobi with unitary rotations), PSD tests, partial transposition
//! on flat matrices, and Schmidt rank of bipartite pure vectors.
//!
//! Matrices are row-major `Complex64` buffers capped at 64×64; the states
//! handled by this crate live in dimension d² with d ≤ 8, so an O(n³)
//! per-sweep eigensolver is adequate and keeps the kernel dependency-free.

use num_complex::Complex64;
use thiserror::Error;

/// Hard cap on eigensolver input size.
pub const MAX_DIM: usize = 64;

/// Relative hermiticity tolerance accepted by matrix-consuming operations:
/// `max_ij |M_ij − conj(M_ji)| ≤ HERMITICITY_TOL · max(1, ‖M‖_F)`.
pub const HERMITICITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not hermitian: defect {defect:.3e} exceeds bound {bound:.3e}")]
    NonHermitian { defect: f64, bound: f64 },
    #[error("matrix dimension {0} exceeds supported maximum {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("zero vector")]
    ZeroVector,
}

/// 1-based product-basis index `|ij⟩` with flat storage offset `(i−1)d + (j−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    d: usize,
    i: usize,
    j: usize,
}

impl BasisIndex {
    /// Panics if `i` or `j` is outside `1..=d`.
    pub fn new(d: usize, i: usize, j: usize) -> Self {
        assert!(
            (1..=d).contains(&i) && (1..=d).contains(&j),
            "basis index ({i},{j}) out of range for d={d}"
        );
        BasisIndex { d, i, j }
    }

    pub fn from_flat(d: usize, flat: usize) -> Self {
        assert!(flat < d * d, "flat index {flat} out of range for d={d}");
        BasisIndex {
            d,
            i: flat / d + 1,
            j: flat % d + 1,
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn flat(&self) -> usize {
        (self.i - 1) * self.d + (self.j - 1)
    }
}

/// Flat offset of `|ij⟩` in the product basis, `i, j` 1-based.
#[inline]
pub fn flat_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!((1..=d).contains(&i) && (1..=d).contains(&j));
    (i - 1) * d + (j - 1)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Rejects inconsistent lengths and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_ij |M_ij − conj(M_ji)|`; zero exactly when the matrix is hermitian.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && self.hermiticity_defect() <= HERMITICITY_TOL * self.frobenius_norm().max(1.0)
    }

    pub fn conjugate_transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + x * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Outer product `|v⟩⟨v|` scaled by `weight`.
    pub fn weighted_projector(v: &[Complex64], weight: f64) -> DenseMatrix {
        let n = v.len();
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, v[r] * v[c].conj() * weight);
            }
        }
        out
    }
}

/// Ascending eigenvalues with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: DenseMatrix,
}

fn check_eigen_input(m: &DenseMatrix) -> Result<usize, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let n = m.rows();
    if n > MAX_DIM {
        return Err(LinalgError::DimensionTooLarge(n));
    }
    let bound = HERMITICITY_TOL * m.frobenius_norm().max(1.0);
    let defect = m.hermiticity_defect();
    if defect > bound {
        return Err(LinalgError::NonHermitian { defect, bound });
    }
    Ok(n)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// sweeps with complex (phase-carrying) rotations.
pub fn hermitian_eigen(m: &DenseMatrix) -> Result<HermitianEigen, LinalgError> {
    let n = check_eigen_input(m)?;
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: DenseMatrix::zeros(0, 0),
        });
    }

    // Work on the exact hermitian average; diagonal becomes purely real.
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for c in 0..n {
            a[r * n + c] = (m.get(r, c) + m.get(c, r).conj()) * 0.5;
        }
        a[r * n + r] = Complex64::new(a[r * n + r].re, 0.0);
    }
    let mut v: Vec<Complex64> = DenseMatrix::identity(n).data.clone();

    let scale = m.frobenius_norm().max(1.0);
    let off_tol = 1e-14 * scale;
    let max_sweeps = 60;

    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
            .map(|(r, c)| 2.0 * a[r * n + c].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= off_tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                // Phase e^{iφ} of a_pq, then a real rotation on the
                // phase-aligned 2×2 block.
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // J = I except J_pp = c, J_pq = s, J_qp = −s·e^{−iφ},
                // J_qq = c·e^{−iφ}; update A ← J† A J, V ← V J.
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * jqp;
                    a[k * n + q] = akp * s + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * jqp.conj();
                    a[q * n + k] = apk * s + aqk * jqq.conj();
                }
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * jqp;
                    v[k * n + q] = vkp * s + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a[x * n + x]
            .re
            .partial_cmp(&a[y * n + y].re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v[row * n + k]);
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    hermitian_eigen(m).map(|e| e.values)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// Positive-semidefiniteness test: true iff the smallest eigenvalue is
/// ≥ `−tol · max(1, ‖M‖_F)`. The relative scaling keeps un-normalized
/// inputs from being misclassified.
pub fn is_psd(m: &DenseMatrix, tol: f64) -> Result<PsdReport, LinalgError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let values = hermitian_eigenvalues(m)?;
    let min = values.first().copied().unwrap_or(0.0);
    Ok(PsdReport {
        is_psd: min >= -tol * m.frobenius_norm().max(1.0),
        min_eigenvalue: min,
    })
}

/// Transposition of the second tensor factor: `N[(i,j),(k,l)] = M[(i,l),(k,j)]`.
/// A pure entry permutation, hence an exact involution.
pub fn partial_transpose_dense(m: &DenseMatrix, d: usize) -> Result<DenseMatrix, LinalgError> {
    let n = d * d;
    if m.rows() != n || m.cols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let mut out = DenseMatrix::zeros(n, n);
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                for l in 1..=d {
                    out.set(
                        flat_index(d, i, j),
                        flat_index(d, k, l),
                        m.get(flat_index(d, i, l), flat_index(d, k, j)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Tensor product of two length-d vectors in the `|ij⟩` flattening.
pub fn tensor_product(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Number of singular values of the d×d reshape of `v` exceeding
/// `tol · σ_max`. Singular values are square roots of the eigenvalues of
/// the d×d Gram matrix, so the one eigensolver serves here too.
pub fn schmidt_rank(v: &[Complex64], d: usize, tol: f64) -> Result<usize, LinalgError> {
    if v.len() != d * d {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("{} entries", d * d),
            got: format!("{} entries", v.len()),
        });
    }
    let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq <= 0.0 {
        return Err(LinalgError::ZeroVector);
    }
    // Gram matrix G = Ψ Ψ† of the reshape Ψ_ij = v[(i−1)d + (j−1)].
    let mut gram = DenseMatrix::zeros(d, d);
    for i in 1..=d {
        for k in 1..=d {
            let mut g = Complex64::new(0.0, 0.0);
            for j in 1..=d {
                g += v[flat_index(d, i, j)] * v[flat_index(d, k, j)].conj();
            }
            gram.set(i - 1, k - 1, g);
        }
    }
    let eig = hermitian_eigenvalues(&gram)?;
    let lambda_max = eig.last().copied().unwrap_or(0.0).max(0.0);
    if lambda_max <= 0.0 {
        return Err(LinalgError::ZeroVector);
    }
    // Gram eigenvalues at the eigensolver's noise floor are exact zeros of
    // the reshape; clamping them keeps sqrt from inflating rounding noise
    // past the singular-value threshold.
    let zero_floor = MAX_DIM as f64 * f64::EPSILON * lambda_max;
    let singular: Vec<f64> = eig
        .iter()
        .rev()
        .map(|&l| if l <= zero_floor { 0.0 } else { l.sqrt() })
        .collect();
    let sigma_max = singular[0];
    Ok(singular.iter().filter(|&&s| s > tol * sigma_max).count())
}
