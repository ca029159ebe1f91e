//! Lawson–Hanson active-set solver for `min ‖Ax − b‖₂` subject to `x ≥ 0`.
//!
//! Problem sizes here are tiny (tens of rows, up to a couple thousand
//! columns), so each least-squares subproblem is re-solved from scratch by
//! Householder QR instead of maintaining a factorization.
#![allow(clippy::needless_range_loop)]

/// Row-major matrix view used by the solver.
pub(crate) struct ColMatrix<'a> {
    pub data: &'a [f64],
    pub rows: usize,
    pub cols: usize,
}

impl ColMatrix<'_> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual: f64,
}

/// Unconstrained least squares on the selected columns via Householder QR.
/// Returns `None` when the selected columns are numerically rank deficient.
fn least_squares(a: &ColMatrix, cols: &[usize], b: &[f64]) -> Option<Vec<f64>> {
    let m = a.rows;
    let k = cols.len();
    debug_assert!(k <= m);
    let mut q = vec![0.0f64; m * k];
    for (cc, &col) in cols.iter().enumerate() {
        for r in 0..m {
            q[r * k + cc] = a.at(r, col);
        }
    }
    let mut rhs = b.to_vec();
    let scale = q.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);

    for col in 0..k {
        let norm: f64 = (col..m)
            .map(|r| q[r * k + col] * q[r * k + col])
            .sum::<f64>()
            .sqrt();
        if norm <= 1e-12 * scale {
            return None;
        }
        let alpha = if q[col * k + col] > 0.0 { -norm } else { norm };
        let mut v = vec![0.0; m - col];
        v[0] = q[col * k + col] - alpha;
        for r in col + 1..m {
            v[r - col] = q[r * k + col];
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv <= 0.0 {
            return None;
        }
        q[col * k + col] = alpha;
        for r in col + 1..m {
            q[r * k + col] = 0.0;
        }
        for cc in col + 1..k {
            let dot: f64 = (col..m).map(|r| v[r - col] * q[r * k + cc]).sum();
            let f = 2.0 * dot / vtv;
            for r in col..m {
                q[r * k + cc] -= f * v[r - col];
            }
        }
        let dot: f64 = (col..m).map(|r| v[r - col] * rhs[r]).sum();
        let f = 2.0 * dot / vtv;
        for r in col..m {
            rhs[r] -= f * v[r - col];
        }
    }

    let mut z = vec![0.0f64; k];
    for col in (0..k).rev() {
        let mut s = rhs[col];
        for cc in col + 1..k {
            s -= q[col * k + cc] * z[cc];
        }
        let diag = q[col * k + col];
        if diag.abs() <= 1e-14 * scale {
            return None;
        }
        z[col] = s / diag;
    }
    Some(z)
}

/// Nonnegative least squares. `kkt_tol` bounds the largest dual-variable
/// violation accepted at termination; columns that turn out linearly
/// dependent on the active set are banned rather than cycled on.
pub(crate) fn nnls(a: &ColMatrix, b: &[f64], kkt_tol: f64) -> NnlsSolution {
    let m = a.rows;
    let n = a.cols;
    assert_eq!(b.len(), m);
    let mut x = vec![0.0f64; n];
    let mut passive = vec![false; n];
    let mut banned = vec![false; n];

    let max_outer = 3 * (n + m) + 30;
    for _ in 0..max_outer {
        // Dual vector w = Aᵀ(b − Ax).
        let mut r = b.to_vec();
        for c in 0..n {
            if x[c] != 0.0 {
                for row in 0..m {
                    r[row] -= a.at(row, c) * x[c];
                }
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for c in 0..n {
            if passive[c] || banned[c] {
                continue;
            }
            let w: f64 = (0..m).map(|row| a.at(row, c) * r[row]).sum();
            if w > kkt_tol && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((c, w));
            }
        }
        let Some((enter, _)) = best else { break };
        passive[enter] = true;

        // Inner loop: restore feasibility of the passive solution.
        let max_inner = 3 * (n + m) + 30;
        let mut inner_ok = false;
        for _ in 0..max_inner {
            let cols: Vec<usize> = (0..n).filter(|&c| passive[c]).collect();
            let Some(z) = least_squares(a, &cols, b) else {
                // Dependent column; drop and ban the entering variable.
                passive[enter] = false;
                banned[enter] = true;
                inner_ok = true;
                break;
            };
            if z.iter().all(|&v| v > 0.0) {
                for (idx, &c) in cols.iter().enumerate() {
                    x[c] = z[idx];
                }
                inner_ok = true;
                break;
            }
            let mut alpha = f64::INFINITY;
            for (idx, &c) in cols.iter().enumerate() {
                if z[idx] <= 0.0 {
                    let denom = x[c] - z[idx];
                    if denom > 0.0 {
                        alpha = alpha.min(x[c] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                passive[enter] = false;
                banned[enter] = true;
                inner_ok = true;
                break;
            }
            for (idx, &c) in cols.iter().enumerate() {
                x[c] += alpha * (z[idx] - x[c]);
                if x[c] <= 1e-14 {
                    x[c] = 0.0;
                    passive[c] = false;
                }
            }
        }
        if !inner_ok {
            break;
        }
    }

    let mut r = b.to_vec();
    for c in 0..n {
        if x[c] != 0.0 {
            for row in 0..m {
                r[row] -= a.at(row, c) * x[c];
            }
        }
    }
    let residual = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    NnlsSolution { x, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SeededSampler;

    fn solve(data: &[f64], rows: usize, cols: usize, b: &[f64]) -> NnlsSolution {
        nnls(&ColMatrix { data, rows, cols }, b, 1e-10)
    }

    #[test]
    fn recovers_exact_nonnegative_solution() {
        // A = I₃ with an extra mixed column; b built from x = (1, 2, 0, 0.5).
        let data = [
            1.0, 0.0, 0.0, 0.5, //
            0.0, 1.0, 0.0, 0.5, //
            0.0, 0.0, 1.0, 0.0,
        ];
        let b = [1.25, 2.25, 0.0];
        let sol = solve(&data, 3, 4, &b);
        assert!(sol.residual < 1e-12, "residual {}", sol.residual);
        let mut reconstructed = [0.0f64; 3];
        for r in 0..3 {
            for c in 0..4 {
                reconstructed[r] += data[r * 4 + c] * sol.x[c];
            }
        }
        for (lhs, rhs) in reconstructed.iter().zip(b) {
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn clamps_negative_component() {
        // Unconstrained optimum is x = (−1), so NNLS must return 0.
        let data = [1.0, 1.0];
        let sol = solve(&data, 2, 1, &[-1.0, -1.0]);
        assert_eq!(sol.x[0], 0.0);
        assert!((sol.residual - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kkt_conditions_hold_on_random_problems() {
        let mut sampler = SeededSampler::new(13);
        for trial in 0..20 {
            let m = 6;
            let n = 25;
            let data: Vec<f64> = (0..m * n).map(|_| sampler.normal()).collect();
            let b: Vec<f64> = (0..m).map(|_| sampler.normal()).collect();
            let a = ColMatrix {
                data: &data,
                rows: m,
                cols: n,
            };
            let sol = nnls(&a, &b, 1e-10);
            let mut r = b.clone();
            for c in 0..n {
                for row in 0..m {
                    r[row] -= data[row * n + c] * sol.x[c];
                }
            }
            for c in 0..n {
                let w: f64 = (0..m).map(|row| data[row * n + c] * r[row]).sum();
                if sol.x[c] > 0.0 {
                    assert!(w.abs() <= 1e-8, "trial {trial}: active dual {w}");
                } else {
                    assert!(w <= 1e-8, "trial {trial}: inactive dual {w}");
                }
            }
        }
    }

    #[test]
    fn survives_duplicate_columns() {
        let data = [
            1.0, 1.0, 0.0, //
            0.0, 0.0, 1.0,
        ];
        let sol = solve(&data, 2, 3, &[2.0, 3.0]);
        assert!(sol.residual < 1e-12);
        assert!((sol.x[0] + sol.x[1] - 2.0).abs() < 1e-12);
        assert!((sol.x[2] - 3.0).abs() < 1e-12);
    }
}
