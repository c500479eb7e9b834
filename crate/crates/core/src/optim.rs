//! Local optimizers: Nelder–Mead simplex and Levenberg–Marquardt on matrix groups.

use nalgebra::{DMatrix, DVector};

use crate::linalg::{combine, matrix_exp, Matrix};

/// Nelder–Mead simplex minimization. Returns the best point and its value.
pub fn nelder_mead<F>(f: F, x0: &[f64], step: f64, max_iter: usize, ftol: f64) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        if (vals[n] - vals[0]).abs() <= ftol * (vals[0].abs() + ftol) {
            break;
        }

        let centroid: Vec<f64> = (0..n).map(|k| simplex[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&simplex[n]).map(|(c, w)| c + t * (w - c)).collect() };

        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let xc = if fr < vals[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    simplex[i] = best.iter().zip(&simplex[i]).map(|(b, p)| b + 0.5 * (p - b)).collect();
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    (simplex[best].clone(), vals[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, v) = nelder_mead(f, &[-1.2, 1.0], 0.5, 5000, 1e-15);
        assert!(v < 1e-10, "{v}");
        assert!((x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4);
    }
}

/// Result of [`lm_on_group`].
#[derive(Debug, Clone)]
pub struct LmOutcome {
    pub point: Matrix,
    /// Squared residual norm at `point`.
    pub value: f64,
    pub iterations: usize,
}

/// Levenberg–Marquardt on a matrix group in the local coordinates N·exp(Σ cᵢDᵢ).
///
/// `jacobian(N)` returns the derivatives of `residual` along t ↦ N·exp(tDᵢ) at t = 0, one
/// column per direction. Rejected steps increase the damping (a backtracking step control);
/// the loop stops at `target`, after `max_iters`, when no damping gives a decrease, or after
/// eight consecutive steps with relative decrease below 1e-10.
pub fn lm_on_group<R, J>(start: Matrix, dirs: &[Matrix], residual: R, jacobian: J, max_iters: usize, target: f64) -> LmOutcome
where
    R: Fn(&Matrix) -> DVector<f64>,
    J: Fn(&Matrix) -> DMatrix<f64>,
{
    let mut n = start;
    let mut r = residual(&n);
    let mut f = r.norm_squared();
    let k = dirs.len();
    let mut mu: Option<f64> = None;
    let mut iterations = 0;
    let mut slow = 0;
    while iterations < max_iters && f > target && k > 0 && slow < 8 {
        iterations += 1;
        let jm = jacobian(&n);
        let g = jm.transpose() * &r;
        let h = jm.transpose() * &jm;
        let damping = mu.get_or_insert_with(|| 1e-3 * h.diagonal().amax().max(1e-12));
        let mut improved = false;
        for _ in 0..40 {
            let mut a = h.clone();
            for i in 0..k {
                a[(i, i)] += *damping;
            }
            let Some(chol) = a.cholesky() else {
                *damping *= 4.0;
                continue;
            };
            let step = -chol.solve(&g);
            if step.amax() < 1e-300 {
                break;
            }
            let d = combine(step.as_slice(), dirs);
            let Ok(e) = matrix_exp(&d) else { break };
            let trial = &n * e;
            let rt = residual(&trial);
            let ft = rt.norm_squared();
            if ft < f {
                slow = if f - ft < 1e-10 * f { slow + 1 } else { 0 };
                n = trial;
                r = rt;
                f = ft;
                *damping = (*damping / 3.0).max(1e-300);
                improved = true;
                break;
            }
            *damping *= 4.0;
        }
        if !improved {
            break;
        }
    }
    LmOutcome { point: n, value: f, iterations }
}
