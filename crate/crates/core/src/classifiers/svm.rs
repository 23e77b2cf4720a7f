//! Linear soft-margin SVM trained in the dual.
//!
//! Minimizes `0.5 |w|^2 + C sum_i max(0, 1 - y_i (w.z_i + b))` over
//! z-scored features, with an unregularized bias. Each step picks the
//! maximal violating pair (first-order working set selection) and solves
//! the two-variable subproblem exactly, keeping `sum_i alpha_i y_i = 0`.
//! Training stops once the pair gap, which bounds every sample's KKT
//! violation, falls to the tolerance.

use serde::{Deserialize, Serialize};

use super::{check_samples, dot, Class, ClassifierError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub c: f64,
    pub tolerance: f64,
    /// One pass is `n` pair updates.
    pub max_passes: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            tolerance: 1e-4,
            max_passes: 10_000,
        }
    }
}

/// Feature standardization fitted on training data (population std, zero
/// deviations replaced by 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Scaler {
    pub fn fit(samples: &[Vec<f64>]) -> Self {
        let d = samples[0].len();
        let n = samples.len() as f64;
        let mut mean = vec![0.0; d];
        for s in samples {
            mean.iter_mut().zip(s).for_each(|(m, v)| *m += v);
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for s in samples {
            for ((acc, v), m) in var.iter_mut().zip(s).zip(&mean) {
                *acc += (v - m) * (v - m);
            }
        }
        let std = var
            .into_iter()
            .map(|v| {
                let s = (v / n).sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        Self { mean, std }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    /// Weights in standardized feature space.
    pub weights: Vec<f64>,
    pub bias: f64,
    pub scaler_mean: Vec<f64>,
    pub scaler_std: Vec<f64>,
    #[serde(rename = "C")]
    pub c: f64,
    pub tolerance: f64,
}

impl SvmModel {
    pub fn standardize(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.scaler_mean)
            .zip(&self.scaler_std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }

    /// `w . standardize(x) + b`; higher means more genuine.
    pub fn score(&self, x: &[f64]) -> Result<f64, ClassifierError> {
        if x.len() != self.weights.len() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.weights.len(),
                found: x.len(),
            });
        }
        Ok(dot(&self.weights, &self.standardize(x)) + self.bias)
    }

    /// Primal objective on standardized samples with `+1` for genuine.
    pub fn primal_objective(&self, z: &[Vec<f64>], y: &[f64]) -> f64 {
        primal(&self.weights, self.bias, self.c, z, y)
    }

    pub(crate) fn check(&self) -> Result<(), ClassifierError> {
        let d = self.weights.len();
        if self.scaler_mean.len() != d || self.scaler_std.len() != d {
            return Err(ClassifierError::Inconsistent("svm scaler size differs from weights".into()));
        }
        if self.scaler_std.iter().any(|s| s.is_nan() || *s <= 0.0) {
            return Err(ClassifierError::Inconsistent("svm scaler_std must be positive".into()));
        }
        if !(self.c > 0.0 && self.tolerance > 0.0) {
            return Err(ClassifierError::Inconsistent("svm C and tolerance must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn primal(w: &[f64], b: f64, c: f64, z: &[Vec<f64>], y: &[f64]) -> f64 {
    let hinge: f64 = z.iter().zip(y).map(|(x, t)| (1.0 - t * (dot(w, x) + b)).max(0.0)).sum();
    0.5 * dot(w, w) + c * hinge
}

/// Training outcome. `converged` is false when the pass limit was reached
/// first; the model is still usable.
#[derive(Debug, Clone)]
pub struct SvmFit {
    pub model: SvmModel,
    pub passes: usize,
    pub iterations: usize,
    pub converged: bool,
    /// Largest per-sample KKT violation of the returned `(w, b)`.
    pub max_kkt_violation: f64,
    /// Primal objective after each completed pass, and at the end.
    pub objective_history: Vec<f64>,
    /// Dual objective `sum(alpha) - 0.5 |w|^2` at the same points; never
    /// decreases.
    pub dual_history: Vec<f64>,
    pub alphas: Vec<f64>,
}

struct Solver<'a> {
    z: &'a [Vec<f64>],
    y: &'a [f64],
    c: f64,
    alpha: Vec<f64>,
    w: Vec<f64>,
    /// `y_t w.z_t - 1`
    grad: Vec<f64>,
}

impl Solver<'_> {
    fn in_up(&self, t: usize) -> bool {
        (self.y[t] > 0.0 && self.alpha[t] < self.c) || (self.y[t] < 0.0 && self.alpha[t] > 0.0)
    }

    fn in_low(&self, t: usize) -> bool {
        (self.y[t] < 0.0 && self.alpha[t] < self.c) || (self.y[t] > 0.0 && self.alpha[t] > 0.0)
    }

    /// Maximal violating pair `(i, m, j, big_m)` with `m = max_up -y G`,
    /// `big_m = min_low -y G`.
    fn select(&self) -> Option<(usize, f64, usize, f64)> {
        let mut up: Option<(usize, f64)> = None;
        let mut low: Option<(usize, f64)> = None;
        for t in 0..self.y.len() {
            let v = -self.y[t] * self.grad[t];
            if self.in_up(t) && up.is_none_or(|(_, m)| v > m) {
                up = Some((t, v));
            }
            if self.in_low(t) && low.is_none_or(|(_, m)| v < m) {
                low = Some((t, v));
            }
        }
        Some((up?.0, up?.1, low?.0, low?.1))
    }

    fn step(&mut self, i: usize, j: usize, gap: f64) {
        let zi = &self.z[i];
        let zj = &self.z[j];
        let curvature = zi.iter().zip(zj).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().max(1e-12);
        let room_i = if self.y[i] > 0.0 { self.c - self.alpha[i] } else { self.alpha[i] };
        let room_j = if self.y[j] > 0.0 { self.alpha[j] } else { self.c - self.alpha[j] };
        let delta = (gap / curvature).min(room_i).min(room_j);
        if delta <= 0.0 {
            return;
        }
        let update = |alpha: f64, sign: f64, room: f64| {
            if delta == room {
                if sign > 0.0 { self.c } else { 0.0 }
            } else {
                (alpha + sign * delta).clamp(0.0, self.c)
            }
        };
        let ai = update(self.alpha[i], self.y[i], room_i);
        let aj = update(self.alpha[j], -self.y[j], room_j);
        self.alpha[i] = ai;
        self.alpha[j] = aj;
        let dir: Vec<f64> = zi.iter().zip(zj).map(|(a, b)| delta * (a - b)).collect();
        self.w.iter_mut().zip(&dir).for_each(|(w, d)| *w += d);
        for t in 0..self.y.len() {
            self.grad[t] += self.y[t] * dot(&dir, &self.z[t]);
        }
    }

    fn refresh_gradient(&mut self) {
        for t in 0..self.y.len() {
            self.grad[t] = self.y[t] * dot(&self.w, &self.z[t]) - 1.0;
        }
    }

    fn bias(&self) -> f64 {
        let free: Vec<f64> = (0..self.y.len())
            .filter(|&t| self.alpha[t] > 0.0 && self.alpha[t] < self.c)
            .map(|t| -self.y[t] * self.grad[t])
            .collect();
        if !free.is_empty() {
            return free.iter().sum::<f64>() / free.len() as f64;
        }
        match self.select() {
            Some((_, m, _, big_m)) => (m + big_m) / 2.0,
            None => 0.0,
        }
    }
}

/// Largest KKT violation of `(w, b)` given dual variables.
pub(crate) fn kkt_violation(w: &[f64], b: f64, c: f64, alpha: &[f64], z: &[Vec<f64>], y: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for ((x, t), a) in z.iter().zip(y).zip(alpha) {
        let margin = t * (dot(w, x) + b);
        let v = if *a <= 0.0 {
            (1.0 - margin).max(0.0)
        } else if *a >= c {
            (margin - 1.0).max(0.0)
        } else {
            (margin - 1.0).abs()
        };
        worst = worst.max(v);
    }
    worst
}

pub fn fit_svm(samples: &[Vec<f64>], classes: &[Class], params: SvmParams) -> Result<SvmFit, ClassifierError> {
    check_samples(samples)?;
    if classes.len() != samples.len() {
        return Err(ClassifierError::DimensionMismatch {
            expected: samples.len(),
            found: classes.len(),
        });
    }
    if !classes.contains(&Class::Genuine) || !classes.contains(&Class::Attack) {
        return Err(ClassifierError::SingleClass);
    }
    if !(params.c > 0.0 && params.c.is_finite()) {
        return Err(ClassifierError::InvalidParameter(format!("C must be positive, got {}", params.c)));
    }
    if params.tolerance.is_nan() || params.tolerance <= 0.0 {
        return Err(ClassifierError::InvalidParameter("tolerance must be positive".into()));
    }
    let scaler = Scaler::fit(samples);
    let z: Vec<Vec<f64>> = samples.iter().map(|s| scaler.apply(s)).collect();
    let y: Vec<f64> = classes.iter().map(|c| c.sign()).collect();
    let n = z.len();
    let d = z[0].len();

    let mut solver = Solver {
        z: &z,
        y: &y,
        c: params.c,
        alpha: vec![0.0; n],
        w: vec![0.0; d],
        grad: vec![-1.0; n],
    };
    let max_iterations = params.max_passes.saturating_mul(n);
    let mut history = Vec::new();
    let mut dual_history = Vec::new();
    let dual = |s: &Solver| s.alpha.iter().sum::<f64>() - 0.5 * dot(&s.w, &s.w);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        let Some((i, m, j, big_m)) = solver.select() else {
            converged = true;
            break;
        };
        if m - big_m <= params.tolerance {
            converged = true;
            break;
        }
        solver.step(i, j, m - big_m);
        iterations += 1;
        if iterations % n == 0 {
            history.push(primal(&solver.w, solver.bias(), params.c, &z, &y));
            dual_history.push(dual(&solver));
            // keep the incremental gradient from drifting
            solver.refresh_gradient();
        }
    }
    solver.refresh_gradient();
    if !converged {
        log::warn!(
            "svm stopped at the pass limit ({} passes) before reaching tolerance {}",
            params.max_passes,
            params.tolerance
        );
    }
    let bias = solver.bias();
    let objective = primal(&solver.w, bias, params.c, &z, &y);
    history.push(objective);
    dual_history.push(dual(&solver));
    let max_kkt_violation = kkt_violation(&solver.w, bias, params.c, &solver.alpha, &z, &y);
    Ok(SvmFit {
        model: SvmModel {
            weights: solver.w,
            bias,
            scaler_mean: scaler.mean,
            scaler_std: scaler.std,
            c: params.c,
            tolerance: params.tolerance,
        },
        passes: iterations.div_ceil(n),
        iterations,
        converged,
        max_kkt_violation,
        objective_history: history,
        dual_history,
        alphas: solver.alpha,
    })
}
