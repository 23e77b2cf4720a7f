use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{check_samples, dot, ClassifierError};

/// Principal component projection retaining a fraction of total variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub k: usize,
    pub d: usize,
    pub mean: Vec<f64>,
    /// `k x d`, row-major; rows orthonormal, ordered by decreasing eigenvalue.
    pub components: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    /// Sum of all covariance eigenvalues, retained or not.
    pub total_variance: f64,
    pub retained: f64,
}

impl PcaModel {
    pub fn component(&self, row: usize) -> &[f64] {
        &self.components[row * self.d..(row + 1) * self.d]
    }

    /// `components * (x - mean)`.
    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>, ClassifierError> {
        if x.len() != self.d {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.d,
                found: x.len(),
            });
        }
        let centered: Vec<f64> = x.iter().zip(&self.mean).map(|(a, m)| a - m).collect();
        Ok((0..self.k).map(|r| dot(self.component(r), &centered)).collect())
    }

    /// Maps projected coordinates back to feature space.
    pub fn reconstruct(&self, z: &[f64]) -> Result<Vec<f64>, ClassifierError> {
        if z.len() != self.k {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.k,
                found: z.len(),
            });
        }
        let mut out = self.mean.clone();
        for (r, &coef) in z.iter().enumerate() {
            for (o, c) in out.iter_mut().zip(self.component(r)) {
                *o += coef * c;
            }
        }
        Ok(out)
    }

    /// Fraction of total variance carried by the first `k` components.
    pub fn explained_ratio(&self, k: usize) -> f64 {
        self.eigenvalues[..k].iter().sum::<f64>() / self.total_variance
    }

    pub(crate) fn check(&self) -> Result<(), ClassifierError> {
        let ok = self.k >= 1
            && self.mean.len() == self.d
            && self.components.len() == self.k * self.d
            && self.eigenvalues.len() == self.k;
        if ok {
            Ok(())
        } else {
            Err(ClassifierError::Inconsistent("pca stage array sizes disagree with k and d".into()))
        }
    }
}

/// Number of leading eigenvalues (sorted descending) whose cumulative share
/// of the total first reaches `retained`.
pub fn components_for(eigenvalues: &[f64], retained: f64) -> usize {
    let total: f64 = eigenvalues.iter().sum();
    let mut cum = 0.0;
    for (i, l) in eigenvalues.iter().enumerate() {
        cum += l;
        if cum / total >= retained {
            return i + 1;
        }
    }
    eigenvalues.len()
}

/// Eigendecomposition of the sample covariance (divisor `n - 1`).
pub fn fit_pca(samples: &[Vec<f64>], retained: f64) -> Result<PcaModel, ClassifierError> {
    if !(retained > 0.0 && retained <= 1.0) {
        return Err(ClassifierError::InvalidParameter(format!(
            "retained fraction {retained} outside (0, 1]"
        )));
    }
    let d = check_samples(samples)?;
    let n = samples.len();
    if n < 2 {
        return Err(ClassifierError::TooFewSamples { needed: 2, found: n });
    }
    let mut mean = vec![0.0; d];
    for s in samples {
        for (m, v) in mean.iter_mut().zip(s) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let centered = DMatrix::from_fn(n, d, |i, j| samples[i][j] - mean[j]);
    let cov = (centered.transpose() * &centered) / (n as f64 - 1.0);
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i].max(0.0)).collect();
    let total: f64 = sorted.iter().sum();
    if total <= 0.0 {
        return Err(ClassifierError::Degenerate("all samples are identical".into()));
    }
    let k = components_for(&sorted, retained);

    let mut components = Vec::with_capacity(k * d);
    for &col in &order[..k] {
        let v = eig.eigenvectors.column(col);
        let norm = v.norm();
        let pivot = v.iter().enumerate().fold(0, |best, (i, x)| if x.abs() > v[best].abs() { i } else { best });
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        components.extend(v.iter().map(|x| sign * x / norm));
    }
    Ok(PcaModel {
        k,
        d,
        mean,
        components,
        eigenvalues: sorted[..k].to_vec(),
        total_variance: total,
        retained,
    })
}
