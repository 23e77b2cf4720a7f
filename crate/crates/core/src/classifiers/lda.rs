use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{check_samples, dot, Class, ClassifierError};

/// Two-class Fisher discriminant. Scores are `polarity * w.x`, higher means
/// more genuine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    pub weights: Vec<f64>,
    pub polarity: i8,
    /// Midpoint of the projected class means. Informational; scores are
    /// not shifted by it.
    pub midpoint: f64,
}

/// Ridge added to the within-class scatter, relative to its mean diagonal.
pub const LDA_RIDGE: f64 = 1e-6;

impl LdaModel {
    pub fn score(&self, x: &[f64]) -> Result<f64, ClassifierError> {
        if x.len() != self.weights.len() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.weights.len(),
                found: x.len(),
            });
        }
        Ok(self.polarity as f64 * dot(&self.weights, x))
    }

    pub(crate) fn check(&self) -> Result<(), ClassifierError> {
        if self.weights.iter().all(|w| *w == 0.0) || !matches!(self.polarity, -1 | 1) {
            return Err(ClassifierError::Inconsistent("lda stage has zero weights or bad polarity".into()));
        }
        Ok(())
    }
}

/// `w = (S_w + lambda I)^-1 (mu_genuine - mu_attack)`, `lambda = 1e-6 tr(S_w) / k`.
pub fn fit_lda(samples: &[Vec<f64>], classes: &[Class]) -> Result<LdaModel, ClassifierError> {
    let k = check_samples(samples)?;
    if classes.len() != samples.len() {
        return Err(ClassifierError::DimensionMismatch {
            expected: samples.len(),
            found: classes.len(),
        });
    }
    let count = |c| classes.iter().filter(|&&x| x == c).count();
    let (ng, na) = (count(Class::Genuine), count(Class::Attack));
    if ng == 0 || na == 0 {
        return Err(ClassifierError::SingleClass);
    }
    if ng < 2 || na < 2 {
        return Err(ClassifierError::TooFewSamples { needed: 2, found: ng.min(na) });
    }
    let class_mean = |c: Class| {
        let mut m = DVector::zeros(k);
        for (s, _) in samples.iter().zip(classes).filter(|(_, &x)| x == c) {
            m += DVector::from_column_slice(s);
        }
        m / count(c) as f64
    };
    let mu_g = class_mean(Class::Genuine);
    let mu_a = class_mean(Class::Attack);
    let mut scatter = DMatrix::zeros(k, k);
    for (s, c) in samples.iter().zip(classes) {
        let mu = if *c == Class::Genuine { &mu_g } else { &mu_a };
        let d = DVector::from_column_slice(s) - mu;
        scatter.ger(1.0, &d, &d, 1.0);
    }
    let ridge = LDA_RIDGE * scatter.trace() / k as f64;
    let mut reg = scatter.clone();
    for i in 0..k {
        reg[(i, i)] += if ridge > 0.0 { ridge } else { LDA_RIDGE };
    }
    let diff = &mu_g - &mu_a;
    let w = match reg.clone().cholesky() {
        Some(ch) => ch.solve(&diff),
        None => reg
            .lu()
            .solve(&diff)
            .ok_or_else(|| ClassifierError::Degenerate("singular within-class scatter".into()))?,
    };
    if w.iter().all(|v| *v == 0.0) {
        return Err(ClassifierError::Degenerate("class means coincide".into()));
    }
    let weights: Vec<f64> = w.iter().copied().collect();
    let mean_g = dot(&weights, mu_g.as_slice());
    let mean_a = dot(&weights, mu_a.as_slice());
    let polarity: i8 = if mean_g > mean_a { 1 } else { -1 };
    Ok(LdaModel {
        weights,
        polarity,
        midpoint: polarity as f64 * (mean_g + mean_a) / 2.0,
    })
}

/// Between-class separation over within-class spread along `w`.
pub fn fisher_ratio(samples: &[Vec<f64>], classes: &[Class], w: &[f64]) -> f64 {
    let proj: Vec<(f64, Class)> = samples.iter().zip(classes).map(|(s, c)| (dot(w, s), *c)).collect();
    let stats = |c: Class| {
        let v: Vec<f64> = proj.iter().filter(|p| p.1 == c).map(|p| p.0).collect();
        let m = v.iter().sum::<f64>() / v.len() as f64;
        (m, v.iter().map(|x| (x - m).powi(2)).sum::<f64>())
    };
    let (mg, sg) = stats(Class::Genuine);
    let (ma, sa) = stats(Class::Attack);
    (mg - ma).powi(2) / (sg + sa)
}
