//! Detection classifiers: PCA, Fisher LDA, linear SVM, per-video score
//! fusion, and the three end-to-end pipelines built from them.
//!
//! Every score in the crate follows one convention: higher means more
//! genuine.

mod lda;
mod pca;
mod pipeline;
mod svm;

use thiserror::Error;

pub use lda::{fisher_ratio, fit_lda, LdaModel, LDA_RIDGE};
pub use pca::{components_for, fit_pca, PcaModel};
pub use pipeline::{
    train_pipeline, train_from_table, PipelineKind, PipelineModel, TrainConfig, TrainSummary,
    DEFAULT_IQM_RETAINED, DEFAULT_PIXEL_RETAINED,
};
pub use svm::{fit_svm, Scaler, SvmFit, SvmModel, SvmParams};

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("need at least {needed} samples, found {found}")]
    TooFewSamples { needed: usize, found: usize },
    #[error("non-finite value in training data")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("training data contains a single class")]
    SingleClass,
    #[error("degenerate training data: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("feature schema mismatch: {0}")]
    Schema(String),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
    #[error("no frame scores to fuse")]
    EmptyScores,
}

/// Binary training label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Genuine,
    Attack,
}

impl Class {
    /// `+1` for genuine, `-1` for attack.
    pub fn sign(self) -> f64 {
        match self {
            Class::Genuine => 1.0,
            Class::Attack => -1.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Class::Genuine => Class::Attack,
            Class::Attack => Class::Genuine,
        }
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Common dimension of a non-empty, finite, rectangular sample set.
pub(crate) fn check_samples(samples: &[Vec<f64>]) -> Result<usize, ClassifierError> {
    let first = samples.first().ok_or(ClassifierError::TooFewSamples { needed: 1, found: 0 })?;
    let d = first.len();
    if d == 0 {
        return Err(ClassifierError::DimensionMismatch { expected: 1, found: 0 });
    }
    for s in samples {
        if s.len() != d {
            return Err(ClassifierError::DimensionMismatch {
                expected: d,
                found: s.len(),
            });
        }
        if s.iter().any(|v| !v.is_finite()) {
            return Err(ClassifierError::NonFinite);
        }
    }
    Ok(d)
}

/// Video-level score: the arithmetic mean of its frame scores.
pub fn fuse_video_score(frame_scores: &[f64]) -> Result<f64, ClassifierError> {
    if frame_scores.is_empty() {
        return Err(ClassifierError::EmptyScores);
    }
    if frame_scores.iter().any(|s| !s.is_finite()) {
        return Err(ClassifierError::NonFinite);
    }
    Ok(frame_scores.iter().sum::<f64>() / frame_scores.len() as f64)
}
