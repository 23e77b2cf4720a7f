//! Verification and detection metrics, and the licit/tampered protocol over
//! per-video embeddings.
//!
//! Scores follow one convention everywhere: higher means more genuine.

mod metrics;
mod protocol;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use metrics::{det_curve, eer, evaluate, far_frr, frr_at_far, vulnerability, EvalReport, VulnReport};
pub use protocol::{
    cosine_score, enroll, enroll_subjects, run_licit, run_tampered, EmbeddingTable, DEFAULT_ENROLL_COUNT,
};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("score set has no {0} records")]
    EmptyClass(&'static str),
    #[error("non-finite score for probe {0:?}")]
    NonFinite(String),
    #[error("{context} score set cannot hold {trial} records")]
    Context { context: ScoreContext, trial: TrialType },
    #[error("target FAR must lie in (0, 1], got {0}")]
    TargetFar(f64),
    #[error("no embeddings to enroll")]
    EmptyEnrollment,
    #[error("embedding dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero-norm vector {0}")]
    ZeroNorm(String),
    #[error("missing embeddings for {} video(s): {}", .0.len(), .0.join(", "))]
    MissingEmbeddings(Vec<String>),
    #[error("{0}")]
    Protocol(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrialType {
    Genuine,
    Impostor,
    Tampered,
}

impl TrialType {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialType::Genuine => "genuine",
            TrialType::Impostor => "impostor",
            TrialType::Tampered => "tampered",
        }
    }
}

impl fmt::Display for TrialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TrialType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "genuine" => Ok(TrialType::Genuine),
            "impostor" => Ok(TrialType::Impostor),
            "tampered" => Ok(TrialType::Tampered),
            _ => Err(format!("unknown trial_type {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreContext {
    Licit,
    Tampered,
    Detection,
}

impl ScoreContext {
    fn allows(self, t: TrialType) -> bool {
        match self {
            ScoreContext::Licit => t != TrialType::Tampered,
            ScoreContext::Tampered => t == TrialType::Tampered,
            ScoreContext::Detection => true,
        }
    }
}

impl fmt::Display for ScoreContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreContext::Licit => "licit",
            ScoreContext::Tampered => "tampered",
            ScoreContext::Detection => "detection",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub probe_video_id: String,
    pub claim_subject: String,
    pub trial_type: TrialType,
    pub score: f64,
}

impl ScoreRecord {
    pub fn new(probe: impl Into<String>, claim: impl Into<String>, trial_type: TrialType, score: f64) -> Self {
        Self {
            probe_video_id: probe.into(),
            claim_subject: claim.into(),
            trial_type,
            score,
        }
    }
}

/// Immutable list of trial scores. Records that are not genuine count as
/// the negative class (impostors, or attacks in detection sets).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSet {
    records: Vec<ScoreRecord>,
    context: ScoreContext,
}

impl ScoreSet {
    pub fn new(records: Vec<ScoreRecord>, context: ScoreContext) -> Result<Self, EvalError> {
        for r in &records {
            if !r.score.is_finite() {
                return Err(EvalError::NonFinite(r.probe_video_id.clone()));
            }
            if !context.allows(r.trial_type) {
                return Err(EvalError::Context {
                    context,
                    trial: r.trial_type,
                });
            }
        }
        Ok(Self { records, context })
    }

    /// Unlabelled convenience constructor for metric work.
    pub fn from_scores(genuine: &[f64], negative: &[f64]) -> Result<Self, EvalError> {
        let rec = |(i, s): (usize, &f64), t| ScoreRecord::new(format!("p{i}"), "", t, *s);
        let records = genuine
            .iter()
            .enumerate()
            .map(|x| rec(x, TrialType::Genuine))
            .chain(negative.iter().enumerate().map(|x| rec(x, TrialType::Impostor)))
            .collect();
        Self::new(records, ScoreContext::Licit)
    }

    pub fn records(&self) -> &[ScoreRecord] {
        &self.records
    }

    pub fn context(&self) -> ScoreContext {
        self.context
    }

    pub fn genuine_scores(&self) -> Vec<f64> {
        self.scores_where(|t| t == TrialType::Genuine)
    }

    pub fn negative_scores(&self) -> Vec<f64> {
        self.scores_where(|t| t != TrialType::Genuine)
    }

    fn scores_where(&self, keep: impl Fn(TrialType) -> bool) -> Vec<f64> {
        self.records.iter().filter(|r| keep(r.trial_type)).map(|r| r.score).collect()
    }

    /// Applies `f` to every score, keeping the records otherwise unchanged.
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> Result<Self, EvalError> {
        let records = self
            .records
            .iter()
            .map(|r| ScoreRecord {
                score: f(r.score),
                ..r.clone()
            })
            .collect();
        Self::new(records, self.context)
    }
}
