use std::collections::BTreeMap;

use crate::frame_io::{Label, Manifest};

use super::{EvalError, ScoreContext, ScoreRecord, ScoreSet, TrialType};

pub const DEFAULT_ENROLL_COUNT: usize = 2;

/// One embedding per video, all of the same dimension and nonzero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, video_id: impl Into<String>, v: Vec<f64>) -> Result<(), EvalError> {
        let video_id = video_id.into();
        if v.is_empty() {
            return Err(EvalError::Protocol(format!("{video_id}: empty embedding")));
        }
        if !self.vectors.is_empty() && v.len() != self.dim {
            return Err(EvalError::DimensionMismatch(self.dim, v.len()));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(EvalError::NonFinite(video_id));
        }
        if norm(&v) == 0.0 {
            return Err(EvalError::ZeroNorm(video_id));
        }
        if self.vectors.contains_key(&video_id) {
            return Err(EvalError::Protocol(format!("duplicate embedding for {video_id}")));
        }
        self.dim = v.len();
        self.vectors.insert(video_id, v);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, video_id: &str) -> Option<&[f64]> {
        self.vectors.get(video_id).map(Vec::as_slice)
    }

    /// Entries in `video_id` order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.vectors.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    fn require(&self, ids: &[&str]) -> Result<(), EvalError> {
        let missing: Vec<String> = ids
            .iter()
            .filter(|id| !self.vectors.contains_key(**id))
            .map(|id| id.to_string())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(EvalError::MissingEmbeddings(missing))
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Element-wise mean of the given embeddings.
pub fn enroll(embeddings: &[&[f64]]) -> Result<Vec<f64>, EvalError> {
    let first = embeddings.first().ok_or(EvalError::EmptyEnrollment)?;
    let mut sum = vec![0.0; first.len()];
    for e in embeddings {
        if e.len() != sum.len() {
            return Err(EvalError::DimensionMismatch(sum.len(), e.len()));
        }
        for (s, x) in sum.iter_mut().zip(*e) {
            *s += x;
        }
    }
    let n = embeddings.len() as f64;
    Ok(sum.into_iter().map(|s| s / n).collect())
}

/// Cosine similarity, clamped to [-1, 1].
pub fn cosine_score(model: &[f64], probe: &[f64]) -> Result<f64, EvalError> {
    if model.len() != probe.len() {
        return Err(EvalError::DimensionMismatch(model.len(), probe.len()));
    }
    let sq = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let (nm, np) = (sq(model), sq(probe));
    if nm == 0.0 {
        return Err(EvalError::ZeroNorm("model".into()));
    }
    if np == 0.0 {
        return Err(EvalError::ZeroNorm("probe".into()));
    }
    let dot: f64 = model.iter().zip(probe).map(|(a, b)| a * b).sum();
    Ok((dot / (nm * np).sqrt()).clamp(-1.0, 1.0))
}

/// Genuine videos of each subject, sorted by video_id.
fn genuine_by_subject(manifest: &Manifest) -> BTreeMap<&str, Vec<&str>> {
    let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in manifest.entries().iter().filter(|e| e.label == Label::Genuine) {
        out.entry(e.claimed_subject.as_str()).or_default().push(e.video_id.as_str());
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    out
}

/// Per-subject models from the lexicographically first `enroll_count`
/// genuine videos of each subject.
pub fn enroll_subjects(
    manifest: &Manifest,
    table: &EmbeddingTable,
    enroll_count: usize,
) -> Result<BTreeMap<String, Vec<f64>>, EvalError> {
    if enroll_count == 0 {
        return Err(EvalError::Protocol("enroll_count must be at least 1".into()));
    }
    let subjects = genuine_by_subject(manifest);
    let mut models = BTreeMap::new();
    for (subject, videos) in &subjects {
        if videos.len() <= enroll_count {
            return Err(EvalError::Protocol(format!(
                "subject {subject} has {} genuine videos, need more than {enroll_count}",
                videos.len()
            )));
        }
        let ids = &videos[..enroll_count];
        table.require(ids)?;
        let vs: Vec<&[f64]> = ids.iter().map(|id| table.get(id).expect("checked")).collect();
        let model = enroll(&vs)?;
        if norm(&model) == 0.0 {
            return Err(EvalError::ZeroNorm(format!("model of subject {subject}")));
        }
        models.insert(subject.to_string(), model);
    }
    Ok(models)
}

/// Licit scenario: the probes of a subject are its genuine videos left
/// after enrollment; they are genuine trials against their own model and
/// impostor trials against every other model.
pub fn run_licit(manifest: &Manifest, table: &EmbeddingTable, enroll_count: usize) -> Result<ScoreSet, EvalError> {
    let subjects = genuine_by_subject(manifest);
    let all: Vec<&str> = subjects.values().flatten().copied().collect();
    table.require(&all)?;
    let models = enroll_subjects(manifest, table, enroll_count)?;
    let mut records = Vec::new();
    for (claim, model) in &models {
        for (subject, videos) in &subjects {
            let trial = if subject == claim { TrialType::Genuine } else { TrialType::Impostor };
            for id in &videos[enroll_count..] {
                let score = cosine_score(model, table.get(id).expect("checked"))?;
                records.push(ScoreRecord::new(*id, claim.as_str(), trial, score));
            }
        }
    }
    ScoreSet::new(records, ScoreContext::Licit)
}

/// Tampered scenario: every video with `label` probes the model of its
/// claimed subject, built as in [`run_licit`].
pub fn run_tampered(
    manifest: &Manifest,
    table: &EmbeddingTable,
    label: Label,
    enroll_count: usize,
) -> Result<ScoreSet, EvalError> {
    if !label.is_attack() {
        return Err(EvalError::Protocol(format!("{label} is not a deepfake label")));
    }
    let mut probes: Vec<_> = manifest.entries().iter().filter(|e| e.label == label).collect();
    if probes.is_empty() {
        return Err(EvalError::Protocol(format!("manifest has no {label} videos")));
    }
    probes.sort_by(|a, b| a.video_id.cmp(&b.video_id));
    let ids: Vec<&str> = probes.iter().map(|e| e.video_id.as_str()).collect();
    table.require(&ids)?;
    let models = enroll_subjects(manifest, table, enroll_count)?;
    let mut records = Vec::with_capacity(probes.len());
    for e in probes {
        let model = models.get(&e.claimed_subject).ok_or_else(|| {
            EvalError::Protocol(format!(
                "{}: claimed subject {} has no enrollment model",
                e.video_id, e.claimed_subject
            ))
        })?;
        let score = cosine_score(model, table.get(&e.video_id).expect("checked"))?;
        records.push(ScoreRecord::new(
            e.video_id.as_str(),
            e.claimed_subject.as_str(),
            TrialType::Tampered,
            score,
        ));
    }
    ScoreSet::new(records, ScoreContext::Tampered)
}
