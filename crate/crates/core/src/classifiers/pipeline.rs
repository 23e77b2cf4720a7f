use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formats::{FeatureKind, FeatureTable};
use crate::frame_io::{Manifest, Split};

use super::{
    check_samples, fit_lda, fit_pca, fit_svm, fuse_video_score, Class, ClassifierError, LdaModel, PcaModel,
    SvmModel, SvmParams,
};

pub const DEFAULT_PIXEL_RETAINED: f64 = 0.99;
pub const DEFAULT_IQM_RETAINED: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineKind {
    PixelsPcaLda,
    IqmPcaLda,
    IqmSvm,
}

impl PipelineKind {
    pub const ALL: [PipelineKind; 3] = [PipelineKind::PixelsPcaLda, PipelineKind::IqmPcaLda, PipelineKind::IqmSvm];

    pub fn as_str(self) -> &'static str {
        match self {
            PipelineKind::PixelsPcaLda => "pixels_pca_lda",
            PipelineKind::IqmPcaLda => "iqm_pca_lda",
            PipelineKind::IqmSvm => "iqm_svm",
        }
    }

    pub fn uses_pixels(self) -> bool {
        self == PipelineKind::PixelsPcaLda
    }

    pub fn default_retained(self) -> f64 {
        if self.uses_pixels() {
            DEFAULT_PIXEL_RETAINED
        } else {
            DEFAULT_IQM_RETAINED
        }
    }

    fn accepts(self, features: FeatureKind) -> bool {
        matches!(features, FeatureKind::Pixels { .. }) == self.uses_pixels()
    }
}

impl fmt::Display for PipelineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PipelineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PipelineKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown pipeline {s:?}"))
    }
}

/// A trained detector: optional PCA, then LDA or SVM.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineModel {
    pub kind: PipelineKind,
    pub schema_version: u32,
    pub created: String,
    pub feature_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pca: Option<PcaModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lda: Option<LdaModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svm: Option<SvmModel>,
}

impl PipelineModel {
    /// Checks that the stages present match `kind` and agree on dimensions.
    pub fn validate(&self) -> Result<(), ClassifierError> {
        let bad = |m: &str| Err(ClassifierError::Inconsistent(format!("{}: {m}", self.kind)));
        match (self.kind, &self.pca, &self.lda, &self.svm) {
            (PipelineKind::IqmSvm, None, None, Some(svm)) => {
                svm.check()?;
                if svm.weights.len() != self.feature_dim {
                    return bad("svm dimension differs from feature_dim");
                }
            }
            (PipelineKind::IqmPcaLda | PipelineKind::PixelsPcaLda, Some(pca), Some(lda), None) => {
                pca.check()?;
                lda.check()?;
                if pca.d != self.feature_dim || lda.weights.len() != pca.k {
                    return bad("pca/lda dimensions do not chain");
                }
            }
            _ => return bad("stages do not match the pipeline kind"),
        }
        Ok(())
    }

    /// Fails unless `features` is the family and size this model was trained on.
    pub fn check_features(&self, features: FeatureKind) -> Result<(), ClassifierError> {
        if !self.kind.accepts(features) {
            return Err(ClassifierError::Schema(format!(
                "{} pipeline cannot score {} features",
                self.kind,
                features.name()
            )));
        }
        if features.schema_version() != self.schema_version || features.dim() != self.feature_dim {
            return Err(ClassifierError::Schema(format!(
                "model expects schema {} with {} values, features have schema {} with {}",
                self.schema_version,
                self.feature_dim,
                features.schema_version(),
                features.dim()
            )));
        }
        Ok(())
    }

    pub fn score_frame(&self, x: &[f64]) -> Result<f64, ClassifierError> {
        match (&self.pca, &self.lda, &self.svm) {
            (Some(pca), Some(lda), _) => lda.score(&pca.transform(x)?),
            (_, _, Some(svm)) => svm.score(x),
            _ => Err(ClassifierError::Inconsistent("model has no scoring stage".into())),
        }
    }

    /// Mean of the frame scores of one video.
    pub fn score_video<'a>(&self, frames: impl IntoIterator<Item = &'a [f64]>) -> Result<f64, ClassifierError> {
        let scores = frames
            .into_iter()
            .map(|f| self.score_frame(f))
            .collect::<Result<Vec<_>, _>>()?;
        fuse_video_score(&scores)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrainConfig {
    /// PCA retained variance; `None` uses the pipeline default.
    pub retained: Option<f64>,
    pub svm: SvmParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainSummary {
    pub kind: PipelineKind,
    pub samples: usize,
    pub genuine: usize,
    pub attack: usize,
    pub dimensions: usize,
    pub pca_components: Option<usize>,
    pub explained_variance: Option<f64>,
    pub svm_passes: Option<usize>,
    pub svm_converged: Option<bool>,
}

impl fmt::Display for TrainSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pipeline {}: {} samples ({} genuine, {} attack), {} dimensions",
            self.kind, self.samples, self.genuine, self.attack, self.dimensions
        )?;
        if let (Some(k), Some(e)) = (self.pca_components, self.explained_variance) {
            write!(f, ", PCA k = {k} ({:.4} of variance)", e)?;
        }
        if let (Some(p), Some(c)) = (self.svm_passes, self.svm_converged) {
            write!(f, ", SVM passes = {p}{}", if c { "" } else { " (pass limit reached)" })?;
        }
        Ok(())
    }
}

/// Fits the stages of `kind` on frame-level samples.
pub fn train_pipeline(
    kind: PipelineKind,
    features: FeatureKind,
    samples: &[Vec<f64>],
    classes: &[Class],
    config: &TrainConfig,
) -> Result<(PipelineModel, TrainSummary), ClassifierError> {
    if !kind.accepts(features) {
        return Err(ClassifierError::Schema(format!(
            "{kind} pipeline cannot be trained on {} features",
            features.name()
        )));
    }
    let d = check_samples(samples)?;
    if d != features.dim() {
        return Err(ClassifierError::Schema(format!(
            "{} features have {} values, samples have {d}",
            features.name(),
            features.dim()
        )));
    }
    let genuine = classes.iter().filter(|c| **c == Class::Genuine).count();
    let attack = classes.len() - genuine;
    if genuine == 0 || attack == 0 {
        return Err(ClassifierError::SingleClass);
    }
    let mut model = PipelineModel {
        kind,
        schema_version: features.schema_version(),
        created: format!("dfdetect {}", env!("CARGO_PKG_VERSION")),
        feature_dim: d,
        pca: None,
        lda: None,
        svm: None,
    };
    let mut summary = TrainSummary {
        kind,
        samples: samples.len(),
        genuine,
        attack,
        dimensions: d,
        pca_components: None,
        explained_variance: None,
        svm_passes: None,
        svm_converged: None,
    };
    match kind {
        PipelineKind::IqmSvm => {
            let fit = fit_svm(samples, classes, config.svm)?;
            summary.svm_passes = Some(fit.passes);
            summary.svm_converged = Some(fit.converged);
            model.svm = Some(fit.model);
        }
        PipelineKind::IqmPcaLda | PipelineKind::PixelsPcaLda => {
            let retained = config.retained.unwrap_or(kind.default_retained());
            let pca = fit_pca(samples, retained)?;
            let projected = samples.iter().map(|s| pca.transform(s)).collect::<Result<Vec<_>, _>>()?;
            model.lda = Some(fit_lda(&projected, classes)?);
            summary.pca_components = Some(pca.k);
            summary.explained_variance = Some(pca.explained_ratio(pca.k));
            model.pca = Some(pca);
        }
    }
    Ok((model, summary))
}

/// Trains on every feature row belonging to a train-split video of
/// `manifest`. Rows of other videos are ignored.
pub fn train_from_table(
    kind: PipelineKind,
    table: &FeatureTable,
    manifest: &Manifest,
    config: &TrainConfig,
) -> Result<(PipelineModel, TrainSummary), ClassifierError> {
    let train: HashMap<&str, Class> = manifest
        .split(Split::Train)
        .map(|e| {
            let c = if e.label.is_attack() { Class::Attack } else { Class::Genuine };
            (e.video_id.as_str(), c)
        })
        .collect();
    let mut samples = Vec::new();
    let mut classes = Vec::new();
    for row in &table.rows {
        if let Some(c) = train.get(row.video_id.as_str()) {
            samples.push(row.values.clone());
            classes.push(*c);
        }
    }
    if samples.is_empty() {
        return Err(ClassifierError::TooFewSamples { needed: 2, found: 0 });
    }
    train_pipeline(kind, table.kind, &samples, &classes, config)
}
