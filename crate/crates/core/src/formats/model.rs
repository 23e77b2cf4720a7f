//! Model JSON: `kind`, `schema_version`, `created`, `feature_dim` and one
//! object per fitted stage.

use std::path::Path;

use crate::classifiers::{PipelineKind, PipelineModel};
use crate::iqm::IQM_SCHEMA_VERSION;

use super::features::PIXEL_SCHEMA_VERSION;
use super::{read_file, to_json_string, write_atomic, FormatError};

fn expected_schema(kind: PipelineKind) -> u32 {
    if kind.uses_pixels() {
        PIXEL_SCHEMA_VERSION
    } else {
        IQM_SCHEMA_VERSION
    }
}

pub fn model_to_json(model: &PipelineModel) -> Result<String, FormatError> {
    to_json_string(model)
}

/// Parses and validates a model; a `schema_version` other than the current
/// one for the model's feature family is rejected.
pub fn model_from_json(text: &str) -> Result<PipelineModel, FormatError> {
    let model: PipelineModel = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let want = expected_schema(model.kind);
    if model.schema_version != want {
        return Err(FormatError::Schema(format!(
            "model schema_version {} does not match supported version {want}",
            model.schema_version
        )));
    }
    model.validate().map_err(|e| FormatError::Schema(e.to_string()))?;
    Ok(model)
}

pub fn save_model(path: &Path, model: &PipelineModel) -> Result<(), FormatError> {
    write_atomic(path, model_to_json(model)?.as_bytes())
}

pub fn load_model(path: &Path) -> Result<PipelineModel, FormatError> {
    let bytes = read_file(path)?;
    let text = String::from_utf8(bytes).map_err(|e| FormatError::Json(format!("{}: {e}", path.display())))?;
    model_from_json(&text).map_err(|e| match e {
        FormatError::Json(m) => FormatError::Json(format!("{}: {m}", path.display())),
        FormatError::Schema(m) => FormatError::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::{train_pipeline, Class, TrainConfig};
    use crate::formats::FeatureKind;

    fn model(kind: PipelineKind, features: FeatureKind) -> PipelineModel {
        let d = features.dim();
        let x: Vec<Vec<f64>> = (0..30)
            .map(|i| (0..d).map(|j| ((i * 13 + j * 7) % 17) as f64 + if i % 2 == 0 { 3.0 } else { 0.0 }).collect())
            .collect();
        let y: Vec<Class> = (0..30).map(|i| if i % 2 == 0 { Class::Genuine } else { Class::Attack }).collect();
        train_pipeline(kind, features, &x, &y, &TrainConfig::default()).unwrap().0
    }

    #[test]
    fn round_trip_is_exact() {
        for (k, f) in [
            (PipelineKind::IqmSvm, FeatureKind::Iqm),
            (PipelineKind::IqmPcaLda, FeatureKind::Iqm),
            (PipelineKind::PixelsPcaLda, FeatureKind::Pixels { side: 3 }),
        ] {
            let m = model(k, f);
            let text = model_to_json(&m).unwrap();
            assert_eq!(model_from_json(&text).unwrap(), m);
            assert_eq!(model_to_json(&model_from_json(&text).unwrap()).unwrap(), text);
        }
    }

    #[test]
    fn field_names() {
        let text = model_to_json(&model(PipelineKind::IqmSvm, FeatureKind::Iqm)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "iqm_svm");
        for f in ["weights", "bias", "scaler_mean", "scaler_std", "C", "tolerance"] {
            assert!(v["svm"].get(f).is_some(), "{f}");
        }
        let text = model_to_json(&model(PipelineKind::IqmPcaLda, FeatureKind::Iqm)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for f in ["mean", "components", "k", "d"] {
            assert!(v["pca"].get(f).is_some(), "{f}");
        }
        assert!(v["lda"].get("polarity").is_some());
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let mut m = model(PipelineKind::IqmSvm, FeatureKind::Iqm);
        m.schema_version += 1;
        let err = model_from_json(&model_to_json(&m).unwrap()).unwrap_err();
        assert!(matches!(err, FormatError::Schema(_)), "{err}");
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.json");
        let m = model(PipelineKind::IqmSvm, FeatureKind::Iqm);
        save_model(&p, &m).unwrap();
        assert_eq!(load_model(&p).unwrap(), m);
        assert!(matches!(load_model(&dir.path().join("none.json")), Err(FormatError::Io { .. })));
    }
}
