//! The synthetic detection experiment: extract features for sampled
//! frames, train each pipeline on the train split, score test videos, and
//! report the test EER.

use std::collections::BTreeMap;

use dfdetect::classifiers::{train_from_table, PipelineKind, TrainConfig};
use dfdetect::evaluation::{eer, ScoreContext, ScoreRecord, ScoreSet, TrialType};
use dfdetect::formats::{FeatureKind, FeatureRow, FeatureTable};
use dfdetect::frame_io::{sample_indices, Manifest, Split};
use dfdetect::iqm::{extract_iqm_vector, extract_pixel_vector, DEFAULT_PIXEL_SIDE};
use dfdetect::synth::SynthDataset;
use rayon::prelude::*;

pub const FRAMES_PER_VIDEO: usize = 20;

pub fn features(data: &SynthDataset, kind: FeatureKind) -> FeatureTable {
    let rows: Vec<FeatureRow> = data
        .videos
        .par_iter()
        .flat_map_iter(|v| {
            sample_indices(v.frames.len(), FRAMES_PER_VIDEO).into_iter().map(move |i| {
                let values = match kind {
                    FeatureKind::Iqm => extract_iqm_vector(&v.frames[i]).unwrap().values.to_vec(),
                    FeatureKind::Pixels { side } => extract_pixel_vector(&v.frames[i], side),
                };
                FeatureRow {
                    video_id: v.entry.video_id.clone(),
                    frame_index: i as u64,
                    values,
                }
            })
        })
        .collect();
    FeatureTable { kind, rows }
}

pub fn test_scores(kind: PipelineKind, table: &FeatureTable, manifest: &Manifest) -> ScoreSet {
    let (model, _) = train_from_table(kind, table, manifest, &TrainConfig::default()).unwrap();
    let by_video = table.by_video();
    let records = manifest
        .split(Split::Test)
        .map(|e| {
            let frames: Vec<&[f64]> = by_video[e.video_id.as_str()].iter().map(|r| r.values.as_slice()).collect();
            let score = model.score_video(frames).unwrap();
            let t = if e.label.is_attack() { TrialType::Tampered } else { TrialType::Genuine };
            ScoreRecord::new(e.video_id.as_str(), e.claimed_subject.as_str(), t, score)
        })
        .collect();
    ScoreSet::new(records, ScoreContext::Detection).unwrap()
}

/// Test EER of every pipeline.
pub fn run(data: &SynthDataset) -> BTreeMap<PipelineKind, f64> {
    let manifest = data.manifest(".").unwrap();
    let iqm = features(data, FeatureKind::Iqm);
    let px = features(data, FeatureKind::Pixels { side: DEFAULT_PIXEL_SIDE });
    let mut out = BTreeMap::new();
    for kind in PipelineKind::ALL {
        let table = if kind.uses_pixels() { &px } else { &iqm };
        out.insert(kind, eer(&test_scores(kind, table, &manifest)).unwrap().0);
    }
    out
}
