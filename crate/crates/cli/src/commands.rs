use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use dfdetect::classifiers::{train_from_table, PipelineKind, SvmParams, TrainConfig};
use dfdetect::evaluation::{
    evaluate, run_licit, run_tampered, vulnerability, ScoreContext, ScoreRecord, ScoreSet, TrialType,
    DEFAULT_ENROLL_COUNT,
};
use dfdetect::formats::{
    load_model, read_embeddings, read_features, read_scores, report_to_json, save_model, write_atomic,
    write_features, write_scores, FeatureKind, FeatureRow, FeatureTable, Report,
};
use dfdetect::frame_io::{load_frame, parse_manifest, sample_frames, Manifest, Split};
use dfdetect::iqm::{extract_iqm_vector, extract_pixel_vector, DEFAULT_PIXEL_SIDE};
use log::info;
use rayon::prelude::*;

use crate::{Command, Features};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Extract {
            manifest,
            features,
            frames_per_video,
            out,
        } => extract(&manifest, features, frames_per_video as usize, &out),
        Command::Train {
            manifest,
            input,
            pipeline,
            svm_c,
            retained,
            out,
        } => train(&manifest, &input, pipeline.into(), svm_c, retained, &out),
        Command::Score {
            manifest,
            input,
            model,
            out,
        } => score(&manifest, &input, &model, &out),
        Command::Evaluate { input, out, det } => evaluate_scores(&input, &out, det.as_deref()),
        Command::Vulnerability {
            manifest,
            input,
            label,
            out,
            det,
        } => vulnerability_report(&manifest, &input, label.into(), &out, det.as_deref()),
    }
}

fn manifest(path: &Path) -> Result<Manifest> {
    Ok(parse_manifest(path)?)
}

fn extract(manifest_path: &Path, features: Features, count: usize, out: &Path) -> Result<()> {
    let manifest = manifest(manifest_path)?;
    ensure!(!manifest.is_empty(), "{}: no entries", manifest_path.display());
    let kind = match features {
        Features::Iqm => FeatureKind::Iqm,
        Features::Pixels => FeatureKind::Pixels { side: DEFAULT_PIXEL_SIDE },
    };
    let mut jobs = Vec::new();
    for e in manifest.entries() {
        let location = manifest.frames_location(e);
        let frames = sample_frames(&location, count).with_context(|| format!("video {}", e.video_id))?;
        jobs.extend(frames.into_iter().map(|f| (e.video_id.as_str(), f)));
    }
    info!("extracting {} features from {} frames", kind.name(), jobs.len());
    let rows = jobs
        .par_iter()
        .map(|(video_id, f)| -> Result<FeatureRow> {
            let frame = load_frame(&f.path)?;
            let values = match kind {
                FeatureKind::Iqm => extract_iqm_vector(&frame)
                    .with_context(|| f.path.display().to_string())?
                    .values
                    .to_vec(),
                FeatureKind::Pixels { side } => extract_pixel_vector(&frame, side),
            };
            Ok(FeatureRow {
                video_id: video_id.to_string(),
                frame_index: f.index,
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_atomic(out, write_features(&FeatureTable { kind, rows }).as_bytes())?;
    info!("wrote {}", out.display());
    Ok(())
}

fn train(
    manifest_path: &Path,
    input: &Path,
    kind: PipelineKind,
    svm_c: f64,
    retained: Option<f64>,
    out: &Path,
) -> Result<()> {
    if let Some(r) = retained {
        ensure!(r > 0.0 && r <= 1.0, "--retained must lie in (0, 1], got {r}");
    }
    ensure!(svm_c > 0.0 && svm_c.is_finite(), "--svm-c must be positive, got {svm_c}");
    let manifest = manifest(manifest_path)?;
    let table = read_features(input)?;
    let config = TrainConfig {
        retained,
        svm: SvmParams {
            c: svm_c,
            ..SvmParams::default()
        },
    };
    let (model, summary) = train_from_table(kind, &table, &manifest, &config)?;
    save_model(out, &model)?;
    println!("{summary}");
    Ok(())
}

fn score(manifest_path: &Path, input: &Path, model_path: &Path, out: &Path) -> Result<()> {
    let manifest = manifest(manifest_path)?;
    let table = read_features(input)?;
    let model = load_model(model_path)?;
    model.check_features(table.kind)?;
    let by_video = table.by_video();
    let mut records = Vec::new();
    let mut missing = Vec::new();
    for e in manifest.split(Split::Test) {
        let Some(rows) = by_video.get(e.video_id.as_str()) else {
            missing.push(e.video_id.as_str());
            continue;
        };
        let score = model
            .score_video(rows.iter().map(|r| r.values.as_slice()))
            .with_context(|| format!("video {}", e.video_id))?;
        let trial = if e.label.is_attack() { TrialType::Tampered } else { TrialType::Genuine };
        records.push(ScoreRecord::new(e.video_id.as_str(), e.claimed_subject.as_str(), trial, score));
    }
    if !missing.is_empty() {
        bail!("{}: no features for {}", input.display(), missing.join(", "));
    }
    ensure!(!records.is_empty(), "{}: no test-split videos", manifest_path.display());
    let set = ScoreSet::new(records, ScoreContext::Detection)?;
    write_atomic(out, write_scores(&set).as_bytes())?;
    info!("scored {} videos", set.records().len());
    Ok(())
}

/// Writes the report, then the optional DET file; a failure on the second
/// write removes the first.
fn write_report(report: &Report, out: &Path, det: Option<&Path>) -> Result<()> {
    let json = report_to_json(report)?;
    write_atomic(out, json.as_bytes())?;
    if let Some(det) = det {
        if let Err(e) = write_atomic(det, report.det_csv().as_bytes()) {
            let _ = std::fs::remove_file(out);
            return Err(e.into());
        }
    }
    Ok(())
}

fn evaluate_scores(input: &Path, out: &Path, det: Option<&Path>) -> Result<()> {
    let scores = read_scores(input)?;
    let eval = evaluate(&scores).with_context(|| input.display().to_string())?;
    info!("EER {:.4} at theta {}", eval.eer, eval.theta_eer);
    write_report(&Report::new(&eval), out, det)
}

fn vulnerability_report(
    manifest_path: &Path,
    input: &Path,
    label: dfdetect::frame_io::Label,
    out: &Path,
    det: Option<&Path>,
) -> Result<()> {
    let manifest = manifest(manifest_path)?;
    let table = read_embeddings(input)?;
    let licit = run_licit(&manifest, &table, DEFAULT_ENROLL_COUNT)?;
    let tampered = run_tampered(&manifest, &table, label, DEFAULT_ENROLL_COUNT)?;
    let eval = evaluate(&licit)?;
    let vuln = vulnerability(&licit, &tampered)?;
    info!(
        "licit EER {:.4}, {} FAR {:.4} over {} probes",
        vuln.licit_eer, label, vuln.tampered_far, vuln.n_tampered
    );
    write_report(&Report::with_vulnerability(&eval, &vuln), out, det)
}
