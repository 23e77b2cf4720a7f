//! Score CSV: `probe_video_id,claim_subject,trial_type,score`.

use std::io::Read;
use std::path::Path;

use crate::evaluation::{ScoreContext, ScoreRecord, ScoreSet, TrialType};

use super::{format_real, parse_real, read_file, FormatError};

const HEADER: [&str; 4] = ["probe_video_id", "claim_subject", "trial_type", "score"];

pub fn write_scores(scores: &ScoreSet) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in scores.records() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.probe_video_id,
            r.claim_subject,
            r.trial_type,
            format_real(r.score)
        ));
    }
    out
}

/// Reads a score file. The context is inferred: tampered-only files are
/// tampered sets, files without tampered trials are licit, mixed files are
/// detection sets.
pub fn parse_scores<R: Read>(reader: R) -> Result<ScoreSet, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr.headers().map_err(|e| FormatError::invalid(1, e.to_string()))?;
    if !header.iter().eq(HEADER) {
        return Err(FormatError::invalid(1, format!("header must be {}", HEADER.join(","))));
    }
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::invalid(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != HEADER.len() {
            return Err(FormatError::invalid(line, format!("expected 4 fields, found {}", rec.len())));
        }
        let trial_type: TrialType = rec[2].parse().map_err(|e: String| FormatError::invalid(line, e))?;
        records.push(ScoreRecord::new(
            &rec[0],
            &rec[1],
            trial_type,
            parse_real(&rec[3], line, "score")?,
        ));
    }
    let tampered = records.iter().filter(|r| r.trial_type == TrialType::Tampered).count();
    let context = if tampered == 0 {
        ScoreContext::Licit
    } else if tampered == records.len() {
        ScoreContext::Tampered
    } else {
        ScoreContext::Detection
    };
    ScoreSet::new(records, context).map_err(|e| FormatError::Schema(e.to_string()))
}

pub fn read_scores(path: &Path) -> Result<ScoreSet, FormatError> {
    parse_scores(read_file(path)?.as_slice()).map_err(|e| e.with_path(path))
}
