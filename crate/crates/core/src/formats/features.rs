//! Feature CSV: `video_id,frame_index,f00..f25` for quality vectors or
//! `video_id,frame_index,p0000..` for raw pixels, one row per sampled frame.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use crate::iqm::{IQM_DIM, IQM_SCHEMA_VERSION};

use super::{format_real, parse_real, read_file, FormatError};

/// Version of the raw-pixel layout (bilinear luminance, row-major).
pub const PIXEL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    Iqm,
    Pixels { side: usize },
}

impl FeatureKind {
    pub fn dim(self) -> usize {
        match self {
            FeatureKind::Iqm => IQM_DIM,
            FeatureKind::Pixels { side } => side * side,
        }
    }

    pub fn schema_version(self) -> u32 {
        match self {
            FeatureKind::Iqm => IQM_SCHEMA_VERSION,
            FeatureKind::Pixels { .. } => PIXEL_SCHEMA_VERSION,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Iqm => "iqm",
            FeatureKind::Pixels { .. } => "pixels",
        }
    }

    pub fn column_names(self) -> Vec<String> {
        match self {
            FeatureKind::Iqm => (0..IQM_DIM).map(|i| format!("f{i:02}")).collect(),
            FeatureKind::Pixels { side } => (0..side * side).map(|i| format!("p{i:04}")).collect(),
        }
    }

    fn from_columns(cols: &[&str]) -> Option<Self> {
        let iqm = FeatureKind::Iqm;
        if cols.iter().copied().eq(iqm.column_names().iter().map(String::as_str)) {
            return Some(iqm);
        }
        let side = (cols.len() as f64).sqrt().round() as usize;
        let px = FeatureKind::Pixels { side };
        (side > 0 && side * side == cols.len() && cols.iter().copied().eq(px.column_names().iter().map(String::as_str)))
            .then_some(px)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub video_id: String,
    pub frame_index: u64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub kind: FeatureKind,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn new(kind: FeatureKind) -> Self {
        Self { kind, rows: Vec::new() }
    }

    /// Rows grouped per video, preserving row order within each video.
    pub fn by_video(&self) -> BTreeMap<&str, Vec<&FeatureRow>> {
        let mut out: BTreeMap<&str, Vec<&FeatureRow>> = BTreeMap::new();
        for r in &self.rows {
            out.entry(r.video_id.as_str()).or_default().push(r);
        }
        out
    }
}

pub fn write_features(table: &FeatureTable) -> String {
    let mut out = String::from("video_id,frame_index");
    for c in table.kind.column_names() {
        out.push(',');
        out.push_str(&c);
    }
    out.push('\n');
    for r in &table.rows {
        out.push_str(&r.video_id);
        out.push(',');
        out.push_str(&r.frame_index.to_string());
        for v in &r.values {
            out.push(',');
            out.push_str(&format_real(*v));
        }
        out.push('\n');
    }
    out
}

pub fn parse_features<R: Read>(reader: R) -> Result<FeatureTable, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| FormatError::invalid(1, e.to_string()))?
        .clone();
    let cols: Vec<&str> = header.iter().collect();
    if cols.len() < 3 || cols[0] != "video_id" || cols[1] != "frame_index" {
        return Err(FormatError::invalid(1, "header must start with video_id,frame_index"));
    }
    let kind = FeatureKind::from_columns(&cols[2..])
        .ok_or_else(|| FormatError::invalid(1, "feature columns must be f00..f25 or p0000..p(side^2-1)"))?;
    let mut table = FeatureTable::new(kind);
    for rec in rdr.records() {
        let rec = rec.map_err(|e| FormatError::invalid(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != cols.len() {
            return Err(FormatError::invalid(
                line,
                format!("expected {} fields, found {}", cols.len(), rec.len()),
            ));
        }
        let frame_index = rec[1]
            .parse()
            .map_err(|_| FormatError::invalid(line, format!("bad frame_index {:?}", &rec[1])))?;
        let values = rec
            .iter()
            .skip(2)
            .zip(&cols[2..])
            .map(|(v, c)| parse_real(v, line, c))
            .collect::<Result<Vec<_>, _>>()?;
        table.rows.push(FeatureRow {
            video_id: rec[0].to_string(),
            frame_index,
            values,
        });
    }
    Ok(table)
}

pub fn read_features(path: &Path) -> Result<FeatureTable, FormatError> {
    parse_features(read_file(path)?.as_slice()).map_err(|e| e.with_path(path))
}
