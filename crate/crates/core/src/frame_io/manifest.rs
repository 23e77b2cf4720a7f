//! Dataset manifest: one CSV row per video.
//!
//! ```text
//! video_id,claimed_subject,source_subject,label,split,frames_path
//! s01_v01,s01,,genuine,train,frames/s01_v01
//! s01_from_s02_v01,s01,s02,deepfake_hq,train,frames/s01_from_s02_v01
//! ```
//!
//! `claimed_subject` is the identity whose face appears in the video (for a
//! face swap, the swapped-in face); `source_subject` is the person whose
//! video was tampered. Relative `frames_path` values resolve against the
//! manifest's directory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

pub const MANIFEST_HEADER: [&str; 6] = [
    "video_id",
    "claimed_subject",
    "source_subject",
    "label",
    "split",
    "frames_path",
];

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid manifest{}:\n  {}", .path.as_ref().map(|p| format!(" {}", p.display())).unwrap_or_default(), .problems.join("\n  "))]
    Invalid {
        path: Option<PathBuf>,
        problems: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Genuine,
    DeepfakeLq,
    DeepfakeHq,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Genuine => "genuine",
            Label::DeepfakeLq => "deepfake_lq",
            Label::DeepfakeHq => "deepfake_hq",
        }
    }

    pub fn is_attack(self) -> bool {
        self != Label::Genuine
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "genuine" => Ok(Label::Genuine),
            "deepfake_lq" => Ok(Label::DeepfakeLq),
            "deepfake_hq" => Ok(Label::DeepfakeHq),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            other => Err(format!("unknown split {other:?}")),
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VideoEntry {
    pub video_id: String,
    pub claimed_subject: String,
    pub source_subject: Option<String>,
    pub label: Label,
    pub split: Split,
    /// Directory holding `frame_NNNNNN.{pgm,ppm}` files, or a
    /// `dir/prefix%0Nd.ext` pattern.
    pub frames_path: PathBuf,
}

impl VideoEntry {
    fn check(&self) -> Result<(), String> {
        if self.video_id.is_empty() {
            return Err("empty video_id".into());
        }
        if self.claimed_subject.is_empty() {
            return Err(format!("{}: empty claimed_subject", self.video_id));
        }
        match (self.label, &self.source_subject) {
            (Label::Genuine, Some(src)) if *src != self.claimed_subject => Err(format!(
                "{}: genuine video with source_subject {src:?} different from claimed_subject {:?}",
                self.video_id, self.claimed_subject
            )),
            (Label::Genuine, _) => Ok(()),
            (label, None) => Err(format!("{}: {label} video requires source_subject", self.video_id)),
            (label, Some(src)) if *src == self.claimed_subject => Err(format!(
                "{}: {label} video has source_subject equal to claimed_subject {src:?}",
                self.video_id
            )),
            _ => Ok(()),
        }
    }
}

/// Validated list of videos.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    entries: Vec<VideoEntry>,
    base_dir: PathBuf,
}

impl Manifest {
    /// Validates entries built in code; frames paths resolve against `base_dir`.
    pub fn new(entries: Vec<VideoEntry>, base_dir: impl Into<PathBuf>) -> Result<Self, ManifestError> {
        let lines: Vec<u64> = (0..entries.len() as u64).map(|i| i + 2).collect();
        let problems = validate(&entries, &lines);
        if !problems.is_empty() {
            return Err(ManifestError::Invalid {
                path: None,
                problems: problems.into_iter().map(|(_, p)| p).collect(),
            });
        }
        Ok(Self {
            entries,
            base_dir: base_dir.into(),
        })
    }

    pub fn entries(&self) -> &[VideoEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    pub fn split(&self, split: Split) -> impl Iterator<Item = &VideoEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    pub fn get(&self, video_id: &str) -> Option<&VideoEntry> {
        self.entries.iter().find(|e| e.video_id == video_id)
    }

    /// `frames_path` of `entry`, resolved against the manifest directory.
    pub fn frames_location(&self, entry: &VideoEntry) -> PathBuf {
        if entry.frames_path.is_absolute() {
            entry.frames_path.clone()
        } else {
            self.base_dir.join(&entry.frames_path)
        }
    }

    /// Serializes back to the CSV layout.
    pub fn to_csv(&self) -> String {
        let mut out = MANIFEST_HEADER.join(",");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.video_id,
                e.claimed_subject,
                e.source_subject.as_deref().unwrap_or(""),
                e.label,
                e.split,
                e.frames_path.display()
            ));
        }
        out
    }
}

/// Problems keyed by line number; subject-level problems sort last.
fn validate(entries: &[VideoEntry], lines: &[u64]) -> Vec<(u64, String)> {
    let mut problems = Vec::new();
    let mut seen: BTreeMap<&str, u64> = BTreeMap::new();
    for (e, &line) in entries.iter().zip(lines) {
        if let Err(p) = e.check() {
            problems.push((line, format!("line {line}: {p}")));
        }
        if let Some(first) = seen.get(e.video_id.as_str()) {
            problems.push((
                line,
                format!("duplicate video_id {:?} on lines {first} and {line}", e.video_id),
            ));
        } else {
            seen.insert(&e.video_id, line);
        }
    }
    let subjects = |split| -> BTreeSet<&str> {
        entries
            .iter()
            .filter(|e| e.split == split)
            .map(|e| e.claimed_subject.as_str())
            .collect()
    };
    let train = subjects(Split::Train);
    let test = subjects(Split::Test);
    for s in train.intersection(&test) {
        problems.push((
            u64::MAX,
            format!("claimed_subject {s:?} appears in both train and test splits"),
        ));
    }
    problems
}

/// Reads manifest CSV from any reader. All problems are collected before
/// failing.
pub fn read_manifest<R: Read>(reader: R, base_dir: impl Into<PathBuf>) -> Result<Manifest, ManifestError> {
    read_inner(reader, base_dir.into(), None)
}

/// Reads and validates a manifest file.
pub fn parse_manifest(path: impl AsRef<Path>) -> Result<Manifest, ManifestError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| ManifestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    read_inner(file, base, Some(path.to_path_buf()))
}

fn read_inner<R: Read>(reader: R, base_dir: PathBuf, path: Option<PathBuf>) -> Result<Manifest, ManifestError> {
    let invalid = |problems| ManifestError::Invalid {
        path: path.clone(),
        problems,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| invalid(vec![format!("line 1: {e}")]))?
        .clone();
    if header.iter().ne(MANIFEST_HEADER.iter().copied()) {
        return Err(invalid(vec![format!(
            "line 1: header must be `{}`, found `{}`",
            MANIFEST_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )]));
    }

    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut problems = Vec::new();
    for record in rdr.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                problems.push((line, format!("line {line}: unreadable row: {e}")));
                continue;
            }
        };
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != MANIFEST_HEADER.len() {
            problems.push((
                line,
                format!(
                    "line {line}: expected {} fields, found {}",
                    MANIFEST_HEADER.len(),
                    record.len()
                ),
            ));
            continue;
        }
        let label = record[3].parse::<Label>();
        let split = record[4].parse::<Split>();
        let (label, split) = match (label, split) {
            (Ok(l), Ok(s)) => (l, s),
            (l, s) => {
                for err in [l.err(), s.err()].into_iter().flatten() {
                    problems.push((line, format!("line {line}: {err}")));
                }
                continue;
            }
        };
        if record[5].is_empty() {
            problems.push((line, format!("line {line}: empty frames_path")));
            continue;
        }
        let source = (!record[2].is_empty()).then(|| record[2].to_string());
        entries.push(VideoEntry {
            video_id: record[0].to_string(),
            claimed_subject: record[1].to_string(),
            source_subject: source,
            label,
            split,
            frames_path: PathBuf::from(&record[5]),
        });
        lines.push(line);
    }
    problems.extend(validate(&entries, &lines));
    if !problems.is_empty() {
        problems.sort_by_key(|(line, _)| *line);
        return Err(invalid(problems.into_iter().map(|(_, p)| p).collect()));
    }
    Ok(Manifest { entries, base_dir })
}
