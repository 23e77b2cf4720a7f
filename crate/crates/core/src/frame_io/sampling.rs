use std::fs;
use std::path::{Path, PathBuf};

use super::FrameError;

/// A numbered frame file on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameFile {
    pub index: u64,
    pub path: PathBuf,
}

/// File-name matcher: `prefix` + decimal index + `suffix`.
struct Pattern {
    prefix: String,
    digits: Option<usize>,
    suffixes: Vec<String>,
}

impl Pattern {
    fn parse(name: &str) -> Option<Self> {
        let pct = name.find('%')?;
        let rest = &name[pct + 1..];
        let d = rest.find('d')?;
        let conv = &rest[..d];
        let digits = if conv.is_empty() {
            None
        } else {
            Some(conv.trim_start_matches('0').parse().ok()?)
        };
        Some(Self {
            prefix: name[..pct].to_string(),
            digits,
            suffixes: vec![rest[d + 1..].to_string()],
        })
    }

    fn default_frames() -> Self {
        Self {
            prefix: "frame_".into(),
            digits: Some(6),
            suffixes: vec![".pgm".into(), ".ppm".into()],
        }
    }

    fn index_of(&self, name: &str) -> Option<u64> {
        let rest = name.strip_prefix(&self.prefix)?;
        let num = self.suffixes.iter().find_map(|s| rest.strip_suffix(s.as_str()))?;
        if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if let Some(n) = self.digits {
            if num.len() < n {
                return None;
            }
        }
        num.parse().ok()
    }
}

/// Lists frame files under `location`, sorted by numeric index.
///
/// `location` is either a directory of `frame_%06d.pgm` / `.ppm` files or a
/// path whose last component is a printf-style pattern such as
/// `frames/v01/img_%04d.ppm`.
pub fn list_frames(location: &Path) -> Result<Vec<FrameFile>, FrameError> {
    let name = location.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let (dir, pattern) = match Pattern::parse(name) {
        Some(p) => (location.parent().unwrap_or(Path::new(".")).to_path_buf(), p),
        None => (location.to_path_buf(), Pattern::default_frames()),
    };
    let io_err = |source| FrameError::Io {
        path: dir.clone(),
        source,
    };
    let mut frames = Vec::new();
    for entry in fs::read_dir(&dir).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        let Some(file_name) = entry.file_name().to_str().map(str::to_owned) else {
            continue;
        };
        if let Some(index) = pattern.index_of(&file_name) {
            frames.push(FrameFile {
                index,
                path: entry.path(),
            });
        }
    }
    frames.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.path.cmp(&b.path)));
    Ok(frames)
}

/// Uniformly spaced positions `floor(i (n-1) / (count-1))`, `i = 0..count`,
/// with duplicates dropped. A count of 1 selects the first frame.
pub fn sample_indices(available: usize, count: usize) -> Vec<usize> {
    if available == 0 || count == 0 {
        return Vec::new();
    }
    if count == 1 {
        return vec![0];
    }
    let mut out: Vec<usize> = Vec::with_capacity(count.min(available));
    for i in 0..count {
        let idx = i * (available - 1) / (count - 1);
        if out.last() != Some(&idx) {
            out.push(idx);
        }
    }
    out
}

/// Frames contributing to one video's features.
pub fn sample_frames(location: &Path, count: usize) -> Result<Vec<FrameFile>, FrameError> {
    let all = list_frames(location)?;
    if all.is_empty() {
        return Err(FrameError::Io {
            path: location.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no frames found"),
        });
    }
    Ok(sample_indices(all.len(), count)
        .into_iter()
        .map(|i| all[i].clone())
        .collect())
}
