//! Binary PGM (P5) and PPM (P6) codec, 8-bit only.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::RgbFrame;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: malformed header at byte {offset}: {reason}")]
    Header {
        path: PathBuf,
        offset: usize,
        reason: String,
    },
    #[error("{path}: truncated at byte {offset}: expected {expected} bytes of pixel data, found {found}")]
    Truncated {
        path: PathBuf,
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid frame dimensions {width}x{height}")]
    Dimensions { width: usize, height: usize },
    #[error("pixel buffer has {found} values, expected {expected}")]
    DataLength { expected: usize, found: usize },
    #[error("luminance value {0} outside [0, 255]")]
    LumaRange(f64),
    #[error("frame is not grayscale; cannot encode as P5")]
    NotGray,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Gray,
    Rgb,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl Cursor<'_> {
    fn header_err(&self, reason: impl Into<String>) -> FrameError {
        FrameError::Header {
            path: self.path.to_path_buf(),
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, FrameError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            if self.pos >= self.bytes.len() {
                return Err(FrameError::Truncated {
                    path: self.path.to_path_buf(),
                    offset: self.pos,
                    expected: 1,
                    found: 0,
                });
            }
            return Err(self.header_err(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FrameError::Header {
                path: self.path.to_path_buf(),
                offset: start,
                reason: format!("{what} out of range"),
            })
    }
}

/// Decodes an in-memory P5/P6 image. `path` is only used for error reports.
pub fn decode_pnm(bytes: &[u8], path: &Path) -> Result<RgbFrame, FrameError> {
    let mut cur = Cursor { bytes, pos: 0, path };
    if bytes.len() < 2 {
        return Err(FrameError::Truncated {
            path: path.to_path_buf(),
            offset: bytes.len(),
            expected: 2,
            found: bytes.len(),
        });
    }
    let kind = match &bytes[..2] {
        b"P5" => Kind::Gray,
        b"P6" => Kind::Rgb,
        _ => return Err(cur.header_err("unsupported magic number, expected P5 or P6")),
    };
    cur.pos = 2;
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.header_err(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(cur.header_err(format!("maxval {maxval} unsupported, expected 255")));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        Some(_) => return Err(cur.header_err("missing whitespace after maxval")),
        None => {}
    }
    let channels = if kind == Kind::Gray { 1 } else { 3 };
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| cur.header_err("dimensions overflow"))?;
    let raster = &bytes[cur.pos.min(bytes.len())..];
    if raster.len() < expected {
        return Err(FrameError::Truncated {
            path: path.to_path_buf(),
            offset: bytes.len(),
            expected,
            found: raster.len(),
        });
    }
    let raster = &raster[..expected];
    match kind {
        Kind::Gray => RgbFrame::from_gray(width, height, raster),
        Kind::Rgb => RgbFrame::new(width, height, raster.to_vec()),
    }
}

/// Reads a P5/P6 file. Grayscale sources are replicated across R, G and B.
pub fn load_frame(path: impl AsRef<Path>) -> Result<RgbFrame, FrameError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| FrameError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode_pnm(&bytes, path)
}

pub fn encode_ppm(frame: &RgbFrame) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", frame.width(), frame.height()).into_bytes();
    out.extend_from_slice(frame.data());
    out
}

/// P5 encoding of a frame whose three channels are equal.
pub fn encode_pgm(frame: &RgbFrame) -> Result<Vec<u8>, FrameError> {
    if !frame.is_gray() {
        return Err(FrameError::NotGray);
    }
    let mut out = format!("P5\n{} {}\n255\n", frame.width(), frame.height()).into_bytes();
    out.extend(frame.pixels().map(|p| p[0]));
    Ok(out)
}

/// Writes P5 when the path ends in `.pgm`, P6 otherwise.
pub fn save_frame(frame: &RgbFrame, path: impl AsRef<Path>) -> Result<(), FrameError> {
    let path = path.as_ref();
    let bytes = if path.extension().is_some_and(|e| e == "pgm") {
        encode_pgm(frame)?
    } else {
        encode_ppm(frame)
    };
    fs::write(path, bytes).map_err(|source| FrameError::Io {
        path: path.to_path_buf(),
        source,
    })
}
