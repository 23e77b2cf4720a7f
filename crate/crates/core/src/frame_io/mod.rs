//! Frame decoding, luminance conversion, dataset manifests and per-video
//! frame selection.

mod manifest;
mod pnm;
mod sampling;

pub use manifest::{parse_manifest, read_manifest, Label, Manifest, ManifestError, Split, VideoEntry};
pub use pnm::{decode_pnm, encode_pgm, encode_ppm, load_frame, save_frame, FrameError};
pub use sampling::{list_frames, sample_frames, sample_indices, FrameFile};

/// Luminance weights (ITU-R BT.601).
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

/// Decoded 8-bit RGB image, row-major, interleaved triplets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbFrame {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbFrame {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self, FrameError> {
        if width == 0 || height == 0 {
            return Err(FrameError::Dimensions { width, height });
        }
        let expected = 3 * width * height;
        if data.len() != expected {
            return Err(FrameError::DataLength {
                expected,
                found: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds a frame by replicating one gray channel into R, G and B.
    pub fn from_gray(width: usize, height: usize, gray: &[u8]) -> Result<Self, FrameError> {
        if gray.len() != width * height {
            return Err(FrameError::DataLength {
                expected: width * height,
                found: gray.len(),
            });
        }
        let data = gray.iter().flat_map(|&v| [v, v, v]).collect();
        Self::new(width, height, data)
    }

    /// Frame filled with a single color.
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self, FrameError> {
        let data = std::iter::repeat_n(rgb, width * height).flatten().collect();
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    pub fn is_gray(&self) -> bool {
        self.pixels().all(|[r, g, b]| r == g && g == b)
    }

    /// Mirror image around the vertical axis.
    pub fn mirrored(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for y in 0..self.height {
            for x in (0..self.width).rev() {
                data.extend_from_slice(&self.pixel(x, y));
            }
        }
        Self {
            width: self.width,
            height: self.height,
            data,
        }
    }
}

/// Real-valued luminance plane with values in `[0, 255]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LumaPlane {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl LumaPlane {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self, FrameError> {
        if width == 0 || height == 0 {
            return Err(FrameError::Dimensions { width, height });
        }
        if values.len() != width * height {
            return Err(FrameError::DataLength {
                expected: width * height,
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && (0.0..=255.0).contains(*v))) {
            return Err(FrameError::LumaRange(*bad));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// Constructor for values produced by convex combinations of valid
    /// luminance, which cannot leave the valid range.
    pub(crate) fn from_raw(width: usize, height: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), width * height);
        Self {
            width,
            height,
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    /// Sample with replicate-border addressing.
    #[inline]
    pub(crate) fn clamped(&self, x: isize, y: isize) -> f64 {
        let cx = x.clamp(0, self.width as isize - 1) as usize;
        let cy = y.clamp(0, self.height as isize - 1) as usize;
        self.values[cy * self.width + cx]
    }

    pub fn transposed(&self) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for x in 0..self.width {
            for y in 0..self.height {
                values.push(self.at(x, y));
            }
        }
        Self::from_raw(self.height, self.width, values)
    }
}

#[inline]
pub(crate) fn luma_of([r, g, b]: [u8; 3]) -> f64 {
    LUMA_WEIGHTS[0] * r as f64 + LUMA_WEIGHTS[1] * g as f64 + LUMA_WEIGHTS[2] * b as f64
}

/// `Y = 0.299 R + 0.587 G + 0.114 B`, unrounded.
pub fn to_luminance(frame: &RgbFrame) -> LumaPlane {
    let values = frame.pixels().map(|p| luma_of(p).clamp(0.0, 255.0)).collect();
    LumaPlane::from_raw(frame.width, frame.height, values)
}
