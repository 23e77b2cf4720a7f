//! Image-quality measures.
//!
//! A frame is turned into a fixed 26-value [`QualityVector`]: sixteen
//! full-reference measures comparing the luminance plane against a
//! Gaussian-blurred copy of itself, followed by ten no-reference blur and
//! color measures. Genuine camera frames lose more detail to the blur than
//! frames that were already smoothed by a generator, which is what the
//! full-reference block picks up.

mod filters;
mod full_reference;
mod no_reference;
mod pixels;
mod spectrum;

use thiserror::Error;

use crate::frame_io::{to_luminance, RgbFrame};

pub use filters::{gaussian_reference, reference_kernel, sobel, GradientField, REFERENCE_SIGMA};
pub use full_reference::{
    full_reference_measures, psnr_cap, EDGE_THRESHOLD, FULL_REFERENCE_COUNT, RAMD_COUNT, SSIM_C1,
    SSIM_C2, SSIM_SIGMA, SSIM_WINDOW,
};
pub use no_reference::{
    edge_width, hue_saturation, moments, no_reference_measures, COLOR_BITS, COLOR_DIVERSITY_CAP,
    EDGE_WIDTH_THRESHOLD, NO_REFERENCE_COUNT, SPECULAR_LUMA, SPECULAR_MAX_SATURATION,
};
pub use pixels::{extract_pixel_vector, resize_bilinear, DEFAULT_PIXEL_SIDE};

/// Guard added to every denominator and logarithm argument.
pub const EPSILON: f64 = 1e-10;

pub const IQM_SCHEMA_VERSION: u32 = 1;
pub const IQM_DIM: usize = FULL_REFERENCE_COUNT + NO_REFERENCE_COUNT;

/// Smallest frame side accepted by [`extract_iqm_vector`].
pub const MIN_FRAME_SIDE: usize = 8;

/// Measure names in vector order.
pub const MEASURE_NAMES: [&str; IQM_DIM] = [
    "MSE",
    "PSNR",
    "SNR",
    "SC",
    "MD",
    "AD",
    "NAE",
    "RAMD",
    "LMSE",
    "NXC",
    "TED",
    "SME",
    "SPE",
    "GME",
    "GPE",
    "SSIM",
    "BLUR_LAPVAR",
    "BLUR_EDGEWIDTH",
    "SPECULARITY",
    "HUE_MEAN",
    "HUE_STD",
    "HUE_SKEW",
    "SAT_MEAN",
    "SAT_STD",
    "SAT_SKEW",
    "COLOR_DIVERSITY",
];

#[derive(Debug, Error, PartialEq)]
pub enum IqmError {
    #[error("image {width}x{height} is smaller than the {min}x{min} minimum")]
    TooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
    #[error("image dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("measure {name} is not finite")]
    NonFinite { name: &'static str },
}

/// The 26 quality measures of one frame, in [`MEASURE_NAMES`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityVector {
    pub schema_version: u32,
    pub values: [f64; IQM_DIM],
}

impl QualityVector {
    pub fn get(&self, name: &str) -> Option<f64> {
        MEASURE_NAMES.iter().position(|n| *n == name).map(|i| self.values[i])
    }
}

pub fn extract_iqm_vector(frame: &RgbFrame) -> Result<QualityVector, IqmError> {
    if frame.width() < MIN_FRAME_SIDE || frame.height() < MIN_FRAME_SIDE {
        return Err(IqmError::TooSmall {
            width: frame.width(),
            height: frame.height(),
            min: MIN_FRAME_SIDE,
        });
    }
    let luma = to_luminance(frame);
    let reference = gaussian_reference(&luma);
    let full = full_reference_measures(&luma, &reference)?;
    let none = no_reference_measures(frame);
    let mut values = [0.0; IQM_DIM];
    values[..FULL_REFERENCE_COUNT].copy_from_slice(&full);
    values[FULL_REFERENCE_COUNT..].copy_from_slice(&none);
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(IqmError::NonFinite {
            name: MEASURE_NAMES[i],
        });
    }
    Ok(QualityVector {
        schema_version: IQM_SCHEMA_VERSION,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noise_frame(w: usize, h: usize, seed: u32) -> RgbFrame {
        let mut s = seed;
        let data = (0..3 * w * h)
            .map(|_| {
                s = s.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
                (s >> 24) as u8
            })
            .collect();
        RgbFrame::new(w, h, data).unwrap()
    }

    #[test]
    fn constant_frame() {
        let f = RgbFrame::filled(16, 16, [77, 77, 77]).unwrap();
        let q = extract_iqm_vector(&f).unwrap();
        for name in ["MSE", "MD", "AD", "NAE", "RAMD", "LMSE", "TED", "SME", "SPE", "GME", "GPE"] {
            assert_eq!(q.get(name), Some(0.0), "{name}");
        }
        assert_eq!(q.get("SSIM"), Some(1.0));
        assert_eq!(q.get("PSNR"), Some(psnr_cap()));
        assert_eq!(q.get("COLOR_DIVERSITY"), Some(1.0 / 256.0));
    }

    #[test]
    fn deterministic() {
        let f = noise_frame(24, 20, 3);
        let a = extract_iqm_vector(&f).unwrap();
        let b = extract_iqm_vector(&f.clone()).unwrap();
        assert!(a.values.iter().zip(&b.values).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn mirror_invariant_measures() {
        let f = noise_frame(20, 17, 11);
        let a = extract_iqm_vector(&f).unwrap();
        let b = extract_iqm_vector(&f.mirrored()).unwrap();
        for name in ["MSE", "PSNR", "SNR", "SC", "MD", "AD", "NAE", "RAMD", "NXC"] {
            let (x, y) = (a.get(name).unwrap(), b.get(name).unwrap());
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{name}: {x} vs {y}");
        }
    }

    #[test]
    fn nonnegative_measures_and_ssim_range() {
        for seed in 0..5 {
            let q = extract_iqm_vector(&noise_frame(16, 16, seed)).unwrap();
            for name in ["MSE", "MD", "NAE", "RAMD", "LMSE", "TED", "SME", "GME"] {
                assert!(q.get(name).unwrap() >= 0.0, "{name}");
            }
            let s = q.get("SSIM").unwrap();
            assert!((-1.0..1.0).contains(&s));
        }
    }

    #[test]
    fn rejects_small_frames() {
        let f = RgbFrame::filled(7, 30, [0, 0, 0]).unwrap();
        assert!(matches!(extract_iqm_vector(&f), Err(IqmError::TooSmall { min: 8, .. })));
    }
}
