//! No-reference color and blur measures computed on the RGB frame itself.

use std::collections::HashSet;

use crate::frame_io::{to_luminance, LumaPlane, RgbFrame};

use super::filters::{laplacian_interior, sobel_any};

pub const NO_REFERENCE_COUNT: usize = 10;

/// Pixels whose |gx| exceeds this fraction of the image maximum are edge
/// pixels for BLUR_EDGEWIDTH.
pub const EDGE_WIDTH_THRESHOLD: f64 = 0.2;
pub const SPECULAR_LUMA: f64 = 0.95 * 255.0;
pub const SPECULAR_MAX_SATURATION: f64 = 0.1;
/// Bits kept per channel when counting distinct colors.
pub const COLOR_BITS: u32 = 5;
pub const COLOR_DIVERSITY_CAP: usize = 32768;

/// HSV hue in `[0, 1)` and saturation in `[0, 1]`; hue is 0 for grays.
pub fn hue_saturation([r, g, b]: [u8; 3]) -> (f64, f64) {
    let (r, g, b) = (r as f64, g as f64, b as f64);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let sat = if max > 0.0 { delta / max } else { 0.0 };
    if delta == 0.0 {
        return (0.0, sat);
    }
    let sector = if max == r {
        ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        (b - r) / delta + 2.0
    } else {
        (r - g) / delta + 4.0
    };
    (sector / 6.0, sat)
}

/// Mean, population standard deviation and skewness. A channel whose values
/// are all equal has zero deviation and zero skewness.
pub fn moments(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.iter().all(|&v| v == values[0]) {
        return (values[0], 0.0, 0.0);
    }
    let (mut m2, mut m3) = (0.0, 0.0);
    for &v in values {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    let var = m2 / n;
    let std = var.sqrt();
    (mean, std, (m3 / n) / (var * std))
}

/// Mean horizontal width of strong vertical edges.
///
/// For each pixel with `|gx| > 0.2 max|gx|`, the row's luminance profile is
/// followed outwards while it keeps moving in the edge direction; the edge
/// spans from the local extremum reached on the left to the one reached on
/// the right.
pub fn edge_width(luma: &LumaPlane) -> f64 {
    let grad = sobel_any(luma);
    let peak = grad.gx.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    if peak == 0.0 {
        return 0.0;
    }
    let cut = EDGE_WIDTH_THRESHOLD * peak;
    let w = luma.width();
    let (mut total, mut count) = (0.0, 0usize);
    for y in 0..luma.height() {
        let row = &luma.values()[y * w..(y + 1) * w];
        for x in 0..w {
            let g = grad.gx[y * w + x];
            if g.abs() <= cut {
                continue;
            }
            let rising = g > 0.0;
            let climbs = |lo: f64, hi: f64| if rising { hi > lo } else { hi < lo };
            let mut left = x;
            while left > 0 && climbs(row[left - 1], row[left]) {
                left -= 1;
            }
            let mut right = x;
            while right + 1 < w && climbs(row[right], row[right + 1]) {
                right += 1;
            }
            total += (right - left) as f64;
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

pub fn no_reference_measures(frame: &RgbFrame) -> [f64; NO_REFERENCE_COUNT] {
    let luma = to_luminance(frame);
    let lap = laplacian_interior(&luma);
    let lap_var = if lap.is_empty() { 0.0 } else { moments(&lap).1.powi(2) };

    let n = luma.values().len();
    let mut hues = Vec::with_capacity(n);
    let mut sats = Vec::with_capacity(n);
    let mut specular = 0usize;
    let mut bins = HashSet::new();
    let shift = 8 - COLOR_BITS;
    for (px, &y) in frame.pixels().zip(luma.values()) {
        let (h, s) = hue_saturation(px);
        if y >= SPECULAR_LUMA && s <= SPECULAR_MAX_SATURATION {
            specular += 1;
        }
        hues.push(h);
        sats.push(s);
        bins.insert([px[0] >> shift, px[1] >> shift, px[2] >> shift]);
    }
    let (hue_mean, hue_std, hue_skew) = moments(&hues);
    let (sat_mean, sat_std, sat_skew) = moments(&sats);
    [
        lap_var,
        edge_width(&luma),
        specular as f64 / n as f64,
        hue_mean,
        hue_std,
        hue_skew,
        sat_mean,
        sat_std,
        sat_skew,
        bins.len() as f64 / n.min(COLOR_DIVERSITY_CAP) as f64,
    ]
}
