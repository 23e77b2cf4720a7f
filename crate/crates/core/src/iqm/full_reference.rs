//! Full-reference measures between a luminance plane `I` and its reference
//! `R`.
//!
//! | slot | measure | definition |
//! |------|---------|------------|
//! | MSE  | mean squared error | `mean((I-R)^2)` |
//! | PSNR | peak SNR | `10 log10(255^2 / max(MSE, eps))` |
//! | SNR  | signal to noise | `10 log10(max(sum I^2, eps) / max(MN MSE, eps))` |
//! | SC   | structural content | `sum I^2 / (sum R^2 + eps)` |
//! | MD   | maximum difference | `max |I-R|` |
//! | AD   | average difference | `mean(I-R)` |
//! | NAE  | normalized absolute error | `sum |I-R| / (sum |I| + eps)` |
//! | RAMD | R-averaged max difference | mean of the 10 largest `|I-R|` |
//! | LMSE | Laplacian MSE | `sum (L(I)-L(R))^2 / (sum L(I)^2 + eps)`, interior pixels |
//! | NXC  | normalized cross-correlation | `sum I R / (sum I^2 + eps)` |
//! | TED  | total edge difference | `mean(E(I) xor E(R))`, Sobel edges above 0.1 of the max magnitude |
//! | SME  | spectral magnitude error | `mean((|F(I)| - |F(R)|)^2)` |
//! | SPE  | spectral phase error | `mean(wrap(arg F(I) - arg F(R))^2)` |
//! | GME  | gradient magnitude error | `mean((|grad I| - |grad R|)^2)` |
//! | GPE  | gradient phase error | `mean(wrap(theta(I) - theta(R))^2)` |
//! | SSIM | structural similarity | mean local SSIM, 11x11 Gaussian window, sigma 1.5 |

use crate::frame_io::LumaPlane;

use super::filters::{laplacian_interior, sobel_any};
use super::spectrum::{dft2, wrap_angle};
use super::{IqmError, EPSILON};

pub const FULL_REFERENCE_COUNT: usize = 16;

/// Relative threshold for the binary edge maps used by TED.
pub const EDGE_THRESHOLD: f64 = 0.1;
/// Number of largest absolute differences averaged by RAMD.
pub const RAMD_COUNT: usize = 10;
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
pub const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// PSNR of two identical images.
pub fn psnr_cap() -> f64 {
    10.0 * (255.0f64 * 255.0 / EPSILON).log10()
}

pub fn full_reference_measures(
    img: &LumaPlane,
    reference: &LumaPlane,
) -> Result<[f64; FULL_REFERENCE_COUNT], IqmError> {
    if img.width() != reference.width() || img.height() != reference.height() {
        return Err(IqmError::DimensionMismatch {
            left: (img.width(), img.height()),
            right: (reference.width(), reference.height()),
        });
    }
    let a = img.values();
    let b = reference.values();
    let n = a.len() as f64;

    let mut sq_err = 0.0;
    let mut sum_diff = 0.0;
    let mut sum_abs_diff = 0.0;
    let mut sum_abs_i = 0.0;
    let mut energy_i = 0.0;
    let mut energy_r = 0.0;
    let mut cross = 0.0;
    let mut max_diff: f64 = 0.0;
    let mut abs_diffs = Vec::with_capacity(a.len());
    for (&i, &r) in a.iter().zip(b) {
        let d = i - r;
        sq_err += d * d;
        sum_diff += d;
        sum_abs_diff += d.abs();
        sum_abs_i += i.abs();
        energy_i += i * i;
        energy_r += r * r;
        cross += i * r;
        max_diff = max_diff.max(d.abs());
        abs_diffs.push(d.abs());
    }
    let mse = sq_err / n;
    let psnr = 10.0 * (255.0 * 255.0 / mse.max(EPSILON)).log10();
    let snr = 10.0 * (energy_i.max(EPSILON) / (n * mse).max(EPSILON)).log10();
    let sc = energy_i / (energy_r + EPSILON);
    let ad = sum_diff / n;
    let nae = sum_abs_diff / (sum_abs_i + EPSILON);

    abs_diffs.sort_by(|x, y| y.total_cmp(x));
    let top = &abs_diffs[..RAMD_COUNT.min(abs_diffs.len())];
    let ramd = top.iter().sum::<f64>() / top.len() as f64;

    let lap_i = laplacian_interior(img);
    let lap_r = laplacian_interior(reference);
    let lap_num: f64 = lap_i.iter().zip(&lap_r).map(|(x, y)| (x - y) * (x - y)).sum();
    let lap_den: f64 = lap_i.iter().map(|x| x * x).sum();
    let lmse = lap_num / (lap_den + EPSILON);

    let nxc = cross / (energy_i + EPSILON);

    let grad_i = sobel_any(img);
    let grad_r = sobel_any(reference);
    let mag_i = grad_i.magnitude();
    let mag_r = grad_r.magnitude();
    let edges_i = edge_map(&mag_i);
    let edges_r = edge_map(&mag_r);
    let ted = edges_i.iter().zip(&edges_r).filter(|(x, y)| x != y).count() as f64 / n;

    let gme = mag_i.iter().zip(&mag_r).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / n;
    let gpe = grad_i
        .orientation()
        .iter()
        .zip(grad_r.orientation())
        .map(|(x, y)| wrap_angle(x - y).powi(2))
        .sum::<f64>()
        / n;

    let spec_i = dft2(img);
    let spec_r = dft2(reference);
    let mut sme = 0.0;
    let mut spe = 0.0;
    for (fi, fr) in spec_i.iter().zip(&spec_r) {
        let dm = fi.norm() - fr.norm();
        sme += dm * dm;
        spe += wrap_angle(fi.arg() - fr.arg()).powi(2);
    }
    sme /= n;
    spe /= n;

    let ssim = mean_ssim(img, reference);

    Ok([
        mse, psnr, snr, sc, max_diff, ad, nae, ramd, lmse, nxc, ted, sme, spe, gme, gpe, ssim,
    ])
}

fn edge_map(magnitude: &[f64]) -> Vec<bool> {
    let peak = magnitude.iter().copied().fold(0.0, f64::max);
    let cut = EDGE_THRESHOLD * peak;
    magnitude.iter().map(|&m| peak > 0.0 && m > cut).collect()
}

/// Normalized 1-D Gaussian taps for the SSIM window.
fn ssim_taps() -> [f64; SSIM_WINDOW] {
    let half = (SSIM_WINDOW / 2) as f64;
    let mut taps = [0.0; SSIM_WINDOW];
    for (i, t) in taps.iter_mut().enumerate() {
        let d = i as f64 - half;
        *t = (-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let s: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= s);
    taps
}

/// Separable Gaussian filtering of `v` with replicate border.
fn smooth(v: &[f64], w: usize, h: usize, taps: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let half = (SSIM_WINDOW / 2) as isize;
    let clamp = |i: isize, n: usize| i.clamp(0, n as isize - 1) as usize;
    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            rows[y * w + x] = taps
                .iter()
                .enumerate()
                .map(|(i, t)| t * v[y * w + clamp(x as isize + i as isize - half, w)])
                .sum();
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            out[y * w + x] = taps
                .iter()
                .enumerate()
                .map(|(j, t)| t * rows[clamp(y as isize + j as isize - half, h) * w + x])
                .sum();
        }
    }
    out
}

/// Local SSIM at every pixel (replicate border), averaged.
fn mean_ssim(a: &LumaPlane, b: &LumaPlane) -> f64 {
    let taps = ssim_taps();
    let (w, h) = (a.width(), a.height());
    let (va, vb) = (a.values(), b.values());
    let prod = |f: &dyn Fn(usize) -> f64| smooth(&(0..w * h).map(f).collect::<Vec<_>>(), w, h, &taps);
    let ma = smooth(va, w, h, &taps);
    let mb = smooth(vb, w, h, &taps);
    let saa = prod(&|i| va[i] * va[i]);
    let sbb = prod(&|i| vb[i] * vb[i]);
    let sab = prod(&|i| va[i] * vb[i]);
    let mut total = 0.0;
    for i in 0..w * h {
        let var_a = saa[i] - ma[i] * ma[i];
        let var_b = sbb[i] - mb[i] * mb[i];
        let cov = sab[i] - ma[i] * mb[i];
        total += ((2.0 * ma[i] * mb[i] + SSIM_C1) * (2.0 * cov + SSIM_C2))
            / ((ma[i] * ma[i] + mb[i] * mb[i] + SSIM_C1) * (var_a + var_b + SSIM_C2));
    }
    total / (w * h) as f64
}
