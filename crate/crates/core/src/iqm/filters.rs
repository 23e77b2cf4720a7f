//! Small fixed-kernel filters on luminance planes. All use replicate
//! border addressing.

use crate::frame_io::LumaPlane;

use super::IqmError;

/// Standard deviation of the 3x3 blur that produces the reference image.
pub const REFERENCE_SIGMA: f64 = 0.5;

/// Normalized 3x3 Gaussian kernel, indexed `[dy + 1][dx + 1]`.
pub fn reference_kernel() -> [[f64; 3]; 3] {
    let two_s2 = 2.0 * REFERENCE_SIGMA * REFERENCE_SIGMA;
    let mut k = [[0.0; 3]; 3];
    let mut sum = 0.0;
    for (j, row) in k.iter_mut().enumerate() {
        for (i, w) in row.iter_mut().enumerate() {
            let (dx, dy) = (i as f64 - 1.0, j as f64 - 1.0);
            *w = (-(dx * dx + dy * dy) / two_s2).exp();
            sum += *w;
        }
    }
    for w in k.iter_mut().flatten() {
        *w /= sum;
    }
    k
}

/// Gaussian-blurred copy of `img` (3x3, sigma 0.5).
///
/// Evaluated as `center + sum(w * (neighbor - center))`, which equals the
/// plain weighted sum because the weights sum to one, and leaves constant
/// regions bit-exact.
pub fn gaussian_reference(img: &LumaPlane) -> LumaPlane {
    let k = reference_kernel();
    let (w, h) = (img.width(), img.height());
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let c = img.clamped(x, y);
            let mut acc = 0.0;
            for (j, row) in k.iter().enumerate() {
                for (i, &wt) in row.iter().enumerate() {
                    acc += wt * (img.clamped(x + i as isize - 1, y + j as isize - 1) - c);
                }
            }
            out.push((c + acc).clamp(0.0, 255.0));
        }
    }
    LumaPlane::from_raw(w, h, out)
}

/// Horizontal and vertical Sobel responses.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub width: usize,
    pub height: usize,
    pub gx: Vec<f64>,
    pub gy: Vec<f64>,
}

impl GradientField {
    pub fn magnitude(&self) -> Vec<f64> {
        self.gx.iter().zip(&self.gy).map(|(x, y)| x.hypot(*y)).collect()
    }

    pub fn orientation(&self) -> Vec<f64> {
        self.gx.iter().zip(&self.gy).map(|(x, y)| y.atan2(*x)).collect()
    }
}

/// 3x3 Sobel operator; `gx` uses `[-1 0 1; -2 0 2; -1 0 1]`, `gy` its
/// transpose.
pub fn sobel(img: &LumaPlane) -> Result<GradientField, IqmError> {
    if img.width() < 3 || img.height() < 3 {
        return Err(IqmError::TooSmall {
            width: img.width(),
            height: img.height(),
            min: 3,
        });
    }
    Ok(sobel_any(img))
}

/// Sobel without the size check; replicate borders make it defined for any
/// non-empty plane.
pub(crate) fn sobel_any(img: &LumaPlane) -> GradientField {
    let (w, h) = (img.width(), img.height());
    let mut gx = Vec::with_capacity(w * h);
    let mut gy = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let p = |dx: isize, dy: isize| img.clamped(x + dx, y + dy);
            gx.push((p(1, -1) - p(-1, -1)) + 2.0 * (p(1, 0) - p(-1, 0)) + (p(1, 1) - p(-1, 1)));
            gy.push((p(-1, 1) - p(-1, -1)) + 2.0 * (p(0, 1) - p(0, -1)) + (p(1, 1) - p(1, -1)));
        }
    }
    GradientField {
        width: w,
        height: h,
        gx,
        gy,
    }
}

/// 4-neighbour Laplacian over interior pixels, row-major. Empty when either
/// side is below 3.
pub(crate) fn laplacian_interior(img: &LumaPlane) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    if w < 3 || h < 3 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            out.push(
                img.at(x + 1, y) + img.at(x - 1, y) + img.at(x, y + 1) + img.at(x, y - 1)
                    - 4.0 * img.at(x, y),
            );
        }
    }
    out
}
