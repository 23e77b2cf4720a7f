use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::frame_io::LumaPlane;

/// Unnormalized 2-D DFT, row-major output.
pub(crate) fn dft2(img: &LumaPlane) -> Vec<Complex<f64>> {
    let (w, h) = (img.width(), img.height());
    let mut data: Vec<Complex<f64>> = img.values().iter().map(|&v| Complex::new(v, 0.0)).collect();
    let mut planner = FftPlanner::<f64>::new();
    let row_fft = planner.plan_fft_forward(w);
    for row in data.chunks_exact_mut(w) {
        row_fft.process(row);
    }
    let col_fft = planner.plan_fft_forward(h);
    let mut col = vec![Complex::new(0.0, 0.0); h];
    for x in 0..w {
        for y in 0..h {
            col[y] = data[y * w + x];
        }
        col_fft.process(&mut col);
        for y in 0..h {
            data[y * w + x] = col[y];
        }
    }
    data
}

/// Wraps an angle difference into `(-pi, pi]`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}
