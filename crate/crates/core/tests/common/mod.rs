#![allow(dead_code)]

pub mod classifier_oracle;
pub mod experiment;
pub mod iqm_oracle;
pub mod metric_oracle;

use dfdetect::RgbFrame;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random frame: even seeds give uniform noise, odd seeds a smooth color
/// gradient with mild noise and a bright patch.
pub fn random_frame(rng: &mut ChaCha8Rng, w: usize, h: usize, smooth: bool) -> RgbFrame {
    let mut data = Vec::with_capacity(3 * w * h);
    let base: [f64; 3] = [rng.random_range(20.0..200.0), rng.random_range(20.0..200.0), rng.random_range(20.0..200.0)];
    for y in 0..h {
        for x in 0..w {
            for (c, b) in base.iter().enumerate() {
                let v = if smooth {
                    let bright = x > w / 2 && y < h / 3 && c < 3;
                    if bright {
                        rng.random_range(245.0..=255.0)
                    } else {
                        b + 40.0 * ((x as f64 * 0.3 + c as f64).sin() + (y as f64 * 0.2).cos()) + rng.random_range(-6.0..6.0)
                    }
                } else {
                    rng.random_range(0.0..256.0)
                };
                data.push(v.clamp(0.0, 255.0) as u8);
            }
        }
    }
    RgbFrame::new(w, h, data).unwrap()
}

/// Standard normal draw (Box-Muller).
pub fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random_range(f64::EPSILON..1.0);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}
