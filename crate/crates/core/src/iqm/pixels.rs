use crate::frame_io::{to_luminance, LumaPlane, RgbFrame};

/// Default side of the square raw-pixel feature (1024 values).
pub const DEFAULT_PIXEL_SIDE: usize = 32;

/// Bilinear resize with pixel-center alignment: output sample `i` reads the
/// source at `(i + 0.5) * in / out - 0.5`, clamped to the image.
pub fn resize_bilinear(img: &LumaPlane, out_w: usize, out_h: usize) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    if (w, h) == (out_w, out_h) {
        return img.values().to_vec();
    }
    let axis = |i: usize, n_in: usize, n_out: usize| -> (usize, usize, f64) {
        let src = ((i as f64 + 0.5) * n_in as f64 / n_out as f64 - 0.5).clamp(0.0, (n_in - 1) as f64);
        let lo = src.floor() as usize;
        let hi = (lo + 1).min(n_in - 1);
        (lo, hi, src - lo as f64)
    };
    let mut out = Vec::with_capacity(out_w * out_h);
    for oy in 0..out_h {
        let (y0, y1, fy) = axis(oy, h, out_h);
        for ox in 0..out_w {
            let (x0, x1, fx) = axis(ox, w, out_w);
            let top = img.at(x0, y0) + fx * (img.at(x1, y0) - img.at(x0, y0));
            let bottom = img.at(x0, y1) + fx * (img.at(x1, y1) - img.at(x0, y1));
            out.push((top + fy * (bottom - top)).clamp(0.0, 255.0));
        }
    }
    out
}

/// Luminance resized to `side x side` and flattened row-major.
pub fn extract_pixel_vector(frame: &RgbFrame, side: usize) -> Vec<f64> {
    resize_bilinear(&to_luminance(frame), side, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_size_is_identity() {
        let f = RgbFrame::new(2, 2, vec![10, 20, 30, 1, 2, 3, 4, 5, 6, 200, 100, 50]).unwrap();
        assert_eq!(extract_pixel_vector(&f, 2), to_luminance(&f).values());
    }

    #[test]
    fn constant_stays_constant() {
        let f = RgbFrame::filled(13, 7, [90, 90, 90]).unwrap();
        let v = extract_pixel_vector(&f, 32);
        assert_eq!(v.len(), 1024);
        assert!(v.iter().all(|&x| (x - 90.0).abs() < 1e-12));
    }

    #[test]
    fn two_by_two_to_four_by_four() {
        // rows 0 and 1 of the source are 0 and 255; output rows sample the
        // source at y = -0.25 (clamped), 0.25, 0.75, 1.25 (clamped)
        let f = RgbFrame::from_gray(2, 2, &[0, 0, 255, 255]).unwrap();
        let v = extract_pixel_vector(&f, 4);
        let rows = [0.0, 63.75, 191.25, 255.0];
        for (i, x) in v.iter().enumerate() {
            assert!((x - rows[i / 4]).abs() < 1e-12, "{i}: {x}");
        }
    }
}
