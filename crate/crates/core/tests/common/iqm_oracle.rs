//! Naive reference implementations of every quality measure, written
//! directly from the measure definitions and sharing no code with the
//! library. Loops are plain index loops; the DFT is a direct double sum.

use std::f64::consts::PI;

pub struct Plane {
    pub w: usize,
    pub h: usize,
    pub v: Vec<f64>,
}

impl Plane {
    fn get(&self, x: isize, y: isize) -> f64 {
        let x = x.max(0).min(self.w as isize - 1) as usize;
        let y = y.max(0).min(self.h as isize - 1) as usize;
        self.v[y * self.w + x]
    }
}

pub fn luma(w: usize, h: usize, rgb: &[u8]) -> Plane {
    let mut v = vec![0.0; w * h];
    for i in 0..w * h {
        let y = 0.299 * rgb[3 * i] as f64 + 0.587 * rgb[3 * i + 1] as f64 + 0.114 * rgb[3 * i + 2] as f64;
        v[i] = y.max(0.0).min(255.0);
    }
    Plane { w, h, v }
}

pub fn blur_reference(p: &Plane) -> Plane {
    let sigma: f64 = 0.5;
    let mut k = [[0.0f64; 3]; 3];
    let mut total = 0.0;
    for j in 0..3 {
        for i in 0..3 {
            let dx = i as f64 - 1.0;
            let dy = j as f64 - 1.0;
            k[j][i] = (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp();
            total += k[j][i];
        }
    }
    let mut out = vec![0.0; p.w * p.h];
    for y in 0..p.h {
        for x in 0..p.w {
            let mut s = 0.0;
            for j in 0..3 {
                for i in 0..3 {
                    s += k[j][i] / total * p.get(x as isize + i as isize - 1, y as isize + j as isize - 1);
                }
            }
            out[y * p.w + x] = s;
        }
    }
    Plane { w: p.w, h: p.h, v: out }
}

fn sobel(p: &Plane) -> (Vec<f64>, Vec<f64>) {
    let kx = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
    let mut gx = vec![0.0; p.w * p.h];
    let mut gy = vec![0.0; p.w * p.h];
    for y in 0..p.h {
        for x in 0..p.w {
            let (mut sx, mut sy) = (0.0, 0.0);
            for j in 0..3 {
                for i in 0..3 {
                    let v = p.get(x as isize + i as isize - 1, y as isize + j as isize - 1);
                    sx += kx[j][i] * v;
                    sy += kx[i][j] * v;
                }
            }
            gx[y * p.w + x] = sx;
            gy[y * p.w + x] = sy;
        }
    }
    (gx, gy)
}

fn laplacian(p: &Plane) -> Vec<f64> {
    let mut out = Vec::new();
    for y in 1..p.h - 1 {
        for x in 1..p.w - 1 {
            let c = p.v[y * p.w + x];
            let n = p.v[(y - 1) * p.w + x] + p.v[(y + 1) * p.w + x] + p.v[y * p.w + x - 1] + p.v[y * p.w + x + 1];
            out.push(n - 4.0 * c);
        }
    }
    out
}

fn wrap(a: f64) -> f64 {
    let mut r = a;
    while r > PI {
        r -= 2.0 * PI;
    }
    while r <= -PI {
        r += 2.0 * PI;
    }
    r
}

fn naive_dft(p: &Plane) -> Vec<(f64, f64)> {
    let (w, h) = (p.w, p.h);
    let cw: Vec<(f64, f64)> = (0..w).map(|k| {
        let a = -2.0 * PI * k as f64 / w as f64;
        (a.cos(), a.sin())
    }).collect();
    let ch: Vec<(f64, f64)> = (0..h).map(|k| {
        let a = -2.0 * PI * k as f64 / h as f64;
        (a.cos(), a.sin())
    }).collect();
    let mut out = vec![(0.0, 0.0); w * h];
    for v in 0..h {
        for u in 0..w {
            let (mut re, mut im) = (0.0, 0.0);
            for y in 0..h {
                let (c1, s1) = ch[(v * y) % h];
                for x in 0..w {
                    let (c2, s2) = cw[(u * x) % w];
                    // e^{i(a+b)} = (c1 c2 - s1 s2) + i (s1 c2 + c1 s2)
                    let val = p.v[y * w + x];
                    re += val * (c1 * c2 - s1 * s2);
                    im += val * (s1 * c2 + c1 * s2);
                }
            }
            out[v * w + u] = (re, im);
        }
    }
    out
}

fn local_ssim_mean(a: &Plane, b: &Plane) -> f64 {
    let sigma: f64 = 1.5;
    let mut win = [[0.0f64; 11]; 11];
    let mut total = 0.0;
    for j in 0..11 {
        for i in 0..11 {
            let dx = i as f64 - 5.0;
            let dy = j as f64 - 5.0;
            win[j][i] = (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp();
            total += win[j][i];
        }
    }
    let c1 = (0.01f64 * 255.0).powi(2);
    let c2 = (0.03f64 * 255.0).powi(2);
    let mut acc = 0.0;
    for y in 0..a.h {
        for x in 0..a.w {
            let (mut mx, mut my) = (0.0, 0.0);
            for j in 0..11 {
                for i in 0..11 {
                    let wt = win[j][i] / total;
                    mx += wt * a.get(x as isize + i as isize - 5, y as isize + j as isize - 5);
                    my += wt * b.get(x as isize + i as isize - 5, y as isize + j as isize - 5);
                }
            }
            // central second moments, computed about the local means
            let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
            for j in 0..11 {
                for i in 0..11 {
                    let wt = win[j][i] / total;
                    let dx = a.get(x as isize + i as isize - 5, y as isize + j as isize - 5) - mx;
                    let dy = b.get(x as isize + i as isize - 5, y as isize + j as isize - 5) - my;
                    vx += wt * dx * dx;
                    vy += wt * dy * dy;
                    cxy += wt * dx * dy;
                }
            }
            acc += (2.0 * mx * my + c1) * (2.0 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
    }
    acc / (a.w * a.h) as f64
}

pub fn full_reference(i: &Plane, r: &Plane) -> Vec<f64> {
    let eps = 1e-10;
    let n = (i.w * i.h) as f64;
    let mut diffs = Vec::new();
    for k in 0..i.v.len() {
        diffs.push(i.v[k] - r.v[k]);
    }
    let mse = diffs.iter().map(|d| d * d).sum::<f64>() / n;
    let psnr = 10.0 * (255.0 * 255.0 / if mse > eps { mse } else { eps }).log10();
    let si2: f64 = i.v.iter().map(|x| x * x).sum();
    let sr2: f64 = r.v.iter().map(|x| x * x).sum();
    let noise = n * mse;
    let snr = 10.0 * ((if si2 > eps { si2 } else { eps }) / (if noise > eps { noise } else { eps })).log10();
    let sc = si2 / (sr2 + eps);
    let md = diffs.iter().map(|d| d.abs()).fold(0.0, f64::max);
    let ad = diffs.iter().sum::<f64>() / n;
    let nae = diffs.iter().map(|d| d.abs()).sum::<f64>() / (i.v.iter().map(|x| x.abs()).sum::<f64>() + eps);
    let mut sorted: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let take = sorted.len().min(10);
    let ramd = sorted[..take].iter().sum::<f64>() / take as f64;
    let li = laplacian(i);
    let lr = laplacian(r);
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..li.len() {
        num += (li[k] - lr[k]).powi(2);
        den += li[k] * li[k];
    }
    let lmse = num / (den + eps);
    let nxc = i.v.iter().zip(&r.v).map(|(a, b)| a * b).sum::<f64>() / (si2 + eps);

    let (gxi, gyi) = sobel(i);
    let (gxr, gyr) = sobel(r);
    let mi: Vec<f64> = (0..gxi.len()).map(|k| (gxi[k] * gxi[k] + gyi[k] * gyi[k]).sqrt()).collect();
    let mr: Vec<f64> = (0..gxr.len()).map(|k| (gxr[k] * gxr[k] + gyr[k] * gyr[k]).sqrt()).collect();
    let maxi = mi.iter().cloned().fold(0.0, f64::max);
    let maxr = mr.iter().cloned().fold(0.0, f64::max);
    let mut ted = 0.0;
    for k in 0..mi.len() {
        let ei = maxi > 0.0 && mi[k] > 0.1 * maxi;
        let er = maxr > 0.0 && mr[k] > 0.1 * maxr;
        if ei != er {
            ted += 1.0;
        }
    }
    ted /= n;

    let fi = naive_dft(i);
    let fr = naive_dft(r);
    let (mut sme, mut spe) = (0.0, 0.0);
    for k in 0..fi.len() {
        let ai = (fi[k].0 * fi[k].0 + fi[k].1 * fi[k].1).sqrt();
        let ar = (fr[k].0 * fr[k].0 + fr[k].1 * fr[k].1).sqrt();
        sme += (ai - ar).powi(2);
        spe += wrap(fi[k].1.atan2(fi[k].0) - fr[k].1.atan2(fr[k].0)).powi(2);
    }
    sme /= n;
    spe /= n;

    let mut gme = 0.0;
    let mut gpe = 0.0;
    for k in 0..mi.len() {
        gme += (mi[k] - mr[k]).powi(2);
        gpe += wrap(gyi[k].atan2(gxi[k]) - gyr[k].atan2(gxr[k])).powi(2);
    }
    gme /= n;
    gpe /= n;

    let ssim = local_ssim_mean(i, r);
    vec![mse, psnr, snr, sc, md, ad, nae, ramd, lmse, nxc, ted, sme, spe, gme, gpe, ssim]
}

fn hsv_hs(r: u8, g: u8, b: u8) -> (f64, f64) {
    let (r, g, b) = (r as f64 / 255.0, g as f64 / 255.0, b as f64 / 255.0);
    let mx = r.max(g).max(b);
    let mn = r.min(g).min(b);
    if mx == mn {
        return (0.0, 0.0);
    }
    let s = (mx - mn) / mx;
    let rc = (mx - r) / (mx - mn);
    let gc = (mx - g) / (mx - mn);
    let bc = (mx - b) / (mx - mn);
    let h = if r == mx {
        bc - gc
    } else if g == mx {
        2.0 + rc - bc
    } else {
        4.0 + gc - rc
    };
    ((h / 6.0).rem_euclid(1.0), s)
}

fn stats(v: &[f64]) -> (f64, f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let constant = v.iter().all(|x| *x == v[0]);
    if constant {
        return (v[0], 0.0, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    let skew = v.iter().map(|x| ((x - mean) / sd).powi(3)).sum::<f64>() / n;
    (mean, sd, skew)
}

pub fn no_reference(w: usize, h: usize, rgb: &[u8]) -> Vec<f64> {
    let y = luma(w, h, rgb);
    let lap = laplacian(&y);
    let lapvar = if lap.is_empty() {
        0.0
    } else {
        let m = lap.iter().sum::<f64>() / lap.len() as f64;
        lap.iter().map(|l| (l - m).powi(2)).sum::<f64>() / lap.len() as f64
    };

    // edge width
    let (gx, _) = sobel(&y);
    let gmax = gx.iter().map(|g| g.abs()).fold(0.0, f64::max);
    let mut widths = Vec::new();
    if gmax > 0.0 {
        for row in 0..h {
            for col in 0..w {
                let g = gx[row * w + col];
                if g.abs() > 0.2 * gmax {
                    let at = |c: usize| y.v[row * w + c];
                    let sign = if g > 0.0 { 1.0 } else { -1.0 };
                    let mut l = col;
                    while l >= 1 && sign * (at(l) - at(l - 1)) > 0.0 {
                        l -= 1;
                    }
                    let mut r = col;
                    while r + 1 < w && sign * (at(r + 1) - at(r)) > 0.0 {
                        r += 1;
                    }
                    widths.push((r - l) as f64);
                }
            }
        }
    }
    let edge = if widths.is_empty() { 0.0 } else { widths.iter().sum::<f64>() / widths.len() as f64 };

    let mut hue = Vec::new();
    let mut sat = Vec::new();
    let mut specular = 0.0;
    let mut colors: Vec<(u8, u8, u8)> = Vec::new();
    for k in 0..w * h {
        let (r, g, b) = (rgb[3 * k], rgb[3 * k + 1], rgb[3 * k + 2]);
        let (hh, ss) = hsv_hs(r, g, b);
        if y.v[k] >= 0.95 * 255.0 && ss <= 0.1 {
            specular += 1.0;
        }
        hue.push(hh);
        sat.push(ss);
        let q = (r / 8, g / 8, b / 8);
        if !colors.contains(&q) {
            colors.push(q);
        }
    }
    let (hm, hs, hk) = stats(&hue);
    let (sm, ssd, sk) = stats(&sat);
    let cd = colors.len() as f64 / (w * h).min(32768) as f64;
    vec![lapvar, edge, specular / (w * h) as f64, hm, hs, hk, sm, ssd, sk, cd]
}

pub fn iqm_vector(w: usize, h: usize, rgb: &[u8]) -> Vec<f64> {
    let i = luma(w, h, rgb);
    let r = blur_reference(&i);
    let mut out = full_reference(&i, &r);
    out.extend(no_reference(w, h, rgb));
    out
}

/// `|a - b| <= tol * max(|a|, |b|)`, with `tol` also serving as an absolute
/// floor for values near zero.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let d = (a - b).abs();
    d <= tol * a.abs().max(b.abs()) || d <= tol
}
