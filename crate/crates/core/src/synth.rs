//! Deterministic synthetic face videos and face-swap forgeries.
//!
//! Each subject is a procedural face: a skin tone, a few oriented
//! gratings, a fixed fine-grained pore texture, and dark blobs for eyes and
//! mouth. Genuine videos render that face with per-video lighting and
//! slow head motion, plus sensor noise. A forgery renders the source
//! subject's video and blends a Gaussian-blurred copy of the claimed
//! subject's face over the face region.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frame_io::{save_frame, FrameError, Label, Manifest, ManifestError, RgbFrame, Split, VideoEntry};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub subjects: usize,
    pub videos_per_subject: usize,
    pub frames_per_video: usize,
    pub width: usize,
    pub height: usize,
    /// The first `train_subjects` subjects form the train split.
    pub train_subjects: usize,
    /// Forgery label; `None` generates genuine videos only.
    pub forgery: Option<Label>,
    /// Range of the blur sigma applied to the swapped-in face.
    pub blur_sigma: (f64, f64),
    /// Range of the blending weight of the swapped-in face.
    pub alpha: (f64, f64),
    /// Range of the per-video camera blur; values below 0.3 mean sharp.
    pub focus_sigma: (f64, f64),
    /// Range of the per-video sensor noise level.
    pub noise_sigma: (f64, f64),
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            subjects: 16,
            videos_per_subject: 10,
            frames_per_video: 25,
            width: 48,
            height: 48,
            train_subjects: 8,
            forgery: Some(Label::DeepfakeHq),
            blur_sigma: (1.2, 1.8),
            alpha: (0.7, 0.95),
            focus_sigma: (0.0, 0.8),
            noise_sigma: (2.0, 5.0),
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthVideo {
    pub entry: VideoEntry,
    pub frames: Vec<RgbFrame>,
}

#[derive(Debug, Clone)]
pub struct SynthDataset {
    pub videos: Vec<SynthVideo>,
}

struct Face {
    skin: [f64; 3],
    gratings: Vec<(f64, f64, f64, f64)>,
    pores: Vec<f64>,
    pore_side: usize,
    eye_dx: f64,
    mouth_w: f64,
}

struct Shot {
    gain: f64,
    offset: f64,
    background: [f64; 3],
    start: (f64, f64),
    drift: (f64, f64),
    focus: f64,
    noise: f64,
}

impl Shot {
    fn camera(&self, rgb: Vec<f64>, w: usize, h: usize) -> Vec<f64> {
        if self.focus < 0.3 {
            rgb
        } else {
            gaussian_blur(&rgb, w, h, self.focus)
        }
    }
}

impl Face {
    fn new(rng: &mut ChaCha8Rng, side: usize) -> Self {
        let pore_side = 2 * side;
        Self {
            skin: [
                rng.random_range(150.0..215.0),
                rng.random_range(100.0..160.0),
                rng.random_range(80.0..130.0),
            ],
            gratings: (0..3)
                .map(|_| {
                    (
                        rng.random_range(6.0..18.0),
                        rng.random_range(0.5..1.3),
                        rng.random_range(0.0..std::f64::consts::PI),
                        rng.random_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect(),
            pores: (0..pore_side * pore_side).map(|_| rng.random_range(-1.0..1.0)).collect(),
            pore_side,
            eye_dx: rng.random_range(0.17..0.25),
            mouth_w: rng.random_range(0.12..0.2),
        }
    }

    fn pore(&self, u: f64, v: f64) -> f64 {
        let n = self.pore_side as isize;
        let x = (u.round() as isize + n / 2).rem_euclid(n) as usize;
        let y = (v.round() as isize + n / 2).rem_euclid(n) as usize;
        self.pores[y * self.pore_side + x]
    }

    /// Face color at offset `(u, v)` from the face center, and the face
    /// mask weight there.
    fn sample(&self, u: f64, v: f64, w: f64, h: f64) -> ([f64; 3], f64) {
        let (ax, ay) = (0.34 * w, 0.44 * h);
        let r = ((u / ax).powi(2) + (v / ay).powi(2)).sqrt();
        let mask = ((1.0 - r) * ax / 2.0).clamp(0.0, 1.0);
        let mut t: f64 = self.gratings.iter().map(|(a, f, th, ph)| a * (f * (u * th.cos() + v * th.sin()) + ph).sin()).sum();
        t += 22.0 * self.pore(u, v);
        let blob = |cx: f64, cy: f64, rx: f64, ry: f64| {
            let d = ((u - cx) / rx).powi(2) + ((v - cy) / ry).powi(2);
            if d < 1.0 {
                1.0 - d
            } else {
                0.0
            }
        };
        let dark = 90.0 * (blob(-self.eye_dx * w, -0.12 * h, 0.07 * w, 0.045 * h) + blob(self.eye_dx * w, -0.12 * h, 0.07 * w, 0.045 * h))
            + 60.0 * blob(0.0, 0.22 * h, self.mouth_w * w, 0.045 * h);
        let shade = 1.0 - 0.25 * r.min(1.0);
        (self.skin.map(|s| s * shade + t - dark), mask)
    }
}

fn render(face: &Face, shot: &Shot, frame: usize, w: usize, h: usize) -> (Vec<f64>, Vec<f64>) {
    let mut rgb = vec![0.0; 3 * w * h];
    let mut mask = vec![0.0; w * h];
    let cx = w as f64 / 2.0 + shot.start.0 + shot.drift.0 * frame as f64;
    let cy = h as f64 / 2.0 + shot.start.1 + shot.drift.1 * frame as f64;
    for y in 0..h {
        for x in 0..w {
            let (c, m) = face.sample(x as f64 - cx, y as f64 - cy, w as f64, h as f64);
            let i = y * w + x;
            let bg_shade = 0.85 + 0.3 * y as f64 / h as f64;
            for k in 0..3 {
                let v = m * c[k] + (1.0 - m) * shot.background[k] * bg_shade;
                rgb[3 * i + k] = shot.gain * v + shot.offset;
            }
            mask[i] = m;
        }
    }
    (rgb, mask)
}

fn gaussian_blur(rgb: &[f64], w: usize, h: usize, sigma: f64) -> Vec<f64> {
    let r = (3.0 * sigma).ceil() as isize;
    let k: Vec<f64> = (-r..=r).map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp()).collect();
    let sum: f64 = k.iter().sum();
    let k: Vec<f64> = k.iter().map(|v| v / sum).collect();
    let pass = |src: &[f64], horizontal: bool| {
        let mut out = vec![0.0; src.len()];
        for y in 0..h as isize {
            for x in 0..w as isize {
                for c in 0..3 {
                    let mut acc = 0.0;
                    for (j, kv) in k.iter().enumerate() {
                        let d = j as isize - r;
                        let (sx, sy) = if horizontal {
                            ((x + d).clamp(0, w as isize - 1), y)
                        } else {
                            (x, (y + d).clamp(0, h as isize - 1))
                        };
                        acc += kv * src[3 * (sy as usize * w + sx as usize) + c];
                    }
                    out[3 * (y as usize * w + x as usize) + c] = acc;
                }
            }
        }
        out
    };
    pass(&pass(rgb, true), false)
}

fn to_frame(rgb: &[f64], w: usize, h: usize, noise: f64, rng: &mut ChaCha8Rng) -> RgbFrame {
    let data = rgb
        .iter()
        .map(|v| {
            // sum of uniforms, close enough to Gaussian sensor noise
            let n: f64 = (0..4).map(|_| rng.random_range(-1.0..1.0)).sum::<f64>() * noise * 0.866;
            (v + n).round().clamp(0.0, 255.0) as u8
        })
        .collect();
    RgbFrame::new(w, h, data).expect("sizes match")
}

fn subject_id(s: usize) -> String {
    format!("s{:02}", s + 1)
}

impl SynthDataset {
    pub fn generate(cfg: &SynthConfig) -> Self {
        let (w, h) = (cfg.width, cfg.height);
        let faces: Vec<Face> = (0..cfg.subjects)
            .map(|s| Face::new(&mut ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x5eed_0000 + s as u64)), w.max(h)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let shot = |rng: &mut ChaCha8Rng| Shot {
            gain: rng.random_range(0.85..1.15),
            offset: rng.random_range(-12.0..12.0),
            background: [
                rng.random_range(30.0..220.0),
                rng.random_range(30.0..220.0),
                rng.random_range(30.0..220.0),
            ],
            start: (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
            drift: (rng.random_range(-0.08..0.08), rng.random_range(-0.05..0.05)),
            focus: rng.random_range(cfg.focus_sigma.0..=cfg.focus_sigma.1),
            noise: rng.random_range(cfg.noise_sigma.0..=cfg.noise_sigma.1),
        };
        let split_of = |s: usize| if s < cfg.train_subjects { Split::Train } else { Split::Test };
        // forgeries pair subjects within the same split
        let partner = |s: usize| {
            let (lo, n) = if s < cfg.train_subjects {
                (0, cfg.train_subjects)
            } else {
                (cfg.train_subjects, cfg.subjects - cfg.train_subjects)
            };
            lo + (s - lo + 1) % n.max(1)
        };
        let mut videos = Vec::new();
        for (s, face) in faces.iter().enumerate() {
            for v in 0..cfg.videos_per_subject {
                let id = format!("{}_v{:02}", subject_id(s), v + 1);
                let sh = shot(&mut rng);
                let frames = (0..cfg.frames_per_video)
                    .map(|f| to_frame(&sh.camera(render(face, &sh, f, w, h).0, w, h), w, h, sh.noise, &mut rng))
                    .collect();
                videos.push(SynthVideo {
                    entry: VideoEntry {
                        video_id: id.clone(),
                        claimed_subject: subject_id(s),
                        source_subject: None,
                        label: Label::Genuine,
                        split: split_of(s),
                        frames_path: PathBuf::from("frames").join(&id),
                    },
                    frames,
                });
            }
        }
        if let Some(label) = cfg.forgery {
            for claimed in 0..cfg.subjects {
                let source = partner(claimed);
                if source == claimed {
                    continue;
                }
                for v in 0..cfg.videos_per_subject {
                    let id = format!("{}_from_{}_v{:02}", subject_id(claimed), subject_id(source), v + 1);
                    let sh = shot(&mut rng);
                    let sigma = rng.random_range(cfg.blur_sigma.0..=cfg.blur_sigma.1);
                    let alpha = rng.random_range(cfg.alpha.0..=cfg.alpha.1);
                    let frames = (0..cfg.frames_per_video)
                        .map(|f| {
                            let (target, _) = render(&faces[source], &sh, f, w, h);
                            let (swap, mask) = render(&faces[claimed], &sh, f, w, h);
                            let swap = gaussian_blur(&swap, w, h, sigma);
                            let blended: Vec<f64> = target
                                .iter()
                                .zip(&swap)
                                .enumerate()
                                .map(|(i, (t, b))| {
                                    let a = alpha * mask[i / 3];
                                    a * b + (1.0 - a) * t
                                })
                                .collect();
                            to_frame(&sh.camera(blended, w, h), w, h, sh.noise, &mut rng)
                        })
                        .collect();
                    videos.push(SynthVideo {
                        entry: VideoEntry {
                            video_id: id.clone(),
                            claimed_subject: subject_id(claimed),
                            source_subject: Some(subject_id(source)),
                            label,
                            split: split_of(claimed),
                            frames_path: PathBuf::from("frames").join(&id),
                        },
                        frames,
                    });
                }
            }
        }
        Self { videos }
    }

    pub fn manifest(&self, base_dir: impl Into<PathBuf>) -> Result<Manifest, ManifestError> {
        Manifest::new(self.videos.iter().map(|v| v.entry.clone()).collect(), base_dir)
    }

    /// Writes `manifest.csv` and `frames/<video_id>/frame_NNNNNN.ppm` under
    /// `dir`, returning the manifest path.
    pub fn write_to(&self, dir: &Path) -> Result<PathBuf, FrameError> {
        for v in &self.videos {
            let out = dir.join(&v.entry.frames_path);
            std::fs::create_dir_all(&out).map_err(|source| FrameError::Io {
                path: out.clone(),
                source,
            })?;
            for (i, f) in v.frames.iter().enumerate() {
                save_frame(f, out.join(format!("frame_{i:06}.ppm")))?;
            }
        }
        let manifest = self.manifest(dir).expect("generated manifests are valid");
        let path = dir.join("manifest.csv");
        std::fs::write(&path, manifest.to_csv()).map_err(|source| FrameError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }
}
