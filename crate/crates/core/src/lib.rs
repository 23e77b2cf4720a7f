//! Face-swap video detection from image-quality measures, with the
//! biometric evaluation protocol used to assess both detectors and face
//! verification systems.
//!
//! The crate is organized bottom-up:
//!
//! - [`frame_io`]: PGM/PPM frames, luminance, manifests, frame sampling.
//! - [`iqm`]: the 26-measure quality vector and raw-pixel features.
//! - [`classifiers`]: PCA, LDA, linear SVM and the three detection pipelines.
//! - [`evaluation`]: FAR/FRR/EER, DET points, licit and tampered verification.
//! - [`formats`]: feature, score, embedding, model and report files.
//! - [`synth`]: deterministic synthetic videos for demos and tests.

pub mod frame_io;
pub mod iqm;
pub mod classifiers;
pub mod formats;
pub mod evaluation;
pub mod synth;

pub use frame_io::{to_luminance, LumaPlane, RgbFrame};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/quality.md")]
    mod quality {}
    #[doc = include_str!("../../../book/src/pipelines.md")]
    mod pipelines {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
