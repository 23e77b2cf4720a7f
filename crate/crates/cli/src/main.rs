//! `dfdetect`: feature extraction, training, scoring and evaluation for
//! face-swap detection experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dfdetect::classifiers::PipelineKind;
use dfdetect::frame_io::Label;

#[derive(Debug, Parser)]
#[command(name = "dfdetect", version, about = "Face-swap video detection from image quality measures")]
struct Cli {
    /// Worker threads for feature extraction (outputs do not depend on it).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Log progress to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Features {
    Iqm,
    Pixels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    IqmSvm,
    IqmPcaLda,
    PixelsPcaLda,
}

impl From<Pipeline> for PipelineKind {
    fn from(p: Pipeline) -> Self {
        match p {
            Pipeline::IqmSvm => PipelineKind::IqmSvm,
            Pipeline::IqmPcaLda => PipelineKind::IqmPcaLda,
            Pipeline::PixelsPcaLda => PipelineKind::PixelsPcaLda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Forgery {
    DeepfakeLq,
    DeepfakeHq,
}

impl From<Forgery> for Label {
    fn from(f: Forgery) -> Self {
        match f {
            Forgery::DeepfakeLq => Label::DeepfakeLq,
            Forgery::DeepfakeHq => Label::DeepfakeHq,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute per-frame features for every video in a manifest.
    Extract {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "iqm")]
        features: Features,
        #[arg(long, value_name = "N", default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        frames_per_video: u32,
        /// Feature CSV to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a detection pipeline on the train split.
    Train {
        #[arg(long)]
        manifest: PathBuf,
        /// Feature CSV produced by `extract`.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        pipeline: Pipeline,
        #[arg(long, value_name = "X", default_value_t = 1.0)]
        svm_c: f64,
        /// PCA retained variance (default 0.99 for pixels, 0.95 for IQM).
        #[arg(long, value_name = "X")]
        retained: Option<f64>,
        /// Model JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score every test-split video with a trained model.
    Score {
        #[arg(long)]
        manifest: PathBuf,
        /// Feature CSV produced by `extract`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Model JSON produced by `train`.
        #[arg(long)]
        model: PathBuf,
        /// Score CSV to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// EER, FRR at FAR = 10% and DET points of a score file.
    Evaluate {
        /// Score CSV.
        #[arg(long = "in")]
        input: PathBuf,
        /// Report JSON to write.
        #[arg(long)]
        out: PathBuf,
        /// Optional DET point CSV.
        #[arg(long)]
        det: Option<PathBuf>,
    },
    /// Licit and tampered verification over per-video embeddings.
    Vulnerability {
        #[arg(long)]
        manifest: PathBuf,
        /// Embedding CSV.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        label: Forgery,
        /// Report JSON to write.
        #[arg(long)]
        out: PathBuf,
        /// Optional DET point CSV of the licit scenario.
        #[arg(long)]
        det: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        })
        .format_timestamp(None)
        .init();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
