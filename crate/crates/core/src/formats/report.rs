//! Report JSON: `eer`, `theta_eer`, `frr_at_far10`, `n_genuine`,
//! `n_impostor`, optional `tampered_far` and `n_tampered`, and `det` as
//! `[far, frr]` pairs.

use serde::{Deserialize, Serialize};

use crate::evaluation::{EvalReport, VulnReport};

use super::{format_real, to_json_string, FormatError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub eer: f64,
    pub theta_eer: f64,
    pub frr_at_far10: f64,
    pub n_genuine: usize,
    pub n_impostor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tampered_far: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_tampered: Option<usize>,
    pub det: Vec<[f64; 2]>,
}

impl Report {
    pub fn new(eval: &EvalReport) -> Self {
        Self {
            eer: eval.eer,
            theta_eer: eval.theta_eer,
            frr_at_far10: eval.frr_at_far10,
            n_genuine: eval.n_genuine,
            n_impostor: eval.n_impostor,
            tampered_far: None,
            n_tampered: None,
            det: eval.det_points.iter().map(|&(a, r)| [a, r]).collect(),
        }
    }

    /// A licit report extended with the tampered acceptance rate.
    pub fn with_vulnerability(eval: &EvalReport, vuln: &VulnReport) -> Self {
        Self {
            tampered_far: Some(vuln.tampered_far),
            n_tampered: Some(vuln.n_tampered),
            ..Self::new(eval)
        }
    }

    /// DET points as `far,frr` CSV.
    pub fn det_csv(&self) -> String {
        let mut out = String::from("far,frr\n");
        for [a, r] in &self.det {
            out.push_str(&format!("{},{}\n", format_real(*a), format_real(*r)));
        }
        out
    }
}

pub fn report_to_json(report: &Report) -> Result<String, FormatError> {
    to_json_string(report)
}
