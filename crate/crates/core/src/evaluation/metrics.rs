use super::{EvalError, ScoreSet};

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub eer: f64,
    pub theta_eer: f64,
    pub frr_at_far10: f64,
    pub det_points: Vec<(f64, f64)>,
    pub n_genuine: usize,
    pub n_impostor: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VulnReport {
    pub licit_eer: f64,
    pub theta_licit: f64,
    pub tampered_far: f64,
    pub n_tampered: usize,
}

/// FAR and FRR at every candidate threshold: the sorted unique scores
/// bracketed by one sentinel below and one above all of them.
struct Sweep {
    thresholds: Vec<f64>,
    far: Vec<f64>,
    frr: Vec<f64>,
    n_genuine: usize,
    n_negative: usize,
}

struct Sorted {
    genuine: Vec<f64>,
    negative: Vec<f64>,
}

impl Sorted {
    fn new(scores: &ScoreSet) -> Result<Self, EvalError> {
        let mut genuine = scores.genuine_scores();
        let mut negative = scores.negative_scores();
        if genuine.is_empty() {
            return Err(EvalError::EmptyClass("genuine"));
        }
        if negative.is_empty() {
            return Err(EvalError::EmptyClass("impostor or attack"));
        }
        genuine.sort_by(f64::total_cmp);
        negative.sort_by(f64::total_cmp);
        Ok(Self { genuine, negative })
    }

    fn far(&self, theta: f64) -> f64 {
        let accepted = self.negative.len() - self.negative.partition_point(|&s| s < theta);
        accepted as f64 / self.negative.len() as f64
    }

    fn frr(&self, theta: f64) -> f64 {
        self.genuine.partition_point(|&s| s < theta) as f64 / self.genuine.len() as f64
    }

    fn sweep(&self) -> Sweep {
        let mut all: Vec<f64> = self.genuine.iter().chain(&self.negative).copied().collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        let (lo, hi) = (all[0], all[all.len() - 1]);
        let margin = (hi - lo).max(1.0);
        let mut thresholds = Vec::with_capacity(all.len() + 2);
        thresholds.push(lo - margin);
        thresholds.extend(all);
        thresholds.push(hi + margin);
        Sweep {
            far: thresholds.iter().map(|&t| self.far(t)).collect(),
            frr: thresholds.iter().map(|&t| self.frr(t)).collect(),
            thresholds,
            n_genuine: self.genuine.len(),
            n_negative: self.negative.len(),
        }
    }
}

impl Sweep {
    fn eer(&self) -> (f64, f64) {
        let t = &self.thresholds;
        let d: Vec<f64> = self.far.iter().zip(&self.frr).map(|(a, r)| a - r).collect();
        if let Some(j0) = d.iter().position(|&x| x == 0.0) {
            let j1 = d.iter().rposition(|&x| x == 0.0).unwrap_or(j0);
            // FAR = FRR on the half-open interval (t[j0-1], t[j1]]
            return (self.far[j0], 0.5 * (t[j0 - 1] + t[j1]));
        }
        let i = d.iter().position(|&x| x < 0.0).expect("last sentinel has FRR 1") - 1;
        let alpha = d[i] / (d[i] - d[i + 1]);
        let theta = t[i] + alpha * (t[i + 1] - t[i]);
        (self.far[i] + alpha * (self.far[i + 1] - self.far[i]), theta)
    }

    fn frr_at_far(&self, target: f64) -> f64 {
        let j = self.far.iter().position(|&f| f <= target).expect("last sentinel has FAR 0");
        self.frr[j]
    }

    fn det(&self) -> Vec<(f64, f64)> {
        let mut pts: Vec<(f64, f64)> = self.far.iter().copied().zip(self.frr.iter().copied()).rev().collect();
        pts.dedup();
        pts
    }
}

/// `far` = fraction of negatives scoring `>= theta`, `frr` = fraction of
/// genuine scores `< theta`.
pub fn far_frr(scores: &ScoreSet, theta: f64) -> Result<(f64, f64), EvalError> {
    let s = Sorted::new(scores)?;
    Ok((s.far(theta), s.frr(theta)))
}

/// Equal error rate and its threshold.
///
/// The crossing of FAR and FRR is linearly interpolated between adjacent
/// candidate thresholds. When the two rates are equal over an interval the
/// midpoint of that interval is returned.
pub fn eer(scores: &ScoreSet) -> Result<(f64, f64), EvalError> {
    Ok(Sorted::new(scores)?.sweep().eer())
}

/// FRR at the smallest candidate threshold whose FAR does not exceed
/// `target_far`.
pub fn frr_at_far(scores: &ScoreSet, target_far: f64) -> Result<f64, EvalError> {
    if !(target_far > 0.0 && target_far <= 1.0) {
        return Err(EvalError::TargetFar(target_far));
    }
    Ok(Sorted::new(scores)?.sweep().frr_at_far(target_far))
}

/// `(far, frr)` at every candidate threshold, FAR ascending, duplicates
/// removed.
pub fn det_curve(scores: &ScoreSet) -> Result<Vec<(f64, f64)>, EvalError> {
    Ok(Sorted::new(scores)?.sweep().det())
}

pub fn evaluate(scores: &ScoreSet) -> Result<EvalReport, EvalError> {
    let sweep = Sorted::new(scores)?.sweep();
    let (eer, theta_eer) = sweep.eer();
    Ok(EvalReport {
        eer,
        theta_eer,
        frr_at_far10: sweep.frr_at_far(0.1),
        det_points: sweep.det(),
        n_genuine: sweep.n_genuine,
        n_impostor: sweep.n_negative,
    })
}

/// Share of tampered probes accepted at the licit EER threshold.
pub fn vulnerability(licit: &ScoreSet, tampered: &ScoreSet) -> Result<VulnReport, EvalError> {
    let (licit_eer, theta) = eer(licit)?;
    let n = tampered.records().len();
    if n == 0 {
        return Err(EvalError::EmptyClass("tampered"));
    }
    let accepted = tampered.records().iter().filter(|r| r.score >= theta).count();
    Ok(VulnReport {
        licit_eer,
        theta_licit: theta,
        tampered_far: accepted as f64 / n as f64,
        n_tampered: n,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{ScoreContext, ScoreRecord, TrialType};
    use super::*;
    use proptest::prelude::*;

    fn set(g: &[f64], n: &[f64]) -> ScoreSet {
        ScoreSet::from_scores(g, n).unwrap()
    }

    fn tampered(s: &[f64]) -> ScoreSet {
        let r = s.iter().map(|&x| ScoreRecord::new("t", "s", TrialType::Tampered, x)).collect();
        ScoreSet::new(r, ScoreContext::Tampered).unwrap()
    }

    #[test]
    fn boundaries() {
        let s = set(&[3.0, 4.0], &[1.0, 2.0]);
        assert_eq!(far_frr(&s, 0.0).unwrap(), (1.0, 0.0));
        assert_eq!(far_frr(&s, 5.0).unwrap(), (0.0, 1.0));
        let (e, t) = eer(&s).unwrap();
        assert_eq!(e, 0.0);
        assert!(t > 2.0 && t < 3.0, "{t}");
        assert_eq!(frr_at_far(&s, 0.1).unwrap(), 0.0);
        assert_eq!(frr_at_far(&s, 1.0).unwrap(), 0.0);
        assert!(frr_at_far(&s, 0.0).is_err());
        assert!(det_curve(&s).unwrap().contains(&(0.0, 0.0)));
    }

    #[test]
    fn single_tie_det() {
        let det = det_curve(&set(&[0.5], &[0.5])).unwrap();
        assert!(det.contains(&(1.0, 0.0)) && det.contains(&(0.0, 1.0)));
        let (e, _) = eer(&set(&[0.5], &[0.5])).unwrap();
        assert_eq!(e, 0.5);
    }

    #[test]
    fn empty_class_is_error() {
        assert_eq!(eer(&set(&[1.0], &[])), Err(EvalError::EmptyClass("impostor or attack")));
        assert_eq!(eer(&set(&[], &[1.0])), Err(EvalError::EmptyClass("genuine")));
    }

    #[test]
    fn vulnerability_extremes() {
        let licit = set(&[3.0, 4.0], &[1.0, 2.0]);
        assert_eq!(vulnerability(&licit, &tampered(&[5.0, 6.0])).unwrap().tampered_far, 1.0);
        assert_eq!(vulnerability(&licit, &tampered(&[0.0, 2.0])).unwrap().tampered_far, 0.0);
        assert!(vulnerability(&licit, &tampered(&[])).is_err());
    }

    fn distinct(v: Vec<f64>) -> Vec<f64> {
        let mut seen = std::collections::HashSet::new();
        v.into_iter().filter(|x| seen.insert(x.to_bits())).collect()
    }

    proptest! {
        #[test]
        fn rates_are_monotone(g in proptest::collection::vec(-5.0f64..5.0, 1..30),
                              n in proptest::collection::vec(-5.0f64..5.0, 1..30)) {
            let s = set(&g, &n);
            let mut prev = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..=60 {
                let (far, frr) = far_frr(&s, -6.0 + 0.2 * k as f64).unwrap();
                prop_assert!(far <= prev.0 && frr >= prev.1);
                prev = (far, frr);
            }
        }

        #[test]
        fn eer_point_is_balanced(v in proptest::collection::vec(-5.0f64..5.0, 2..60), split in 1usize..59) {
            let v = distinct(v);
            prop_assume!(split < v.len());
            let s = set(&v[..split], &v[split..]);
            let (_, theta) = eer(&s).unwrap();
            let (far, frr) = far_frr(&s, theta).unwrap();
            let n = split.min(v.len() - split) as f64;
            prop_assert!((far - frr).abs() <= 1.0 / n + 1e-12);
        }

        #[test]
        fn det_is_sorted(g in proptest::collection::vec(-5.0f64..5.0, 1..30),
                         n in proptest::collection::vec(-5.0f64..5.0, 1..30)) {
            let det = det_curve(&set(&g, &n)).unwrap();
            for w in det.windows(2) {
                prop_assert!(w[0].0 <= w[1].0 && w[0].1 >= w[1].1 && w[0] != w[1]);
            }
            for (a, r) in det {
                prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&r));
            }
        }
    }
}
