//! Counting oracles: every quantity is recomputed by looping over all
//! scores at every threshold, with real infinities as the outer thresholds.

pub fn far_frr(genuine: &[f64], negative: &[f64], theta: f64) -> (f64, f64) {
    let mut fa = 0usize;
    for &s in negative {
        if s >= theta {
            fa += 1;
        }
    }
    let mut fr = 0usize;
    for &s in genuine {
        if s < theta {
            fr += 1;
        }
    }
    (fa as f64 / negative.len() as f64, fr as f64 / genuine.len() as f64)
}

pub fn thresholds(genuine: &[f64], negative: &[f64]) -> Vec<f64> {
    let mut t = vec![f64::NEG_INFINITY, f64::INFINITY];
    t.extend_from_slice(genuine);
    t.extend_from_slice(negative);
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    t.dedup();
    t
}

/// Minimum over all thresholds of max(FAR, FRR).
pub fn min_max_error(genuine: &[f64], negative: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for t in thresholds(genuine, negative) {
        let (a, r) = far_frr(genuine, negative, t);
        best = best.min(a.max(r));
    }
    best
}

pub fn frr_at_far(genuine: &[f64], negative: &[f64], target: f64) -> f64 {
    for t in thresholds(genuine, negative) {
        let (a, r) = far_frr(genuine, negative, t);
        if a <= target {
            return r;
        }
    }
    unreachable!("FAR is 0 at +inf")
}

/// Distinct (far, frr) points, FAR ascending then FRR descending.
pub fn det(genuine: &[f64], negative: &[f64]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = thresholds(genuine, negative)
        .into_iter()
        .map(|t| far_frr(genuine, negative, t))
        .collect();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.partial_cmp(&a.1).unwrap()));
    pts.dedup();
    pts
}

pub fn accepted_fraction(scores: &[f64], theta: f64) -> f64 {
    scores.iter().filter(|&&s| s >= theta).count() as f64 / scores.len() as f64
}
