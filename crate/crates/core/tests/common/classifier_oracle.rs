//! Slow reference computations for the classifiers.

pub fn mean(x: &[Vec<f64>]) -> Vec<f64> {
    let d = x[0].len();
    let mut m = vec![0.0; d];
    for r in x {
        for j in 0..d {
            m[j] += r[j];
        }
    }
    m.iter().map(|v| v / x.len() as f64).collect()
}

/// Covariance with divisor n - 1.
pub fn covariance(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = mean(x);
    let d = m.len();
    let mut c = vec![vec![0.0; d]; d];
    for r in x {
        for a in 0..d {
            for b in 0..d {
                c[a][b] += (r[a] - m[a]) * (r[b] - m[b]);
            }
        }
    }
    for row in &mut c {
        for v in row.iter_mut() {
            *v /= (x.len() - 1) as f64;
        }
    }
    c
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut e: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    e.sort_by(|x, y| y.partial_cmp(x).unwrap());
    e
}

/// Smallest k whose leading eigenvalues reach `retained` of the total.
pub fn minimal_k(eigs: &[f64], retained: f64) -> usize {
    let total: f64 = eigs.iter().map(|e| e.max(0.0)).sum();
    let mut acc = 0.0;
    for (i, e) in eigs.iter().enumerate() {
        acc += e.max(0.0);
        if acc / total >= retained {
            return i + 1;
        }
    }
    eigs.len()
}

/// Z-scores with population deviation; constant columns keep unit scale.
pub fn standardize(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = mean(x);
    let d = m.len();
    let mut sd = vec![0.0; d];
    for r in x {
        for j in 0..d {
            sd[j] += (r[j] - m[j]).powi(2);
        }
    }
    let sd: Vec<f64> = sd
        .iter()
        .map(|v| {
            let s = (v / x.len() as f64).sqrt();
            if s == 0.0 {
                1.0
            } else {
                s
            }
        })
        .collect();
    x.iter()
        .map(|r| (0..d).map(|j| (r[j] - m[j]) / sd[j]).collect())
        .collect()
}

pub fn primal_2d(w: [f64; 2], b: f64, c: f64, z: &[Vec<f64>], y: &[f64]) -> f64 {
    let mut loss = 0.0;
    for (p, t) in z.iter().zip(y) {
        let f = w[0] * p[0] + w[1] * p[1] + b;
        let h = 1.0 - t * f;
        if h > 0.0 {
            loss += h;
        }
    }
    0.5 * (w[0] * w[0] + w[1] * w[1]) + c * loss
}

/// Minimum of the 2-D primal by repeated grid search over (w0, w1, b),
/// zooming around the best node each round.
pub fn svm_grid_minimum(z: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    const STEPS: i32 = 10;
    let mut center = [0.0f64; 3];
    let mut half = 8.0;
    let mut best = f64::INFINITY;
    for _ in 0..40 {
        let h = half / STEPS as f64;
        let mut arg = center;
        for i in -STEPS..=STEPS {
            for j in -STEPS..=STEPS {
                for k in -STEPS..=STEPS {
                    let p = [center[0] + i as f64 * h, center[1] + j as f64 * h, center[2] + k as f64 * h];
                    let v = primal_2d([p[0], p[1]], p[2], c, z, y);
                    if v < best {
                        best = v;
                        arg = p;
                    }
                }
            }
        }
        center = arg;
        half /= 3.0;
    }
    best
}
