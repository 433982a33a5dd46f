//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's numerical code.

#![allow(dead_code)]

use blockrec::model::{Channel, ModelParams, Observation, SideInformation};

/// Cyclic Jacobi eigen-decomposition of a dense symmetric matrix. Returns
/// eigenvalues and the matching unit eigenvectors, unsorted.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i][j] * m[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[i][i]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    (values, vectors)
}

/// Log of the joint density of `(A, labels)` up to terms that do not depend
/// on the labels, evaluated pair by pair from the Gaussian or Bernoulli law.
pub fn log_joint(obs: &Observation<f64>, labels: &[i8], params: &ModelParams<f64>) -> f64 {
    let n = obs.n();
    let nf = n as f64;
    let scale = nf.ln() / nf;
    let mut total = 0.0;
    match params {
        ModelParams::Ros(p) => {
            let f = scale.sqrt();
            let spike = |l: i8| if l > 0 { p.a } else { p.b };
            for i in 0..n {
                for j in (i + 1)..n {
                    let mean = spike(labels[i]) * spike(labels[j]) * f;
                    let x = obs.get(i, j);
                    total += -0.5 * (x - mean) * (x - mean) - 0.5 * (2.0 * std::f64::consts::PI).ln();
                }
            }
        }
        ModelParams::Sbm(p) => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let prob = match (labels[i] > 0, labels[j] > 0) {
                        (true, true) => p.a1 * scale,
                        (false, false) => p.a2 * scale,
                        _ => p.b * scale,
                    };
                    let x = obs.get(i, j);
                    total += if x == 1.0 { prob.ln() } else { (1.0 - prob).ln() };
                }
            }
        }
    }
    let rho = params.rho();
    for &l in labels {
        total += if l > 0 { rho.ln() } else { (1.0 - rho).ln() };
    }
    total
}

/// `log Pr(y_i | label)` for one index.
pub fn log_side(side: &SideInformation, i: usize, label: i8) -> f64 {
    if side.channel() == Channel::None {
        return 0.0;
    }
    let y = side.y()[i];
    match side.channel() {
        Channel::None => unreachable!(),
        Channel::Bec => {
            let eps = side.param();
            if y == 0 {
                eps.ln()
            } else if y == label {
                (1.0 - eps).ln()
            } else {
                f64::NEG_INFINITY
            }
        }
        Channel::Bsc => {
            let alpha = side.param();
            if y == label {
                (1.0 - alpha).ln()
            } else {
                alpha.ln()
            }
        }
    }
}

/// `log Pr(sigma_i = +1 | A, y, sigma_{-i}) - log Pr(sigma_i = -1 | ...)`
/// from two full joint-density evaluations.
pub fn brute_force_genie(obs: &Observation<f64>, labels: &[i8], params: &ModelParams<f64>, side: &SideInformation) -> Vec<f64> {
    (0..labels.len())
        .map(|i| {
            let mut plus = labels.to_vec();
            plus[i] = 1;
            let mut minus = labels.to_vec();
            minus[i] = -1;
            let sp = log_side(side, i, 1);
            let sm = log_side(side, i, -1);
            if sp == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            if sm == f64::NEG_INFINITY {
                return f64::INFINITY;
            }
            log_joint(obs, &plus, params) - log_joint(obs, &minus, params) + sp - sm
        })
        .collect()
}

/// Full log posterior of a label vector up to a constant, by direct
/// density evaluation.
pub fn brute_force_log_posterior(obs: &Observation<f64>, labels: &[i8], params: &ModelParams<f64>, side: &SideInformation) -> f64 {
    let side_total: f64 = (0..labels.len()).map(|i| log_side(side, i, labels[i])).sum();
    log_joint(obs, labels, params) + side_total
}

/// Every vector in `{+1, -1}^n`.
pub fn all_labelings(n: usize) -> Vec<Vec<i8>> {
    (0..(1u32 << n))
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect())
        .collect()
}

/// Dense copy of a symmetric matrix.
pub fn dense(m: &blockrec::linalg::SymMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.n()).map(|i| m.row(i).to_vec()).collect()
}
