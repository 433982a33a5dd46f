//! Genie scores: the log posterior ratio of each label given all the others.

use crate::error::{Error, Result};
use crate::model::{check_len, Channel, CommunityAssignment, ModelParams, Observation, ObservationKind, RosParams, SbmParams, SideInformation};
use crate::scalar::{log_scale, Scalar};

/// Per-index extended-real scores. Never NaN; `±inf` marks labels fixed by
/// erasure side information.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector<T = f64> {
    values: Vec<T>,
}

impl<T: Scalar> ScoreVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidParams(format!("score {i} is NaN")));
        }
        Ok(Self { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<T>) -> Self {
        debug_assert!(values.iter().all(|v| !v.is_nan()));
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }
}

/// `min_i sigma_i z_i` with its location and the per-index products.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginReport<T = f64> {
    pub min_signed_score: T,
    /// First index attaining the minimum (0-based).
    pub argmin: usize,
    pub per_index: Vec<T>,
}

/// `sgn(x)` with `sgn(0) = sgn(-0) = +1`.
#[inline]
pub fn sgn<T: Scalar>(x: T) -> i8 {
    if x >= T::zero() {
        1
    } else {
        -1
    }
}

fn prior_log_odds<T: Scalar>(rho: T) -> T {
    (rho / (T::one() - rho)).ln()
}

/// Row sums over `C+` and `C-` excluding the diagonal. The diagonal of an
/// observation is zero, so including `i` would change nothing, but both
/// counts exclude `i`.
fn split_row_sums<T: Scalar>(row: &[T], labels: &[i8], i: usize) -> (T, T) {
    let mut plus = T::zero();
    let mut minus = T::zero();
    for (j, (&a, &l)) in row.iter().zip(labels).enumerate() {
        if j == i {
            continue;
        }
        if l > 0 {
            plus += a;
        } else {
            minus += a;
        }
    }
    (plus, minus)
}

fn counts_without(sigma: &CommunityAssignment, i: usize) -> (usize, usize) {
    let (p, m) = (sigma.count_plus(), sigma.count_minus());
    if sigma.label(i) > 0 {
        (p - 1, m)
    } else {
        (p, m - 1)
    }
}

fn check_dims<T: Scalar>(obs: &Observation<T>, sigma: &CommunityAssignment) -> Result<()> {
    check_len(obs.n(), sigma.n())
}

/// Exact finite-`n` genie scores for the Gaussian spike model.
pub fn genie_scores_ros<T: Scalar>(obs: &Observation<T>, sigma: &CommunityAssignment, params: &RosParams<T>) -> Result<ScoreVector<T>> {
    check_dims(obs, sigma)?;
    let n = obs.n();
    let (ln, f) = log_scale::<T>(n);
    let RosParams { rho, a, b } = *params;
    let half = ln / (T::of(2.0) * T::of(n as f64));
    let w_plus = a * a * b * b - a * a * a * a;
    let w_minus = b * b * b * b - a * a * b * b;
    let prior = prior_log_odds(rho);
    let labels = sigma.labels();
    let values = (0..n)
        .map(|i| {
            let (sp, sm) = split_row_sums(obs.row(i), labels, i);
            let (np, nm) = counts_without(sigma, i);
            (a - b) * f * (a * sp + b * sm) + half * (T::of(np as f64) * w_plus + T::of(nm as f64) * w_minus) + prior
        })
        .collect();
    Ok(ScoreVector::from_values_unchecked(values))
}

/// `log(p1 (1-q) / (q (1-p1)))`, `log(q (1-p2) / (p2 (1-q)))`,
/// `log((1-p1)/(1-q))` and `log((1-q)/(1-p2))` at size `n`.
pub(crate) fn sbm_log_weights<T: Scalar>(params: &SbmParams<T>, n: usize) -> Result<[T; 4]> {
    let (p1, p2, q) = params.edge_probs(n)?;
    for (name, p) in [("p1", p1), ("p2", p2), ("q", q)] {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::range(name, p.as_f64(), "(0, 1)"));
        }
    }
    let one = T::one();
    Ok([
        (p1 * (one - q) / (q * (one - p1))).ln(),
        (q * (one - p2) / (p2 * (one - q))).ln(),
        ((one - p1) / (one - q)).ln(),
        ((one - q) / (one - p2)).ln(),
    ])
}

/// Exact finite-`n` genie scores for the two-community SBM.
pub fn genie_scores_sbm<T: Scalar>(obs: &Observation<T>, sigma: &CommunityAssignment, params: &SbmParams<T>) -> Result<ScoreVector<T>> {
    check_dims(obs, sigma)?;
    let n = obs.n();
    let [wp, wm, cp, cm] = sbm_log_weights(params, n)?;
    let prior = prior_log_odds(params.rho);
    let labels = sigma.labels();
    let values = (0..n)
        .map(|i| {
            let (sp, sm) = split_row_sums(obs.row(i), labels, i);
            let (np, nm) = counts_without(sigma, i);
            wp * sp + wm * sm + prior + T::of(np as f64) * cp + T::of(nm as f64) * cm
        })
        .collect();
    Ok(ScoreVector::from_values_unchecked(values))
}

/// BEC: `±inf` wherever `y_i = ±1`, untouched elsewhere. BSC: adds
/// `log((1-alpha)/alpha) y`.
pub fn apply_side_info_to_scores<T: Scalar>(z: &ScoreVector<T>, side: &SideInformation) -> Result<ScoreVector<T>> {
    if side.channel() == Channel::None {
        return Err(Error::MissingSideInfo);
    }
    check_len(z.len(), side.y().len())?;
    let values = match side.channel() {
        Channel::None => return Err(Error::MissingSideInfo),
        Channel::Bec => z
            .values()
            .iter()
            .zip(side.y())
            .map(|(&v, &y)| match y {
                1 => T::infinity(),
                -1 => T::neg_infinity(),
                _ => v,
            })
            .collect(),
        Channel::Bsc => {
            let trust = T::of(side.trust_factor());
            z.values()
                .iter()
                .zip(side.y())
                .map(|(&v, &y)| v + trust * T::of(y as f64))
                .collect()
        }
    };
    Ok(ScoreVector::from_values_unchecked(values))
}

/// Applies the channel transform when there is side information and returns
/// the scores unchanged otherwise.
pub fn with_side_info<T: Scalar>(z: ScoreVector<T>, side: &SideInformation) -> Result<ScoreVector<T>> {
    if side.channel() == Channel::None {
        Ok(z)
    } else {
        apply_side_info_to_scores(&z, side)
    }
}

/// Genie scores for either model including side information.
pub fn genie_scores<T: Scalar>(
    obs: &Observation<T>,
    sigma: &CommunityAssignment,
    params: &ModelParams<T>,
    side: &SideInformation,
) -> Result<ScoreVector<T>> {
    side.check_n(obs.n())?;
    let z = match (params, obs.kind()) {
        (ModelParams::Ros(p), ObservationKind::Ros) => genie_scores_ros(obs, sigma, p)?,
        (ModelParams::Sbm(p), ObservationKind::Sbm) => genie_scores_sbm(obs, sigma, p)?,
        _ => return Err(Error::InvalidParams("model parameters do not match the observation kind".into())),
    };
    with_side_info(z, side)
}

/// `sgn` applied elementwise.
pub fn genie_estimate<T: Scalar>(z: &ScoreVector<T>) -> Vec<i8> {
    z.values().iter().map(|&v| sgn(v)).collect()
}

/// Signed scores `sigma_i z_i` and their minimum.
pub fn margin<T: Scalar>(z: &ScoreVector<T>, sigma: &CommunityAssignment) -> Result<MarginReport<T>> {
    check_len(sigma.n(), z.len())?;
    let per_index: Vec<T> = z
        .values()
        .iter()
        .zip(sigma.labels())
        .map(|(&v, &l)| if l > 0 { v } else { -v })
        .collect();
    let mut argmin = 0;
    for (i, &v) in per_index.iter().enumerate() {
        if v < per_index[argmin] {
            argmin = i;
        }
    }
    Ok(MarginReport {
        min_signed_score: per_index[argmin],
        argmin,
        per_index,
    })
}

/// `||z - w||_inf` over indices where both are finite. Where either side is
/// infinite only the signs are compared: agreement contributes nothing and
/// disagreement makes the gap infinite.
pub fn score_gap_inf<T: Scalar>(z: &ScoreVector<T>, w: &ScoreVector<T>) -> Result<T> {
    check_len(z.len(), w.len())?;
    let mut gap = T::zero();
    for (&x, &y) in z.values().iter().zip(w.values()) {
        if x.is_finite() && y.is_finite() {
            gap = gap.max((x - y).abs());
        } else if sgn(x) != sgn(y) {
            return Ok(T::infinity());
        }
    }
    Ok(gap)
}

/// `(rho (a^2 b^2 - a^4) + (1 - rho)(b^4 - a^2 b^2)) log n / 2`.
pub fn ros_gamma<T: Scalar>(params: &RosParams<T>, n: usize) -> T {
    let RosParams { rho, a, b } = *params;
    let (ln, _) = log_scale::<T>(n);
    let (a2, b2) = (a * a, b * b);
    (rho * (a2 * b2 - a2 * a2) + (T::one() - rho) * (b2 * b2 - a2 * b2)) * ln / T::of(2.0)
}

/// Asymptotic vector form `(a - b) sqrt(log n / n) A v* + (gamma + log(rho/(1-rho))) 1`.
pub fn ros_vector_form<T: Scalar>(obs: &Observation<T>, sigma: &CommunityAssignment, params: &RosParams<T>) -> Result<ScoreVector<T>> {
    check_dims(obs, sigma)?;
    let n = obs.n();
    let (_, f) = log_scale::<T>(n);
    let v: Vec<T> = sigma.labels().iter().map(|&l| params.spike(l)).collect();
    let av = obs.matrix().matvec(&v);
    let shift = ros_gamma(params, n) + prior_log_odds(params.rho);
    let scale = (params.a - params.b) * f;
    Ok(ScoreVector::from_values_unchecked(av.into_iter().map(|x| scale * x + shift).collect()))
}
