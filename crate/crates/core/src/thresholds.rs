//! Information-theoretic exact-recovery thresholds for both models.
//!
//! Every threshold is expressed as a value compared against 1: the problem
//! is recoverable strictly above 1 and impossible strictly below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Channel, ModelParams, ObservationKind, RosParams, SbmParams};
use crate::optimize::maximize_on_interval;
use crate::scalar::Scalar;

/// `|value - 1|` at or below this is reported as critical.
pub const CRITICAL_TOL: f64 = 1e-12;

/// Argument tolerance of the divergence maximization.
pub const SUP_TOL: f64 = 1e-11;

/// `(a - b)^2 (rho a^2 + (1 - rho) b^2)`.
pub fn psi<T: Scalar>(params: &RosParams<T>) -> T {
    let d = params.a - params.b;
    d * d * params.second_moment()
}

/// Degree profiles `theta+ = (rho a1, (1-rho) b)` and `theta- = (rho b, (1-rho) a2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommunityProfile {
    pub theta_plus: [f64; 2],
    pub theta_minus: [f64; 2],
}

impl CommunityProfile {
    pub fn from_params<T: Scalar>(p: &SbmParams<T>) -> Self {
        let (rho, a1, a2, b) = (p.rho.as_f64(), p.a1.as_f64(), p.a2.as_f64(), p.b.as_f64());
        Self {
            theta_plus: [rho * a1, (1.0 - rho) * b],
            theta_minus: [rho * b, (1.0 - rho) * a2],
        }
    }
}

/// `D_t(mu, nu) = sum_i t mu_i + (1 - t) nu_i - mu_i^t nu_i^(1-t)` with `0^0 = 1`.
pub fn ch_divergence(mu: [f64; 2], nu: [f64; 2], t: f64) -> Result<f64> {
    for (name, v) in [("mu", mu), ("nu", nu)] {
        if v.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidParams(format!("{name} entries must be finite and nonnegative, got {v:?}")));
        }
    }
    Ok(ch_unchecked(mu, nu, t))
}

#[inline]
fn ch_unchecked(mu: [f64; 2], nu: [f64; 2], t: f64) -> f64 {
    (0..2)
        .map(|i| t * mu[i] + (1.0 - t) * nu[i] - mu[i].powf(t) * nu[i].powf(1.0 - t))
        .sum()
}

/// Result of maximizing `c t + D_t(theta+, theta-)` over `t in [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupCh {
    pub value: f64,
    pub argmax_t: f64,
    /// The objective is identically zero (`theta+ = theta-` and `c = 0`).
    pub degenerate: bool,
}

/// `sup_{t in [0,1]} c t + D_t(theta+, theta-)`.
pub fn sup_ch(theta_plus: [f64; 2], theta_minus: [f64; 2], linear_coeff: f64) -> Result<SupCh> {
    ch_divergence(theta_plus, theta_minus, 0.5)?;
    if !linear_coeff.is_finite() {
        return Err(Error::range("linear_coeff", linear_coeff, "finite reals"));
    }
    if theta_plus == theta_minus && linear_coeff == 0.0 {
        return Ok(SupCh {
            value: 0.0,
            argmax_t: 0.5,
            degenerate: true,
        });
    }
    let m = maximize_on_interval(|t| linear_coeff * t + ch_unchecked(theta_plus, theta_minus, t), 0.0, 1.0, SUP_TOL);
    Ok(SupCh {
        value: m.value,
        argmax_t: m.arg,
        degenerate: false,
    })
}

/// Threshold evaluation for one model, channel and side-information strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub model: ObservationKind,
    pub params: ModelParams<f64>,
    pub channel: Channel,
    pub beta: f64,
    pub value: f64,
    /// `value > 1`.
    pub recoverable: bool,
    /// `|value - 1| <= 1e-12`; the theory says nothing at the boundary.
    pub critical: bool,
    /// Maximizing `t` of the divergence term; SBM only.
    pub optimizer_t: Option<f64>,
    pub degenerate: bool,
}

impl ThresholdReport {
    fn new(params: ModelParams<f64>, channel: Channel, beta: f64, value: f64, optimizer_t: Option<f64>, degenerate: bool) -> Self {
        Self {
            model: params.kind(),
            params,
            channel,
            beta,
            value,
            recoverable: value > 1.0,
            critical: (value - 1.0).abs() <= CRITICAL_TOL,
            optimizer_t,
            degenerate,
        }
    }
}

fn check_beta(channel: Channel, beta: f64) -> Result<f64> {
    if channel == Channel::None {
        return Ok(0.0);
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::range("beta", beta, "[0, inf)"));
    }
    Ok(beta)
}

fn ros_params_f64<T: Scalar>(p: &RosParams<T>) -> RosParams<f64> {
    RosParams {
        rho: p.rho.as_f64(),
        a: p.a.as_f64(),
        b: p.b.as_f64(),
    }
}

fn sbm_params_f64<T: Scalar>(p: &SbmParams<T>) -> SbmParams<f64> {
    SbmParams {
        rho: p.rho.as_f64(),
        a1: p.a1.as_f64(),
        a2: p.a2.as_f64(),
        b: p.b.as_f64(),
    }
}

/// Gaussian-model threshold value as a function of `Psi` alone.
pub fn ros_threshold_value(psi: f64, channel: Channel, beta: f64) -> f64 {
    match channel {
        Channel::None => psi / 8.0,
        Channel::Bec => psi / 8.0 + beta,
        Channel::Bsc => {
            if psi > 2.0 * beta {
                (psi + 2.0 * beta).powi(2) / (8.0 * psi)
            } else {
                beta
            }
        }
    }
}

/// Gaussian-model threshold; `beta` is ignored for `Channel::None`.
pub fn ros_threshold<T: Scalar>(params: &RosParams<T>, channel: Channel, beta: f64) -> Result<ThresholdReport> {
    let beta = check_beta(channel, beta)?;
    let p = ros_params_f64(params);
    let value = ros_threshold_value(psi(&p), channel, beta);
    Ok(ThresholdReport::new(ModelParams::Ros(p), channel, beta, value, None, false))
}

/// SBM threshold; `beta` is ignored for `Channel::None`.
pub fn sbm_threshold<T: Scalar>(params: &SbmParams<T>, channel: Channel, beta: f64) -> Result<ThresholdReport> {
    let beta = check_beta(channel, beta)?;
    let p = sbm_params_f64(params);
    let prof = CommunityProfile::from_params(&p);
    let (tp, tm) = (prof.theta_plus, prof.theta_minus);
    let (value, t, degenerate) = match channel {
        Channel::None => {
            let s = sup_ch(tp, tm, 0.0)?;
            (s.value, s.argmax_t, s.degenerate)
        }
        Channel::Bec => {
            let s = sup_ch(tp, tm, 0.0)?;
            (beta + s.value, s.argmax_t, s.degenerate)
        }
        Channel::Bsc => {
            // sup_t beta (1 - t) + D_t = beta + sup_t (-beta t + D_t)
            let up = sup_ch(tp, tm, beta)?;
            let down = sup_ch(tp, tm, -beta)?;
            let down_value = beta + down.value;
            if up.value <= down_value {
                (up.value, up.argmax_t, up.degenerate)
            } else {
                (down_value, down.argmax_t, down.degenerate)
            }
        }
    };
    Ok(ThresholdReport::new(ModelParams::Sbm(p), channel, beta, value, Some(t), degenerate))
}

/// Dispatches on the model.
pub fn threshold<T: Scalar>(params: &ModelParams<T>, channel: Channel, beta: f64) -> Result<ThresholdReport> {
    match params {
        ModelParams::Ros(p) => ros_threshold(p, channel, beta),
        ModelParams::Sbm(p) => sbm_threshold(p, channel, beta),
    }
}

/// Regions of the `(Psi, beta)` plane for the Gaussian model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RosRegime {
    NoSideInfoNeeded,
    TrivialFromSideInfo,
    BothChannelsHelp,
    OnlyBecHelps,
    ImpossibleDespiteSideInfo,
}

impl RosRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NoSideInfoNeeded => "no-side-info-needed",
            Self::TrivialFromSideInfo => "trivial-from-side-info",
            Self::BothChannelsHelp => "both-channels-help",
            Self::OnlyBecHelps => "only-bec-helps",
            Self::ImpossibleDespiteSideInfo => "impossible-despite-side-info",
        }
    }
}

impl std::fmt::Display for RosRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Region containing `(psi, beta)`. Checked in order: `Psi/8 > 1`, then
/// `beta > 1`, then BSC value above 1, then BEC value above 1.
pub fn classify_ros_regime(psi_val: f64, beta: f64) -> Result<RosRegime> {
    if !(psi_val >= 0.0 && psi_val.is_finite()) {
        return Err(Error::range("psi", psi_val, "[0, inf)"));
    }
    check_beta(Channel::Bec, beta)?;
    Ok(if psi_val / 8.0 > 1.0 {
        RosRegime::NoSideInfoNeeded
    } else if beta > 1.0 {
        RosRegime::TrivialFromSideInfo
    } else if ros_threshold_value(psi_val, Channel::Bsc, beta) > 1.0 {
        RosRegime::BothChannelsHelp
    } else if ros_threshold_value(psi_val, Channel::Bec, beta) > 1.0 {
        RosRegime::OnlyBecHelps
    } else {
        RosRegime::ImpossibleDespiteSideInfo
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap()), 4.0);
        assert_eq!(psi(&RosParams::<f64>::new(0.3, 2.0, 2.0).unwrap()), 0.0);
        let c = 1.0 / 2f64.sqrt();
        let s = 1.0 / c.sqrt();
        let p = RosParams::<f64>::new(0.5, s, -s).unwrap();
        assert!((psi(&p) / 8.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn table_one_cases() {
        let p4 = RosParams::<f64>::symmetric_with_psi(4.0).unwrap();
        let r = ros_threshold(&p4, Channel::Bec, 0.6).unwrap();
        assert!((r.value - 1.1).abs() < 1e-12 && r.recoverable);
        assert_eq!(ros_threshold_value(1.0, Channel::Bsc, 0.9), 0.9);
        assert_eq!(ros_threshold_value(8.0, Channel::Bsc, 0.5), 1.265625);
        assert_eq!(ros_threshold_value(0.0, Channel::Bsc, 0.3), 0.3);
        assert_eq!(ros_threshold_value(1.0, Channel::Bsc, 0.5), 0.5);
    }

    #[test]
    fn divergence_endpoints_and_domain() {
        let (mu, nu) = ([1.3, 0.2], [0.4, 2.0]);
        assert!(ch_divergence(mu, nu, 0.0).unwrap().abs() < 1e-15);
        assert!(ch_divergence(mu, nu, 1.0).unwrap().abs() < 1e-15);
        assert!(ch_divergence(mu, nu, 0.5).unwrap() >= 0.0);
        assert!(ch_divergence([-1.0, 0.0], nu, 0.5).is_err());
        assert_eq!(ch_divergence([0.0, 1.0], [0.0, 1.0], 0.0).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_sbm_closed_form() {
        let p = SbmParams::<f64>::new(0.5, 16.0, 16.0, 4.0).unwrap();
        let r = sbm_threshold(&p, Channel::None, 0.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!((r.optimizer_t.unwrap() - 0.5).abs() < 1e-6);
        assert!(r.recoverable);
    }

    #[test]
    fn large_slope_gives_boundary_solution() {
        let s = sup_ch([0.5, 0.5], [0.5, 1.0], 10.0).unwrap();
        assert_eq!(s.argmax_t, 1.0);
        assert!((s.value - 10.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_profile_is_flagged() {
        let p = SbmParams::<f64>::new(0.5, 3.0, 3.0, 3.0).unwrap();
        let r = sbm_threshold(&p, Channel::None, 0.0).unwrap();
        assert!(r.degenerate);
        assert_eq!((r.value, r.optimizer_t), (0.0, Some(0.5)));
    }

    #[test]
    fn bsc_with_zero_beta_equals_no_side_info() {
        let p = SbmParams::<f64>::new(0.3, 7.0, 2.0, 1.5).unwrap();
        let a = sbm_threshold(&p, Channel::None, 0.0).unwrap().value;
        let b = sbm_threshold(&p, Channel::Bsc, 0.0).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_ros_regime(16.0, 0.0).unwrap(), RosRegime::NoSideInfoNeeded);
        assert_eq!(classify_ros_regime(4.0, 0.6).unwrap(), RosRegime::OnlyBecHelps);
        assert_eq!(classify_ros_regime(0.1, 1.2).unwrap(), RosRegime::TrivialFromSideInfo);
        assert_eq!(classify_ros_regime(6.0, 0.5).unwrap(), RosRegime::BothChannelsHelp);
        assert_eq!(classify_ros_regime(1.0, 0.2).unwrap(), RosRegime::ImpossibleDespiteSideInfo);
    }

    #[test]
    fn critical_values_are_flagged() {
        let r = ros_threshold(&RosParams::<f64>::symmetric_with_psi(8.0).unwrap(), Channel::None, 0.0).unwrap();
        assert!(r.critical);
    }

    #[test]
    fn report_serializes_as_one_json_object() {
        let r = ros_threshold(&RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap(), Channel::Bec, 0.6).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(!s.contains('\n'));
        assert!(s.contains("\"recoverable\":true"));
    }
}
