//! Monte Carlo experiments: repeated trials, phase-diagram sweeps, CSV/JSON
//! output and the command-line front end.

pub mod cli;
pub mod stats;

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genie::{genie_estimate, genie_scores, margin, score_gap_inf, ScoreVector};
use crate::model::{
    apply_bec, apply_bsc, sample_labels, sample_ros, sample_sbm, side_info_params, Channel, CommunityAssignment, ModelParams,
    Observation, ObservationKind, RosParams, SbmParams, SideInfoStrength, SideInformation,
};
use crate::recovery::{degree_profiling, matches_truth, spectral, RecoveryResult};
use crate::rng::{stream, trial_seed, Purpose};
use crate::thresholds::{classify_ros_regime, psi, threshold};

pub use stats::{median, wilson_interval, Z95};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Genie,
    Spectral,
    Dp,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Genie => "genie",
            Self::Spectral => "spectral",
            Self::Dp => "dp",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "genie" => Ok(Self::Genie),
            "spectral" => Ok(Self::Spectral),
            "dp" => Ok(Self::Dp),
            other => Err(Error::Parse(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Success predicate: label-exact equality, or equality up to a global flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuccessCriterion {
    Exact,
    Partition,
}

/// One Monte Carlo experiment. `success_criterion`, when absent, is
/// `partition` for symmetric parameters without side information and `exact`
/// otherwise; `partition` is rejected anywhere else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub params: ModelParams<f64>,
    #[serde(default = "default_channel")]
    pub channel: Channel,
    #[serde(default)]
    pub beta: f64,
    pub n_list: Vec<usize>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub success_criterion: Option<SuccessCriterion>,
}

fn default_channel() -> Channel {
    Channel::None
}

impl ExperimentConfig {
    fn symmetric_exemption(&self) -> bool {
        self.channel == Channel::None && self.params.is_symmetric()
    }

    /// The success predicate in force after validation.
    pub fn criterion(&self) -> Result<SuccessCriterion> {
        let exempt = self.symmetric_exemption();
        match self.success_criterion {
            None if exempt => Ok(SuccessCriterion::Partition),
            None => Ok(SuccessCriterion::Exact),
            Some(SuccessCriterion::Partition) if !exempt => Err(Error::InvalidParams(
                "partition success needs symmetric parameters and no side information".into(),
            )),
            Some(c) => Ok(c),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.criterion()?;
        if self.channel != Channel::None && !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::range("beta", self.beta, "[0, inf)"));
        }
        match self.params {
            ModelParams::Ros(p) => {
                RosParams::<f64>::new(p.rho, p.a, p.b)?;
            }
            ModelParams::Sbm(p) => {
                SbmParams::<f64>::new(p.rho, p.a1, p.a2, p.b)?;
            }
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidSize { n, min: 2 });
        }
        Ok(())
    }
}

/// One algorithm's outcome on one trial.
///
/// `margin` is `min_i sigma_i z_i` for the algorithm's scores (maximized
/// over the global flip under the partition criterion). `score_gap_inf` is
/// the genie gap of the scores, taking the best sign candidate for the
/// spectral algorithms. Failed trials carry `success = false` and `NaN`
/// statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub n: usize,
    pub algorithm: Algorithm,
    pub success: bool,
    pub margin: f64,
    pub score_gap_inf: f64,
    pub runtime_ms: f64,
}

pub const CSV_HEADER: [&str; 7] = ["seed", "n", "algorithm", "success", "margin", "score_gap_inf", "runtime_ms"];

/// Everything drawn for one trial.
#[derive(Debug, Clone)]
pub struct TrialInstance {
    pub seed: u64,
    pub sigma: CommunityAssignment,
    pub obs: Observation<f64>,
    pub side: SideInformation,
}

/// Draws labels, observation and side information from the per-purpose
/// streams of `seed`.
pub fn draw_instance(params: &ModelParams<f64>, channel: Channel, beta: f64, n: usize, seed: u64) -> Result<TrialInstance> {
    let sigma = sample_labels(n, params.rho(), &mut stream(seed, Purpose::Labels))?;
    let mut rng = stream(seed, Purpose::Matrix);
    let obs = match params {
        ModelParams::Ros(p) => sample_ros(p, &sigma, &mut rng)?,
        ModelParams::Sbm(p) => sample_sbm(p, &sigma, &mut rng)?,
    };
    let side = draw_side_info(&sigma, channel, beta, seed)?;
    Ok(TrialInstance { seed, sigma, obs, side })
}

pub fn draw_side_info(sigma: &CommunityAssignment, channel: Channel, beta: f64, seed: u64) -> Result<SideInformation> {
    let (eps, alpha) = side_info_params(SideInfoStrength { beta, n: sigma.n() })?;
    let mut rng = stream(seed, Purpose::SideInfo);
    match channel {
        Channel::None => Ok(SideInformation::none()),
        Channel::Bec => apply_bec(sigma, eps, &mut rng),
        Channel::Bsc => apply_bsc(sigma, alpha, &mut rng),
    }
}

/// Runs one algorithm on a drawn instance given its genie scores.
pub fn run_algorithm(
    algorithm: Algorithm,
    inst: &TrialInstance,
    params: &ModelParams<f64>,
    genie: &ScoreVector<f64>,
    criterion: SuccessCriterion,
) -> Result<(bool, f64, f64)> {
    let partition = criterion == SuccessCriterion::Partition;
    let (estimate, gap, scores) = match algorithm {
        Algorithm::Genie => (genie_estimate(genie), 0.0, genie.clone()),
        Algorithm::Spectral | Algorithm::Dp => {
            let r: RecoveryResult<f64> = if algorithm == Algorithm::Spectral {
                spectral(&inst.obs, params, &inst.side)?
            } else {
                degree_profiling(&inst.obs, params, &inst.side)?
            };
            let mut gap = f64::INFINITY;
            for c in &r.candidates {
                gap = gap.min(score_gap_inf(&c.scores, genie)?);
            }
            let scores = r.scores().clone();
            (r.estimate, gap, scores)
        }
    };
    let success = matches_truth(&estimate, inst.sigma.labels(), partition);
    let mut m = margin(&scores, &inst.sigma)?.min_signed_score;
    if partition {
        m = m.max(margin(&scores, &inst.sigma.flipped())?.min_signed_score);
    }
    Ok((success, m, gap))
}

fn trial_records(config: &ExperimentConfig, criterion: SuccessCriterion, n: usize, trial: usize) -> Vec<TrialRecord> {
    let seed = trial_seed(config.seed, n, trial);
    let failed = |algorithm| TrialRecord {
        seed,
        n,
        algorithm,
        success: false,
        margin: f64::NAN,
        score_gap_inf: f64::NAN,
        runtime_ms: 0.0,
    };
    let prepared = draw_instance(&config.params, config.channel, config.beta, n, seed)
        .and_then(|inst| genie_scores(&inst.obs, &inst.sigma, &config.params, &inst.side).map(|g| (inst, g)));
    let (inst, genie) = match prepared {
        Ok(x) => x,
        Err(_) => return config.algorithms.iter().map(|&a| failed(a)).collect(),
    };
    config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let start = Instant::now();
            let out = run_algorithm(algorithm, &inst, &config.params, &genie, criterion);
            let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            match out {
                Ok((success, margin, score_gap_inf)) => TrialRecord {
                    seed,
                    n,
                    algorithm,
                    success,
                    margin,
                    score_gap_inf,
                    runtime_ms,
                },
                Err(_) => TrialRecord { runtime_ms, ..failed(algorithm) },
            }
        })
        .collect()
}

/// Runs `trials` trials for each size in `n_list`. Records are ordered by
/// size, then trial, then algorithm, whatever the scheduling order.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let criterion = config.criterion()?;
    let tasks: Vec<(usize, usize)> = config
        .n_list
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let nested: Vec<Vec<TrialRecord>> = tasks
        .par_iter()
        .map(|&(n, t)| trial_records(config, criterion, n, t))
        .collect();
    Ok(nested.into_iter().flatten().collect())
}

/// Success count and Wilson interval per algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessSummary {
    pub algorithm: Algorithm,
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

pub fn summarize(records: &[TrialRecord]) -> Vec<SuccessSummary> {
    let mut keys: Vec<(usize, Algorithm)> = Vec::new();
    for r in records {
        if !keys.contains(&(r.n, r.algorithm)) {
            keys.push((r.n, r.algorithm));
        }
    }
    keys.into_iter()
        .map(|(n, algorithm)| {
            let rs: Vec<&TrialRecord> = records.iter().filter(|r| r.n == n && r.algorithm == algorithm).collect();
            let successes = rs.iter().filter(|r| r.success).count();
            let (wilson_lo, wilson_hi) = wilson_interval(successes, rs.len(), Z95);
            SuccessSummary {
                algorithm,
                n,
                trials: rs.len(),
                successes,
                rate: if rs.is_empty() { f64::NAN } else { successes as f64 / rs.len() as f64 },
                wilson_lo,
                wilson_hi,
            }
        })
        .collect()
}

/// Writes trial records as CSV with the fixed [`CSV_HEADER`].
pub fn write_records_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record([
            r.seed.to_string(),
            r.n.to_string(),
            r.algorithm.as_str().to_string(),
            r.success.to_string(),
            fmt_f64(r.margin),
            fmt_f64(r.score_gap_inf),
            fmt_f64(r.runtime_ms),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Writes one JSON object per line. Non-finite values become strings so
/// the output stays valid JSON.
pub fn write_records_json<W: Write>(records: &[TrialRecord], mut w: W) -> Result<()> {
    for r in records {
        let v = serde_json::json!({
            "seed": r.seed,
            "n": r.n,
            "algorithm": r.algorithm,
            "success": r.success,
            "margin": json_f64(r.margin),
            "score_gap_inf": json_f64(r.score_gap_inf),
            "runtime_ms": json_f64(r.runtime_ms),
        });
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        x.to_string()
    }
}

pub(crate) fn json_f64(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::json!(x.to_string())
    }
}

/// Grid of signal strengths and side-information exponents.
///
/// For the Gaussian model the signal is `Psi` with `rho = 1/2` and `b = -a`.
/// For the SBM it is the target `sup_t D_t` of a symmetric model with
/// `rho = 1/2`, fixed `b` and `a1 = a2 = (sqrt(b) + sqrt(2 s))^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub model: ObservationKind,
    #[serde(default = "default_channel")]
    pub channel: Channel,
    pub signals: Vec<f64>,
    pub betas: Vec<f64>,
    /// Cross-community rate for the SBM grid.
    #[serde(default = "default_sbm_b")]
    pub sbm_b: f64,
    pub n: usize,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
}

fn default_sbm_b() -> f64 {
    1.0
}

impl SweepConfig {
    /// Model parameters of a grid cell.
    pub fn cell_params(&self, signal: f64) -> Result<ModelParams<f64>> {
        if !(signal >= 0.0 && signal.is_finite()) {
            return Err(Error::range("signal", signal, "[0, inf)"));
        }
        match self.model {
            ObservationKind::Ros => {
                if signal == 0.0 {
                    return Ok(ModelParams::Ros(RosParams::<f64>::new(0.5, 1.0, 1.0)?));
                }
                Ok(ModelParams::Ros(RosParams::symmetric_with_psi(signal)?))
            }
            ObservationKind::Sbm => {
                let a = (self.sbm_b.sqrt() + (2.0 * signal).sqrt()).powi(2);
                Ok(ModelParams::Sbm(SbmParams::<f64>::new(0.5, a, a, self.sbm_b)?))
            }
        }
    }

    /// The trial configuration of a cell. Every cell reuses the master seed,
    /// so cells share their random draws.
    pub fn cell_config(&self, signal: f64, beta: f64) -> Result<ExperimentConfig> {
        Ok(ExperimentConfig {
            params: self.cell_params(signal)?,
            channel: self.channel,
            beta,
            n_list: vec![self.n],
            trials: self.trials,
            seed: self.seed,
            algorithms: self.algorithms.clone(),
            success_criterion: None,
        })
    }
}

/// One output row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub signal: f64,
    pub beta: f64,
    pub threshold_value: f64,
    pub regime: String,
    /// `analytic` when the cell ran no algorithm.
    pub algorithm: String,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

pub const SWEEP_HEADER: [&str; 10] = [
    "signal",
    "beta",
    "threshold_value",
    "regime",
    "algorithm",
    "trials",
    "successes",
    "success_rate",
    "wilson_lo",
    "wilson_hi",
];

fn regime_tag(params: &ModelParams<f64>, channel: Channel, beta: f64) -> Result<(f64, String)> {
    let report = threshold(params, channel, beta)?;
    let tag = match params {
        ModelParams::Ros(p) => classify_ros_regime(psi(p), beta)?.as_str().to_string(),
        ModelParams::Sbm(_) => {
            if report.critical {
                "critical".into()
            } else if report.recoverable {
                "recoverable".into()
            } else {
                "not-recoverable".into()
            }
        }
    };
    Ok((report.value, tag))
}

/// Evaluates every `(signal, beta)` cell: the analytic threshold value and
/// region, plus empirical success rates when `trials > 0`.
pub fn sweep_phase_diagram(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &signal in &config.signals {
        for &beta in &config.betas {
            let cell = config.cell_config(signal, beta)?;
            let (value, regime) = regime_tag(&cell.params, config.channel, beta)?;
            if config.trials == 0 || config.algorithms.is_empty() {
                rows.push(SweepRow {
                    signal,
                    beta,
                    threshold_value: value,
                    regime,
                    algorithm: "analytic".into(),
                    trials: 0,
                    successes: 0,
                    success_rate: f64::NAN,
                    wilson_lo: 0.0,
                    wilson_hi: 1.0,
                });
                continue;
            }
            let records = run_trials(&cell)?;
            for s in summarize(&records) {
                rows.push(SweepRow {
                    signal,
                    beta,
                    threshold_value: value,
                    regime: regime.clone(),
                    algorithm: s.algorithm.as_str().into(),
                    trials: s.trials,
                    successes: s.successes,
                    success_rate: s.rate,
                    wilson_lo: s.wilson_lo,
                    wilson_hi: s.wilson_hi,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SWEEP_HEADER)?;
    for r in rows {
        out.write_record([
            fmt_f64(r.signal),
            fmt_f64(r.beta),
            fmt_f64(r.threshold_value),
            r.regime.clone(),
            r.algorithm.clone(),
            r.trials.to_string(),
            r.successes.to_string(),
            fmt_f64(r.success_rate),
            fmt_f64(r.wilson_lo),
            fmt_f64(r.wilson_hi),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_sweep_json<W: Write>(rows: &[SweepRow], mut w: W) -> Result<()> {
    for r in rows {
        let v = serde_json::json!({
            "signal": json_f64(r.signal),
            "beta": json_f64(r.beta),
            "threshold_value": json_f64(r.threshold_value),
            "regime": r.regime,
            "algorithm": r.algorithm,
            "trials": r.trials,
            "successes": r.successes,
            "success_rate": json_f64(r.success_rate),
            "wilson_lo": json_f64(r.wilson_lo),
            "wilson_hi": json_f64(r.wilson_hi),
        });
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    Ok(())
}
