//! `blockrec` command line.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{
    draw_side_info, run_trials, sweep_phase_diagram, write_records_csv, write_records_json, write_sweep_csv, write_sweep_json, Algorithm,
    ExperimentConfig, SuccessCriterion, SweepConfig,
};
use crate::error::{Error, Result};
use crate::model::io::{format_labels, parse_labels, read_observation, write_observation};
use crate::model::{
    sample_labels, sample_ros, sample_sbm, side_info_params, Channel, CommunityAssignment, ModelParams, ObservationKind, RosParams,
    SbmParams, SideInfoStrength, SideInformation,
};
use crate::recovery::{degree_profiling, matches_truth, spectral};
use crate::rng::{stream, Purpose};
use crate::thresholds::threshold;

#[derive(Debug, Parser)]
#[command(name = "blockrec", version, about = "Exact recovery in two-community block models")]
struct Cli {
    /// Master seed (default 0; a trials config file may carry its own).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Ros,
    Sbm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelArg {
    None,
    Bec,
    Bsc,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::None => Channel::None,
            ChannelArg::Bec => Channel::Bec,
            ChannelArg::Bsc => Channel::Bsc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Genie,
    Spectral,
    Dp,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Genie => Algorithm::Genie,
            AlgorithmArg::Spectral => Algorithm::Spectral,
            AlgorithmArg::Dp => Algorithm::Dp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionArg {
    Exact,
    Partition,
}

/// Model parameters shared by several subcommands.
#[derive(Debug, Args)]
struct ModelOpts {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    /// Spike value on `C+` (ROS).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Spike value on `C-` (ROS) or cross-community rate (SBM).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Rate inside `C+` (SBM).
    #[arg(long)]
    a1: Option<f64>,
    /// Rate inside `C-` (SBM).
    #[arg(long)]
    a2: Option<f64>,
}

#[derive(Debug, Args)]
struct ChannelOpts {
    #[arg(long, value_enum, default_value_t = ChannelArg::None)]
    channel: ChannelArg,
    /// Side-information exponent: erasure `n^-beta`, flip `1/(n^beta + 1)`.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw labels, an observation and optional side information.
    Sample {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        channel: ChannelOpts,
        #[arg(long)]
        n: usize,
        /// Where to write the planted labels.
        #[arg(long)]
        labels_out: Option<PathBuf>,
        /// Where to write the side-information vector.
        #[arg(long)]
        side_out: Option<PathBuf>,
    },
    /// Recover labels from an observation file.
    Recover {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        channel: ChannelOpts,
        #[arg(long)]
        obs: PathBuf,
        /// Side-information vector file; required unless the channel is none.
        #[arg(long)]
        side: Option<PathBuf>,
        /// Planted labels, to report success.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Spectral)]
        algorithm: AlgorithmArg,
    },
    /// Evaluate the information-theoretic threshold.
    Threshold {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        channel: ChannelOpts,
    },
    /// Sweep a (signal, beta) grid.
    Sweep {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = ChannelArg::Bec)]
        channel: ChannelArg,
        /// Comma-separated signal values (Psi for ROS, target divergence for SBM).
        #[arg(long, value_delimiter = ',', required = true)]
        signals: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        sbm_b: f64,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "genie,spectral")]
        algorithms: Vec<AlgorithmArg>,
    },
    /// Run Monte Carlo trials.
    Trials {
        /// JSON experiment configuration; overrides the flags below.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        model: ModelOptsOpt,
        #[command(flatten)]
        channel: ChannelOpts,
        #[arg(long, value_delimiter = ',', default_value = "500")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "genie,spectral")]
        algorithms: Vec<AlgorithmArg>,
        #[arg(long, value_enum)]
        criterion: Option<CriterionArg>,
    },
}

/// [`ModelOpts`] with the model optional, for `trials --config`.
#[derive(Debug, Args)]
struct ModelOptsOpt {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long)]
    a1: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
}

/// A usage error (exit 2) or a runtime failure (exit 1).
enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(Error::Io(e))
    }
}

fn need(name: &str, v: Option<f64>) -> std::result::Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this model")))
}

fn build_params(model: ModelArg, rho: f64, a: Option<f64>, b: Option<f64>, a1: Option<f64>, a2: Option<f64>) -> std::result::Result<ModelParams<f64>, Failure> {
    let usage = |e: Error| Failure::Usage(e.to_string());
    Ok(match model {
        ModelArg::Ros => ModelParams::Ros(RosParams::<f64>::new(rho, need("a", a)?, need("b", b)?).map_err(usage)?),
        ModelArg::Sbm => ModelParams::Sbm(SbmParams::<f64>::new(rho, need("a1", a1)?, need("a2", a2)?, need("b", b)?).map_err(usage)?),
    })
}

impl ModelOpts {
    fn params(&self) -> std::result::Result<ModelParams<f64>, Failure> {
        build_params(self.model, self.rho, self.a, self.b, self.a1, self.a2)
    }
}

fn check_beta(beta: f64) -> std::result::Result<(), Failure> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Failure::Usage(format!("--beta must be a nonnegative number, got {beta}")));
    }
    Ok(())
}

fn open_out(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_text(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Parses `argv` (including the program name) and runs the command.
/// Returns 0 on success, 2 on usage errors and 1 on runtime failures.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let Cli { seed: seed_arg, out, format, command } = cli;
    let seed = seed_arg.unwrap_or(0);
    match command {
        Command::Sample {
            model,
            channel,
            n,
            labels_out,
            side_out,
        } => {
            let params = model.params()?;
            check_beta(channel.beta)?;
            if n < 2 {
                return Err(Failure::Usage(format!("--n must be at least 2, got {n}")));
            }
            let sigma = sample_labels(n, params.rho(), &mut stream(seed, Purpose::Labels))?;
            let mut rng = stream(seed, Purpose::Matrix);
            let obs = match params {
                ModelParams::Ros(p) => sample_ros(&p, &sigma, &mut rng)?,
                ModelParams::Sbm(p) => sample_sbm(&p, &sigma, &mut rng)?,
            };
            write_observation(&obs, open_out(&out)?)?;
            if let Some(p) = labels_out {
                std::fs::write(p, format_labels(sigma.labels()) + "\n")?;
            }
            let ch: Channel = channel.channel.into();
            if let Some(p) = side_out {
                if ch == Channel::None {
                    return Err(Failure::Usage("--side-out needs --channel bec or bsc".into()));
                }
                let side = draw_side_info(&sigma, ch, channel.beta, seed)?;
                std::fs::write(p, format_labels(side.y()) + "\n")?;
            }
            Ok(())
        }
        Command::Recover {
            model,
            channel,
            obs,
            side,
            truth,
            algorithm,
        } => {
            let params = model.params()?;
            check_beta(channel.beta)?;
            let kind = match model.model {
                ModelArg::Ros => ObservationKind::Ros,
                ModelArg::Sbm => ObservationKind::Sbm,
            };
            let observation = read_observation::<f64, _>(BufReader::new(File::open(&obs)?))?;
            if observation.kind() != kind {
                return Err(Failure::Usage(format!("observation file holds a {} draw", observation.kind().as_str())));
            }
            let n = observation.n();
            let ch: Channel = channel.channel.into();
            let side_info = match (ch, side) {
                (Channel::None, None) => SideInformation::none(),
                (Channel::None, Some(_)) => return Err(Failure::Usage("--side needs --channel bec or bsc".into())),
                (_, None) => return Err(Failure::Usage("--side is required with a side-information channel".into())),
                (c, Some(path)) => {
                    let y = parse_labels(&read_text(&path)?)?;
                    let (eps, alpha) = side_info_params(SideInfoStrength { beta: channel.beta, n })?;
                    if c == Channel::Bec {
                        SideInformation::bec(y, eps)?
                    } else {
                        SideInformation::bsc(y, alpha)?
                    }
                }
            };
            side_info.check_n(n)?;
            let result = match Algorithm::from(algorithm) {
                Algorithm::Spectral => spectral(&observation, &params, &side_info)?,
                Algorithm::Dp => degree_profiling(&observation, &params, &side_info)?,
                Algorithm::Genie => return Err(Failure::Usage("recover supports --algorithm spectral or dp".into())),
            };
            let success = match truth {
                Some(p) => {
                    let labels = CommunityAssignment::new(parse_labels(&read_text(&p)?)?)?;
                    let partition = ch == Channel::None && params.is_symmetric();
                    Some(matches_truth(&result.estimate, labels.labels(), partition))
                }
                None => None,
            };
            let mut w = open_out(&out)?;
            match format {
                Format::Csv => {
                    writeln!(w, "{}", format_labels(&result.estimate))?;
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "estimate": result.estimate,
                        "chosen_sign": result.chosen_sign,
                        "log_posterior": super::json_f64(result.candidates[result.chosen].log_posterior),
                        "success": success,
                    });
                    writeln!(w, "{v}")?;
                }
            }
            w.flush()?;
            if let (Some(s), Format::Csv) = (success, format) {
                eprintln!("success: {s}");
            }
            Ok(())
        }
        Command::Threshold { model, channel } => {
            let params = model.params()?;
            check_beta(channel.beta)?;
            let report = threshold(&params, channel.channel.into(), channel.beta)?;
            let mut w = open_out(&out)?;
            match format {
                Format::Json => writeln!(w, "{}", serde_json::to_string(&report).map_err(Error::Json)?)?,
                Format::Csv => {
                    writeln!(w, "model,channel,beta,value,recoverable,critical,optimizer_t,degenerate")?;
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{}",
                        report.model.as_str(),
                        report.channel,
                        super::fmt_f64(report.beta),
                        super::fmt_f64(report.value),
                        report.recoverable,
                        report.critical,
                        report.optimizer_t.map(super::fmt_f64).unwrap_or_default(),
                        report.degenerate
                    )?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Command::Sweep {
            model,
            channel,
            signals,
            betas,
            sbm_b,
            n,
            trials,
            algorithms,
        } => {
            for &b in &betas {
                check_beta(b)?;
            }
            let config = SweepConfig {
                model: match model {
                    ModelArg::Ros => ObservationKind::Ros,
                    ModelArg::Sbm => ObservationKind::Sbm,
                },
                channel: channel.into(),
                signals,
                betas,
                sbm_b,
                n,
                trials,
                seed,
                algorithms: algorithms.into_iter().map(Algorithm::from).collect(),
            };
            let rows = sweep_phase_diagram(&config)?;
            let w = open_out(&out)?;
            match format {
                Format::Csv => write_sweep_csv(&rows, w)?,
                Format::Json => write_sweep_json(&rows, w)?,
            }
            Ok(())
        }
        Command::Trials {
            config,
            model,
            channel,
            n,
            trials,
            algorithms,
            criterion,
        } => {
            let cfg = match config {
                Some(path) => {
                    let mut cfg: ExperimentConfig = serde_json::from_str(&read_text(&path)?).map_err(|e| Failure::Usage(format!("config: {e}")))?;
                    if let Some(s) = seed_arg {
                        cfg.seed = s;
                    }
                    cfg
                }
                None => {
                    let m = model;
                    let kind = m.model.ok_or_else(|| Failure::Usage("--model or --config is required".into()))?;
                    check_beta(channel.beta)?;
                    ExperimentConfig {
                        params: build_params(kind, m.rho, m.a, m.b, m.a1, m.a2)?,
                        channel: channel.channel.into(),
                        beta: channel.beta,
                        n_list: n,
                        trials,
                        seed,
                        algorithms: algorithms.into_iter().map(Algorithm::from).collect(),
                        success_criterion: criterion.map(|c| match c {
                            CriterionArg::Exact => SuccessCriterion::Exact,
                            CriterionArg::Partition => SuccessCriterion::Partition,
                        }),
                    }
                }
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let records = run_trials(&cfg)?;
            let w = open_out(&out)?;
            match format {
                Format::Csv => write_records_csv(&records, w)?,
                Format::Json => write_records_json(&records, w)?,
            }
            Ok(())
        }
    }
}
