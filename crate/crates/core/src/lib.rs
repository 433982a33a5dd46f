//! Exact community recovery in two-community block models.
//!
//! The crate covers the Gaussian rank-one spike model and the stochastic
//! block model, optionally with labels observed through an erasure or a
//! binary symmetric channel. It provides samplers, genie scores, threshold
//! calculators, spectral and degree-profiling recovery and a Monte Carlo
//! harness with a CLI.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod eigen;
pub mod error;
pub mod genie;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod optimize;
pub mod recovery;
pub mod rng;
pub mod scalar;
pub mod thresholds;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type RosParams = model::RosParams<f64>;
pub type SbmParams = model::SbmParams<f64>;
pub type ModelParams = model::ModelParams<f64>;
pub type Observation = model::Observation<f64>;
pub type SymMatrix = linalg::SymMatrix<f64>;
pub type ScoreVector = genie::ScoreVector<f64>;
pub type MarginReport = genie::MarginReport<f64>;
pub type Eigenpair = eigen::Eigenpair<f64>;
pub type RecoveryResult = recovery::RecoveryResult<f64>;
pub type SpectralCoefficients = recovery::SpectralCoefficients<f64>;

pub type RosParamsF32 = model::RosParams<f32>;
pub type SbmParamsF32 = model::SbmParams<f32>;
pub type ObservationF32 = model::Observation<f32>;
pub type ScoreVectorF32 = genie::ScoreVector<f32>;

pub use model::{Channel, CommunityAssignment, ObservationKind, SideInfoStrength, SideInformation};
pub use thresholds::{RosRegime, ThresholdReport};
