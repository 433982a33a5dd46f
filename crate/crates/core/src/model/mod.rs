//! Block-model domain types, samplers and side-information channels.

mod channel;
pub mod io;
mod sample;

pub use channel::{apply_bec, apply_bsc, side_info_params, Channel, SideInfoStrength, SideInformation};
pub use sample::{sample_labels, sample_ros, sample_sbm};
#[cfg(test)]
pub(crate) use sample::sample_ros_with_noise;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::{log_scale, Scalar};

fn check_rho<T: Scalar>(rho: T) -> Result<()> {
    if !(rho > T::zero() && rho < T::one()) {
        return Err(Error::range("rho", rho.as_f64(), "(0, 1)"));
    }
    Ok(())
}

/// Rank-one spike parameters: prior `rho` and the spike values `a` (on
/// `C+`) and `b` (on `C-`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RosParams<T = f64> {
    pub rho: T,
    pub a: T,
    pub b: T,
}

impl<T: Scalar> RosParams<T> {
    pub fn new(rho: T, a: T, b: T) -> Result<Self> {
        check_rho(rho)?;
        if !(a.is_finite() && b.is_finite()) || a.abs().max(b.abs()) <= T::zero() {
            return Err(Error::InvalidParams(format!(
                "ROS needs finite a, b with max(|a|,|b|) > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { rho, a, b })
    }

    /// `Z2`-synchronization style parameters (`rho = 1/2`, `b = -a`) with a
    /// prescribed signal functional `psi`.
    pub fn symmetric_with_psi(psi: T) -> Result<Self> {
        let a = (psi / T::of(4.0)).powf(T::of(0.25));
        Self::new(T::of(0.5), a, -a)
    }

    /// Spike value for a label.
    #[inline]
    pub fn spike(&self, label: i8) -> T {
        if label > 0 {
            self.a
        } else {
            self.b
        }
    }

    /// `rho a^2 + (1 - rho) b^2`.
    pub fn second_moment(&self) -> T {
        self.rho * self.a * self.a + (T::one() - self.rho) * self.b * self.b
    }

    /// `P+ = P-` and `rho = 1/2`: only the partition is identifiable.
    pub fn is_symmetric(&self) -> bool {
        self.rho == T::of(0.5) && self.a * self.a == self.b * self.b
    }
}

/// Two-community SBM with edge probabilities `a1 log n / n` inside `C+`,
/// `a2 log n / n` inside `C-` and `b log n / n` across.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbmParams<T = f64> {
    pub rho: T,
    pub a1: T,
    pub a2: T,
    pub b: T,
}

impl<T: Scalar> SbmParams<T> {
    pub fn new(rho: T, a1: T, a2: T, b: T) -> Result<Self> {
        check_rho(rho)?;
        for (name, v) in [("a1", a1), ("a2", a2), ("b", b)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::range(name, v.as_f64(), "(0, inf)"));
            }
        }
        Ok(Self { rho, a1, a2, b })
    }

    /// `(p1, p2, q)` at size `n`, rejecting any probability above 1.
    pub fn edge_probs(&self, n: usize) -> Result<(T, T, T)> {
        let (ln, _) = log_scale::<T>(n);
        let scale = ln / T::of(n as f64);
        let probs = (self.a1 * scale, self.a2 * scale, self.b * scale);
        for (name, p) in [("p1", probs.0), ("p2", probs.1), ("q", probs.2)] {
            if p > T::one() {
                return Err(Error::EdgeProbability { name, value: p.as_f64(), n });
            }
        }
        Ok(probs)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho == T::of(0.5) && self.a1 == self.a2
    }
}

/// Either model; used where an operation dispatches on the observation law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams<T = f64> {
    Ros(RosParams<T>),
    Sbm(SbmParams<T>),
}

impl<T: Scalar> ModelParams<T> {
    pub fn rho(&self) -> T {
        match self {
            Self::Ros(p) => p.rho,
            Self::Sbm(p) => p.rho,
        }
    }

    pub fn kind(&self) -> ObservationKind {
        match self {
            Self::Ros(_) => ObservationKind::Ros,
            Self::Sbm(_) => ObservationKind::Sbm,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Self::Ros(p) => p.is_symmetric(),
            Self::Sbm(p) => p.is_symmetric(),
        }
    }
}

/// Planted labels `sigma* in {+1, -1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommunityAssignment {
    labels: Vec<i8>,
}

impl CommunityAssignment {
    pub fn new(labels: Vec<i8>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidSize { n: 0, min: 1 });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l != 1 && l != -1) {
            return Err(Error::InvalidLabel(bad as i64));
        }
        Ok(Self { labels })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> i8 {
        self.labels[i]
    }

    /// `|C+|`.
    pub fn count_plus(&self) -> usize {
        self.labels.iter().filter(|&&l| l > 0).count()
    }

    pub fn count_minus(&self) -> usize {
        self.n() - self.count_plus()
    }

    /// Indices of `C+`.
    pub fn plus(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i] > 0).collect()
    }

    /// Indices of `C-`.
    pub fn minus(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i] < 0).collect()
    }

    pub fn flipped(&self) -> Self {
        Self {
            labels: self.labels.iter().map(|l| -l).collect(),
        }
    }

    /// Community-size concentration event
    /// `||C+| - rho n| <= rho n^(2/3)` and `||C-| - (1-rho) n| <= rho n^(2/3)`.
    pub fn size_event_holds(&self, rho: f64) -> bool {
        let n = self.n() as f64;
        let slack = rho * n.powf(2.0 / 3.0);
        (self.count_plus() as f64 - rho * n).abs() <= slack
            && (self.count_minus() as f64 - (1.0 - rho) * n).abs() <= slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObservationKind {
    Ros,
    Sbm,
}

impl ObservationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ros => "ros",
            Self::Sbm => "sbm",
        }
    }
}

impl std::str::FromStr for ObservationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ros" => Ok(Self::Ros),
            "sbm" => Ok(Self::Sbm),
            other => Err(Error::Parse(format!("unknown model kind {other:?}"))),
        }
    }
}

/// Symmetric zero-diagonal observation matrix `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation<T = f64> {
    kind: ObservationKind,
    matrix: SymMatrix<T>,
}

impl<T: Scalar> Observation<T> {
    /// Validates exact symmetry and an exactly zero diagonal.
    pub fn new(kind: ObservationKind, matrix: SymMatrix<T>) -> Result<Self> {
        let n = matrix.n();
        if n < 2 {
            return Err(Error::InvalidSize { n, min: 2 });
        }
        for i in 0..n {
            if matrix.get(i, i) != T::zero() {
                return Err(Error::NotObservation(format!("diagonal entry {i} is nonzero")));
            }
            for j in (i + 1)..n {
                let (x, y) = (matrix.get(i, j), matrix.get(j, i));
                if x != y {
                    return Err(Error::NotObservation(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if !x.is_finite() {
                    return Err(Error::NotObservation(format!("entry ({i},{j}) is not finite")));
                }
                if kind == ObservationKind::Sbm && x != T::zero() && x != T::one() {
                    return Err(Error::NotObservation(format!("SBM entry ({i},{j}) = {x} is not 0/1")));
                }
            }
        }
        Ok(Self { kind, matrix })
    }

    pub(crate) fn from_parts_unchecked(kind: ObservationKind, matrix: SymMatrix<T>) -> Self {
        Self { kind, matrix }
    }

    pub fn kind(&self) -> ObservationKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &SymMatrix<T> {
        &self.matrix
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.matrix.get(i, j)
    }

    pub fn row(&self, i: usize) -> &[T] {
        self.matrix.row(i)
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}
