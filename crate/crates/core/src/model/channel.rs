use rand::Rng;
use serde::{Deserialize, Serialize};

use super::CommunityAssignment;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    None,
    Bec,
    Bsc,
}

impl Channel {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Bec => "bec",
            Self::Bsc => "bsc",
        }
    }
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "bec" => Ok(Self::Bec),
            "bsc" => Ok(Self::Bsc),
            other => Err(Error::Parse(format!("unknown channel {other:?}"))),
        }
    }
}

/// Noisy label observations `y` together with the channel that produced them.
///
/// `param` is the erasure probability for BEC and the flip probability for
/// BSC. For `Channel::None` the label vector is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SideInformation {
    channel: Channel,
    y: Vec<i8>,
    param: f64,
}

fn check_bec(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::range("epsilon", epsilon, "(0, 1]"));
    }
    Ok(())
}

fn check_bsc(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::range("alpha", alpha, "(0, 1/2]"));
    }
    Ok(())
}

impl SideInformation {
    pub fn none() -> Self {
        Self {
            channel: Channel::None,
            y: Vec::new(),
            param: 0.0,
        }
    }

    /// BEC output; entries must lie in `{-1, 0, +1}`.
    pub fn bec(y: Vec<i8>, epsilon: f64) -> Result<Self> {
        check_bec(epsilon)?;
        if let Some(&bad) = y.iter().find(|&&v| !(-1..=1).contains(&v)) {
            return Err(Error::InvalidLabel(bad as i64));
        }
        Ok(Self {
            channel: Channel::Bec,
            y,
            param: epsilon,
        })
    }

    /// BSC output; entries must be `±1`.
    pub fn bsc(y: Vec<i8>, alpha: f64) -> Result<Self> {
        check_bsc(alpha)?;
        if let Some(&bad) = y.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::InvalidLabel(bad as i64));
        }
        Ok(Self {
            channel: Channel::Bsc,
            y,
            param: alpha,
        })
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn y(&self) -> &[i8] {
        &self.y
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    /// `log((1 - alpha) / alpha)` for BSC, `0` otherwise.
    pub fn trust_factor(&self) -> f64 {
        match self.channel {
            Channel::Bsc => ((1.0 - self.param) / self.param).ln(),
            _ => 0.0,
        }
    }

    /// Checks that a non-empty channel covers exactly `n` indices.
    pub fn check_n(&self, n: usize) -> Result<()> {
        if self.channel != Channel::None {
            super::check_len(n, self.y.len())?;
        }
        Ok(())
    }
}

/// Side-information strength `beta` at problem size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideInfoStrength {
    pub beta: f64,
    pub n: usize,
}

/// `(epsilon_n, alpha_n) = (n^-beta, 1 / (n^beta + 1))`.
pub fn side_info_params(strength: SideInfoStrength) -> Result<(f64, f64)> {
    let SideInfoStrength { beta, n } = strength;
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::range("beta", beta, "[0, inf)"));
    }
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    let nb = (n as f64).powf(beta);
    // n^-beta underflows to 0 for huge beta; clamp into the open range.
    let eps = (1.0 / nb).max(f64::MIN_POSITIVE);
    let alpha = (1.0 / (nb + 1.0)).max(f64::MIN_POSITIVE);
    Ok((eps, alpha))
}

/// Erases each label independently with probability `epsilon`.
pub fn apply_bec<R: Rng + ?Sized>(sigma: &CommunityAssignment, epsilon: f64, rng: &mut R) -> Result<SideInformation> {
    check_bec(epsilon)?;
    let y = sigma
        .labels()
        .iter()
        .map(|&l| if rng.random::<f64>() < epsilon { 0 } else { l })
        .collect();
    SideInformation::bec(y, epsilon)
}

/// Flips each label independently with probability `alpha`.
pub fn apply_bsc<R: Rng + ?Sized>(sigma: &CommunityAssignment, alpha: f64, rng: &mut R) -> Result<SideInformation> {
    check_bsc(alpha)?;
    let y = sigma
        .labels()
        .iter()
        .map(|&l| if rng.random::<f64>() < alpha { -l } else { l })
        .collect();
    SideInformation::bsc(y, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Purpose};

    fn sigma(n: usize) -> CommunityAssignment {
        super::super::sample_labels(n, 0.5, &mut stream(11, Purpose::Labels)).unwrap()
    }

    #[test]
    fn full_erasure_reveals_nothing() {
        let s = apply_bec(&sigma(50), 1.0, &mut stream(1, Purpose::SideInfo)).unwrap();
        assert!(s.y().iter().all(|&v| v == 0));
        let (eps, alpha) = side_info_params(SideInfoStrength { beta: 0.0, n: 77 }).unwrap();
        assert_eq!((eps, alpha), (1.0, 0.5));
    }

    #[test]
    fn params_at_beta_one() {
        let (eps, alpha) = side_info_params(SideInfoStrength { beta: 1.0, n: 100 }).unwrap();
        assert!((eps - 0.01).abs() < 1e-15);
        assert!((alpha - 1.0 / 101.0).abs() < 1e-15);
        assert!(side_info_params(SideInfoStrength { beta: -0.1, n: 100 }).is_err());
    }

    #[test]
    fn channel_parameter_ranges() {
        let s = sigma(10);
        let mut r = stream(1, Purpose::SideInfo);
        assert!(apply_bec(&s, 0.0, &mut r).is_err());
        assert!(apply_bec(&s, 1.1, &mut r).is_err());
        assert!(apply_bsc(&s, 0.0, &mut r).is_err());
        assert!(apply_bsc(&s, 0.6, &mut r).is_err());
        assert!(apply_bsc(&s, 0.5, &mut r).is_ok());
        assert!(SideInformation::bsc(vec![1, 0], 0.1).is_err());
    }

    #[test]
    fn tiny_flip_rate_is_identity() {
        let s = sigma(100);
        let out = apply_bsc(&s, 1e-9, &mut stream(4, Purpose::SideInfo)).unwrap();
        assert_eq!(out.y(), s.labels());
    }

    #[test]
    fn trust_factor_matches_power() {
        let (_, alpha) = side_info_params(SideInfoStrength { beta: 1.0, n: 10 }).unwrap();
        let s = SideInformation::bsc(vec![1], alpha).unwrap();
        assert!((s.trust_factor() - 10f64.ln()).abs() < 1e-12);
        assert_eq!(SideInformation::bsc(vec![1], 0.5).unwrap().trust_factor(), 0.0);
    }
}
