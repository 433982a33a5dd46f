use rand::Rng;
use rand_distr::StandardNormal;

use super::{check_len, check_rho, CommunityAssignment, Observation, ObservationKind, RosParams, SbmParams};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::{log_scale, Scalar};

/// Draws `n` i.i.d. labels with `P(+1) = rho`.
pub fn sample_labels<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Result<CommunityAssignment> {
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    check_rho(rho)?;
    let labels = (0..n).map(|_| if rng.random::<f64>() < rho { 1 } else { -1 }).collect();
    CommunityAssignment::new(labels)
}

/// `A_ij = v_i v_j sqrt(log n / n) + W_ij` for `i < j`, mirrored, zero
/// diagonal, with `W_ij ~ N(0, 1)`.
pub fn sample_ros<T: Scalar, R: Rng + ?Sized>(
    params: &RosParams<T>,
    sigma: &CommunityAssignment,
    rng: &mut R,
) -> Result<Observation<T>> {
    sample_ros_with_noise(params, sigma, T::one(), rng)
}

/// ROS sampler with a configurable noise standard deviation; `0` is the
/// noiseless golden-test mode.
pub(crate) fn sample_ros_with_noise<T: Scalar, R: Rng + ?Sized>(
    params: &RosParams<T>,
    sigma: &CommunityAssignment,
    noise_sd: T,
    rng: &mut R,
) -> Result<Observation<T>> {
    let n = sigma.n();
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    let (_, f) = log_scale::<T>(n);
    let v: Vec<T> = sigma.labels().iter().map(|&l| params.spike(l)).collect();
    let matrix = SymMatrix::from_upper(
        n,
        |_| T::zero(),
        |i, j| {
            let w: f64 = rng.sample(StandardNormal);
            v[i] * v[j] * f + noise_sd * T::of(w)
        },
    );
    Ok(Observation::from_parts_unchecked(ObservationKind::Ros, matrix))
}

/// Bernoulli block model draw: `Bern(p1)` inside `C+`, `Bern(p2)` inside `C-`,
/// `Bern(q)` across.
pub fn sample_sbm<T: Scalar, R: Rng + ?Sized>(
    params: &SbmParams<T>,
    sigma: &CommunityAssignment,
    rng: &mut R,
) -> Result<Observation<T>> {
    let n = sigma.n();
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    let (p1, p2, q) = params.edge_probs(n)?;
    let (p1, p2, q) = (p1.as_f64(), p2.as_f64(), q.as_f64());
    let labels = sigma.labels();
    check_len(n, labels.len())?;
    let matrix = SymMatrix::from_upper(
        n,
        |_| T::zero(),
        |i, j| {
            let p = match (labels[i] > 0, labels[j] > 0) {
                (true, true) => p1,
                (false, false) => p2,
                _ => q,
            };
            if rng.random::<f64>() < p {
                T::one()
            } else {
                T::zero()
            }
        },
    );
    Ok(Observation::from_parts_unchecked(ObservationKind::Sbm, matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Purpose};

    #[test]
    fn labels_reject_bad_inputs() {
        let mut r = stream(1, Purpose::Labels);
        assert!(sample_labels(1, 0.5, &mut r).is_err());
        assert!(sample_labels(10, 0.0, &mut r).is_err());
        assert!(sample_labels(10, 1.0, &mut r).is_err());
    }

    #[test]
    fn near_one_prior_gives_all_plus() {
        let s = sample_labels(4, 0.999999, &mut stream(3, Purpose::Labels)).unwrap();
        assert_eq!(s.labels(), &[1, 1, 1, 1]);
    }

    #[test]
    fn labels_are_deterministic() {
        let a = sample_labels(50, 0.3, &mut stream(9, Purpose::Labels)).unwrap();
        let b = sample_labels(50, 0.3, &mut stream(9, Purpose::Labels)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn noiseless_ros_is_the_rank_one_spike() {
        let sigma = CommunityAssignment::new(vec![1, 1, -1, -1]).unwrap();
        let params = RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap();
        let obs = sample_ros_with_noise(&params, &sigma, 0.0, &mut stream(0, Purpose::Matrix)).unwrap();
        let mag = 4f64.ln().sqrt() / 2.0;
        for i in 0..4 {
            assert_eq!(obs.get(i, i), 0.0);
            for j in 0..4 {
                if i != j {
                    let expected = (sigma.label(i) * sigma.label(j)) as f64 * mag;
                    assert!((obs.get(i, j) - expected).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn samplers_satisfy_observation_invariants() {
        let sigma = sample_labels(40, 0.4, &mut stream(5, Purpose::Labels)).unwrap();
        let ros = sample_ros(&RosParams::<f64>::new(0.4, 1.5, 0.3).unwrap(), &sigma, &mut stream(5, Purpose::Matrix)).unwrap();
        assert!(Observation::new(ObservationKind::Ros, ros.matrix().clone()).is_ok());
        let sbm = sample_sbm(&SbmParams::<f64>::new(0.4, 3.0, 2.0, 1.0).unwrap(), &sigma, &mut stream(5, Purpose::Matrix)).unwrap();
        assert!(Observation::new(ObservationKind::Sbm, sbm.matrix().clone()).is_ok());
    }

    #[test]
    fn sbm_rejects_probabilities_above_one() {
        let sigma = sample_labels(5, 0.5, &mut stream(1, Purpose::Labels)).unwrap();
        let p = SbmParams::<f64>::new(0.5, 10.0, 1.0, 1.0).unwrap();
        assert!(sample_sbm(&p, &sigma, &mut stream(1, Purpose::Matrix)).is_err());
    }

    #[test]
    fn f32_sampler_matches_f64_draws() {
        let sigma = sample_labels(10, 0.5, &mut stream(2, Purpose::Labels)).unwrap();
        let p64 = RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap();
        let p32 = RosParams::<f32>::new(0.5, 1.0, -1.0).unwrap();
        let a = sample_ros(&p64, &sigma, &mut stream(2, Purpose::Matrix)).unwrap();
        let b = sample_ros(&p32, &sigma, &mut stream(2, Purpose::Matrix)).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                assert!((a.get(i, j) - b.get(i, j) as f64).abs() < 1e-5);
            }
        }
    }
}
