//! Spectral and degree-profiling recovery, and the log posterior used to
//! pick among sign candidates.

use crate::eigen::{top_eigenpairs, Eigenpair};
use crate::error::{Error, Result};
use crate::genie::{genie_estimate, ros_gamma, with_side_info, ScoreVector};
use crate::linalg::{solve2, SymMatrix};
use crate::model::{check_len, Channel, ModelParams, Observation, ObservationKind, RosParams, SbmParams, SideInformation};
use crate::scalar::{log_scale, Scalar};

/// Relative tolerance on `|a1 a2 - b^2|` below which the SBM mean matrix is
/// treated as rank one.
pub const RANK_TOL: f64 = 1e-9;

/// Weights of the linear combination of eigenvectors plus the constant
/// shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCoefficients<T = f64> {
    pub c1: T,
    pub c2: Option<T>,
    pub gamma: T,
}

/// One sign choice and the scores and log posterior it produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T = f64> {
    pub signs: Vec<i8>,
    pub scores: ScoreVector<T>,
    pub log_posterior: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult<T = f64> {
    pub estimate: Vec<i8>,
    pub candidates: Vec<Candidate<T>>,
    /// Index into `candidates` of the winner.
    pub chosen: usize,
    pub chosen_sign: Vec<i8>,
}

impl<T: Scalar> RecoveryResult<T> {
    pub fn scores(&self) -> &ScoreVector<T> {
        &self.candidates[self.chosen].scores
    }
}

fn check_kind<T: Scalar>(obs: &Observation<T>, kind: ObservationKind) -> Result<()> {
    if obs.kind() != kind {
        return Err(Error::InvalidParams(format!(
            "expected a {} observation, got {}",
            kind.as_str(),
            obs.kind().as_str()
        )));
    }
    Ok(())
}

fn single(params: &ModelParams<impl Scalar>) -> ModelParams<f64> {
    match params {
        ModelParams::Ros(p) => ModelParams::Ros(RosParams {
            rho: p.rho.as_f64(),
            a: p.a.as_f64(),
            b: p.b.as_f64(),
        }),
        ModelParams::Sbm(p) => ModelParams::Sbm(SbmParams {
            rho: p.rho.as_f64(),
            a1: p.a1.as_f64(),
            a2: p.a2.as_f64(),
            b: p.b.as_f64(),
        }),
    }
}

/// `log Pr(sigma_hat) + log Pr(A | sigma_hat) + log Pr(y | sigma_hat)` up to
/// an additive constant that does not depend on `sigma_hat`.
pub fn log_posterior<T: Scalar>(obs: &Observation<T>, sigma_hat: &[i8], params: &ModelParams<T>, side: &SideInformation) -> Result<f64> {
    let n = obs.n();
    check_len(n, sigma_hat.len())?;
    side.check_n(n)?;
    if let Some(&bad) = sigma_hat.iter().find(|&&l| l != 1 && l != -1) {
        return Err(Error::InvalidLabel(bad as i64));
    }
    let params = single(params);
    let n_plus = sigma_hat.iter().filter(|&&l| l > 0).count() as f64;
    let n_minus = n as f64 - n_plus;
    let rho = params.rho().as_f64();
    let prior = n_plus * rho.ln() + n_minus * (1.0 - rho).ln();

    let likelihood = match params {
        ModelParams::Ros(p) => {
            check_kind(obs, ObservationKind::Ros)?;
            let (_, f) = log_scale::<f64>(n);
            let v: Vec<f64> = sigma_hat.iter().map(|&l| p.spike(l)).collect();
            // sum_{i<j} A_ij v_i v_j f - (v_i v_j f)^2 / 2 with A zero on the diagonal
            let mut quad = 0.0;
            for i in 0..n {
                let row = obs.row(i);
                let mut acc = 0.0;
                for j in (i + 1)..n {
                    acc += row[j].as_f64() * v[j];
                }
                quad += v[i] * acc;
            }
            let s2: f64 = v.iter().map(|x| x * x).sum();
            let s4: f64 = v.iter().map(|x| x.powi(4)).sum();
            f * quad - f * f * (s2 * s2 - s4) / 4.0
        }
        ModelParams::Sbm(p) => {
            check_kind(obs, ObservationKind::Sbm)?;
            let (p1, p2, q) = p.edge_probs(n)?;
            let block = |x: i8, y: i8| match (x > 0, y > 0) {
                (true, true) => p1,
                (false, false) => p2,
                _ => q,
            };
            let mut edges = [[0.0f64; 2]; 2];
            for i in 0..n {
                let row = obs.row(i);
                let bi = (sigma_hat[i] > 0) as usize;
                for j in (i + 1)..n {
                    let a = row[j].as_f64();
                    if a != 0.0 {
                        edges[bi][(sigma_hat[j] > 0) as usize] += a;
                    }
                }
            }
            let e_pp = edges[1][1];
            let e_mm = edges[0][0];
            let e_pm = edges[0][1] + edges[1][0];
            let pairs_pp = n_plus * (n_plus - 1.0) / 2.0;
            let pairs_mm = n_minus * (n_minus - 1.0) / 2.0;
            let pairs_pm = n_plus * n_minus;
            let term = |edges: f64, pairs: f64, p: f64| {
                let mut s = 0.0;
                if edges > 0.0 {
                    s += edges * p.ln();
                }
                if pairs - edges > 0.0 {
                    s += (pairs - edges) * (1.0 - p).ln();
                }
                s
            };
            term(e_pp, pairs_pp, block(1, 1)) + term(e_mm, pairs_mm, block(-1, -1)) + term(e_pm, pairs_pm, block(1, -1))
        }
    };

    let side_term = match side.channel() {
        Channel::None => 0.0,
        Channel::Bec => {
            let eps = side.param();
            let mut s = 0.0;
            for (&y, &l) in side.y().iter().zip(sigma_hat) {
                if y == 0 {
                    s += eps.ln();
                } else if y != l {
                    return Ok(f64::NEG_INFINITY);
                } else {
                    s += (1.0 - eps).ln();
                }
            }
            s
        }
        Channel::Bsc => {
            let alpha = side.param();
            side.y()
                .iter()
                .zip(sigma_hat)
                .map(|(&y, &l)| if y == l { (1.0 - alpha).ln() } else { alpha.ln() })
                .sum()
        }
    };
    Ok(prior + likelihood + side_term)
}

/// All sign tuples of length `k` in lexicographic order with `-1 < +1`.
fn sign_tuples(k: usize) -> Vec<Vec<i8>> {
    (0..(1usize << k))
        .map(|mask| (0..k).map(|j| if mask >> (k - 1 - j) & 1 == 1 { 1 } else { -1 }).collect())
        .collect()
}

/// Scores every sign candidate and keeps the one with the largest posterior.
/// Ties, including the all-`-inf` case, keep the earliest candidate.
fn choose<T: Scalar>(
    obs: &Observation<T>,
    params: &ModelParams<T>,
    side: &SideInformation,
    k: usize,
    make: impl Fn(&[i8]) -> Vec<T>,
) -> Result<RecoveryResult<T>> {
    let mut candidates = Vec::with_capacity(1 << k);
    for signs in sign_tuples(k) {
        let scores = with_side_info(ScoreVector::new(make(&signs))?, side)?;
        let est = genie_estimate(&scores);
        let log_posterior = log_posterior(obs, &est, params, side)?;
        candidates.push(Candidate {
            signs,
            scores,
            log_posterior,
        });
    }
    let mut chosen = 0;
    for (i, c) in candidates.iter().enumerate() {
        if c.log_posterior > candidates[chosen].log_posterior {
            chosen = i;
        }
    }
    Ok(RecoveryResult {
        estimate: genie_estimate(&candidates[chosen].scores),
        chosen_sign: candidates[chosen].signs.clone(),
        candidates,
        chosen,
    })
}

fn single_candidate<T: Scalar>(scores: ScoreVector<T>, obs: &Observation<T>, params: &ModelParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    let estimate = genie_estimate(&scores);
    let log_posterior = log_posterior(obs, &estimate, params, side)?;
    Ok(RecoveryResult {
        estimate,
        candidates: vec![Candidate {
            signs: Vec::new(),
            scores,
            log_posterior,
        }],
        chosen: 0,
        chosen_sign: Vec::new(),
    })
}

/// `c1 = sqrt(n) log n (a - b) (rho a^2 + (1 - rho) b^2)^(3/2)` and the
/// Gaussian-model `gamma`.
pub fn ros_coefficients<T: Scalar>(params: &RosParams<T>, n: usize) -> SpectralCoefficients<T> {
    let (ln, _) = log_scale::<T>(n);
    let c1 = T::of(n as f64).sqrt() * ln * (params.a - params.b) * params.second_moment().powf(T::of(1.5));
    SpectralCoefficients {
        c1,
        c2: None,
        gamma: ros_gamma(params, n),
    }
}

/// Spectral recovery for the Gaussian model: `z(s) = s c1 u1 + gamma`, with
/// the channel transform, over `s = ±1`.
pub fn spectral_ros<T: Scalar>(obs: &Observation<T>, params: &RosParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    check_kind(obs, ObservationKind::Ros)?;
    side.check_n(obs.n())?;
    let coef = ros_coefficients(params, obs.n());
    let u1 = top_eigenpairs(obs.matrix(), 1)?.swap_remove(0).vector;
    let mp = ModelParams::Ros(*params);
    choose(obs, &mp, side, 1, |s| {
        let c = T::of(s[0] as f64) * coef.c1;
        u1.iter().map(|&u| c * u + coef.gamma).collect()
    })
}

/// `gamma = (rho (b - a1) + (1 - rho)(a2 - b)) log n`.
pub fn sbm_gamma<T: Scalar>(params: &SbmParams<T>, n: usize) -> T {
    let (ln, _) = log_scale::<T>(n);
    let SbmParams { rho, a1, a2, b } = *params;
    (rho * (b - a1) + (T::one() - rho) * (a2 - b)) * ln
}

/// `(log(a1 / b), log(b / a2))`.
pub fn sbm_weights<T: Scalar>(params: &SbmParams<T>) -> (T, T) {
    ((params.a1 / params.b).ln(), (params.b / params.a2).ln())
}

pub fn is_rank_one<T: Scalar>(params: &SbmParams<T>) -> bool {
    let prod = params.a1 * params.a2;
    let bb = params.b * params.b;
    (prod - bb).abs() <= T::of(RANK_TOL) * prod.max(bb)
}

/// Nonzero eigenpair of the block mean matrix, described by its value and
/// the constant entries the eigenvector takes on `S` and off `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockEigenpair<T = f64> {
    pub value: T,
    pub on_s: T,
    pub off_s: T,
}

/// `|S| = floor(rho n)`.
pub fn block_split<T: Scalar>(rho: T, n: usize) -> Result<usize> {
    let m = (rho * T::of(n as f64)).floor().to_usize().unwrap_or(0);
    if m == 0 || m >= n {
        return Err(Error::InvalidParams(format!("floor(rho n) = {m} leaves an empty block at n = {n}")));
    }
    Ok(m)
}

/// Block mean matrix with `S` the first `floor(rho n)` indices: `p1` on
/// `S x S` (diagonal included), `p2` off `S` and `q` across.
pub fn sbm_block_matrix<T: Scalar>(params: &SbmParams<T>, n: usize) -> Result<SymMatrix<T>> {
    let m = block_split(params.rho, n)?;
    let (ln, _) = log_scale::<T>(n);
    let s = ln / T::of(n as f64);
    let (p1, p2, q) = (params.a1 * s, params.a2 * s, params.b * s);
    let entry = move |i: usize, j: usize| match (i < m, j < m) {
        (true, true) => p1,
        (false, false) => p2,
        _ => q,
    };
    Ok(SymMatrix::from_upper(n, |i| entry(i, i), entry))
}

/// The two nonzero eigenpairs of [`sbm_block_matrix`], through the
/// equivalent `2 x 2` problem on the normalized block indicators. Ordered by
/// decreasing magnitude; the entry on `S` is nonnegative.
pub fn sbm_block_eigenpairs<T: Scalar>(params: &SbmParams<T>, n: usize) -> Result<[BlockEigenpair<T>; 2]> {
    let m = block_split(params.rho, n)?;
    let (ln, _) = log_scale::<T>(n);
    let s = ln / T::of(n as f64);
    let (mf, rf) = (T::of(m as f64), T::of((n - m) as f64));
    let k11 = params.a1 * s * mf;
    let k22 = params.a2 * s * rf;
    let k12 = params.b * s * (mf * rf).sqrt();
    let mean = (k11 + k22) / T::of(2.0);
    let r = ((k11 - k22) / T::of(2.0)).hypot(k12);
    let mut pairs = [mean + r, mean - r].map(|lambda| {
        // Pick the better-conditioned of the two null vectors of K - lambda I.
        let (x, y) = if (lambda - k22).abs() + k12.abs() >= (lambda - k11).abs() + k12.abs() {
            (lambda - k22, k12)
        } else {
            (k12, lambda - k11)
        };
        let (x, y) = if x == T::zero() && y == T::zero() { (T::one(), T::zero()) } else { (x, y) };
        let norm = x.hypot(y);
        let (mut on_s, mut off_s) = (x / norm / mf.sqrt(), y / norm / rf.sqrt());
        if on_s < T::zero() || (on_s == T::zero() && off_s < T::zero()) {
            on_s = -on_s;
            off_s = -off_s;
        }
        BlockEigenpair { value: lambda, on_s, off_s }
    });
    if pairs[1].value.abs() > pairs[0].value.abs() {
        pairs.swap(0, 1);
    }
    Ok(pairs)
}

/// Solves `c1 v1 / l1 + c2 v2 / l2 = w` with `w = log(a1/b)` on `S` and
/// `log(b/a2)` off `S`, for the rank-2 SBM.
pub fn find_sbm_coefficients<T: Scalar>(params: &SbmParams<T>, n: usize) -> Result<SpectralCoefficients<T>> {
    if is_rank_one(params) {
        return Err(Error::RankDeficient);
    }
    let [e1, e2] = sbm_block_eigenpairs(params, n)?;
    if e2.value == T::zero() {
        return Err(Error::RankDeficient);
    }
    let (wp, wm) = sbm_weights(params);
    let m = [[e1.on_s / e1.value, e2.on_s / e2.value], [e1.off_s / e1.value, e2.off_s / e2.value]];
    let [c1, c2] = solve2(m, [wp, wm]).ok_or(Error::RankDeficient)?;
    Ok(SpectralCoefficients {
        c1,
        c2: Some(c2),
        gamma: sbm_gamma(params, n),
    })
}

/// Rank-1 coefficients: `c1 = log(a1 / b)` with the SBM `gamma`.
pub fn sbm_rank_one_coefficients<T: Scalar>(params: &SbmParams<T>, n: usize) -> SpectralCoefficients<T> {
    SpectralCoefficients {
        c1: sbm_weights(params).0,
        c2: None,
        gamma: sbm_gamma(params, n),
    }
}

/// Spectral SBM recovery. Rank-2 parameters enumerate the four sign tuples
/// of `s1 c1 u1 + s2 c2 u2 + gamma`; rank-1 parameters score
/// `log(a1/b) A 1 + gamma` directly.
pub fn spectral_sbm<T: Scalar>(obs: &Observation<T>, params: &SbmParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    check_kind(obs, ObservationKind::Sbm)?;
    side.check_n(obs.n())?;
    let n = obs.n();
    let mp = ModelParams::Sbm(*params);
    if is_rank_one(params) {
        let coef = sbm_rank_one_coefficients(params, n);
        let degrees = obs.matrix().matvec(&vec![T::one(); n]);
        let z = ScoreVector::new(degrees.into_iter().map(|d| coef.c1 * d + coef.gamma).collect())?;
        return single_candidate(with_side_info(z, side)?, obs, &mp, side);
    }
    let coef = find_sbm_coefficients(params, n)?;
    let c2 = coef.c2.expect("rank-2 coefficients carry c2");
    let pairs: Vec<Eigenpair<T>> = top_eigenpairs(obs.matrix(), 2)?;
    let (u1, u2) = (&pairs[0].vector, &pairs[1].vector);
    choose(obs, &mp, side, 2, |s| {
        let a = T::of(s[0] as f64) * coef.c1;
        let b = T::of(s[1] as f64) * c2;
        u1.iter().zip(u2).map(|(&x, &y)| a * x + b * y + coef.gamma).collect()
    })
}

fn require_side_info(side: &SideInformation, n: usize) -> Result<()> {
    if side.channel() == Channel::None {
        return Err(Error::MissingSideInfo);
    }
    side.check_n(n)
}

/// `wp sum_{S+} A_ij + wm sum_{S-} A_ij` per row, with `S±` read off `y`.
fn profiled_sums<T: Scalar>(obs: &Observation<T>, y: &[i8], wp: T, wm: T) -> Vec<T> {
    (0..obs.n())
        .map(|i| {
            let (mut sp, mut sm) = (T::zero(), T::zero());
            for (&a, &l) in obs.row(i).iter().zip(y) {
                match l {
                    1 => sp += a,
                    -1 => sm += a,
                    _ => {}
                }
            }
            wp * sp + wm * sm
        })
        .collect()
}

/// Degree profiling for the Gaussian model: side-information labels are
/// trusted at face value to form `a (a - b) f sum_{S+} A + b (a - b) f
/// sum_{S-} A + gamma`.
pub fn dp_ros<T: Scalar>(obs: &Observation<T>, params: &RosParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    check_kind(obs, ObservationKind::Ros)?;
    require_side_info(side, obs.n())?;
    let n = obs.n();
    let (_, f) = log_scale::<T>(n);
    let d = (params.a - params.b) * f;
    let gamma = ros_gamma(params, n);
    let z = profiled_sums(obs, side.y(), params.a * d, params.b * d)
        .into_iter()
        .map(|x| x + gamma)
        .collect();
    let z = with_side_info(ScoreVector::new(z)?, side)?;
    single_candidate(z, obs, &ModelParams::Ros(*params), side)
}

/// Degree profiling for the SBM: `log(a1/b) sum_{S+} A + log(b/a2) sum_{S-} A + gamma`.
pub fn dp_sbm<T: Scalar>(obs: &Observation<T>, params: &SbmParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    check_kind(obs, ObservationKind::Sbm)?;
    require_side_info(side, obs.n())?;
    let n = obs.n();
    let (wp, wm) = sbm_weights(params);
    let gamma = sbm_gamma(params, n);
    let z = profiled_sums(obs, side.y(), wp, wm).into_iter().map(|x| x + gamma).collect();
    let z = with_side_info(ScoreVector::new(z)?, side)?;
    single_candidate(z, obs, &ModelParams::Sbm(*params), side)
}

/// Spectral recovery for either model.
pub fn spectral<T: Scalar>(obs: &Observation<T>, params: &ModelParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    match params {
        ModelParams::Ros(p) => spectral_ros(obs, p, side),
        ModelParams::Sbm(p) => spectral_sbm(obs, p, side),
    }
}

/// Degree-profiling recovery for either model.
pub fn degree_profiling<T: Scalar>(obs: &Observation<T>, params: &ModelParams<T>, side: &SideInformation) -> Result<RecoveryResult<T>> {
    match params {
        ModelParams::Ros(p) => dp_ros(obs, p, side),
        ModelParams::Sbm(p) => dp_sbm(obs, p, side),
    }
}

/// `true` iff `estimate` equals `sigma`, or also its flip when `partition`.
pub fn matches_truth(estimate: &[i8], sigma: &[i8], partition: bool) -> bool {
    estimate == sigma || (partition && estimate.iter().zip(sigma).all(|(e, s)| *e == -*s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_labels, sample_ros_with_noise, CommunityAssignment};
    use crate::rng::{stream, Purpose};

    #[test]
    fn sign_tuples_are_lexicographic() {
        assert_eq!(sign_tuples(1), vec![vec![-1], vec![1]]);
        assert_eq!(sign_tuples(2), vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn noiseless_ros_recovers_partition() {
        let sigma = sample_labels(8, 0.5, &mut stream(4, Purpose::Labels)).unwrap();
        let p = RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap();
        let obs = sample_ros_with_noise(&p, &sigma, 0.0, &mut stream(4, Purpose::Matrix)).unwrap();
        let r = spectral_ros(&obs, &p, &SideInformation::none()).unwrap();
        assert!(matches_truth(&r.estimate, sigma.labels(), true));
        assert_eq!(r.candidates.len(), 2);
    }

    #[test]
    fn symmetric_ros_posterior_is_flip_invariant() {
        let sigma = sample_labels(10, 0.5, &mut stream(6, Purpose::Labels)).unwrap();
        let p = RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap();
        let obs = crate::model::sample_ros(&p, &sigma, &mut stream(6, Purpose::Matrix)).unwrap();
        let mp = ModelParams::Ros(p);
        let none = SideInformation::none();
        let x = log_posterior(&obs, sigma.labels(), &mp, &none).unwrap();
        let y = log_posterior(&obs, sigma.flipped().labels(), &mp, &none).unwrap();
        assert!((x - y).abs() < 1e-10);
    }

    #[test]
    fn prior_dominates_on_empty_signal() {
        let obs = Observation::new(ObservationKind::Ros, SymMatrix::<f64>::zeros(6)).unwrap();
        let mp = ModelParams::Ros(RosParams::<f64>::new(0.8, 0.0, 1.0).unwrap());
        let none = SideInformation::none();
        let plus = log_posterior(&obs, &[1; 6], &mp, &none).unwrap();
        let minus = log_posterior(&obs, &[-1; 6], &mp, &none).unwrap();
        assert!(plus > minus);
    }

    #[test]
    fn bec_contradiction_is_minus_infinity() {
        let obs = Observation::new(ObservationKind::Ros, SymMatrix::<f64>::zeros(3)).unwrap();
        let mp = ModelParams::Ros(RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap());
        let side = SideInformation::bec(vec![1, 0, 0], 0.5).unwrap();
        assert_eq!(log_posterior(&obs, &[-1, 1, 1], &mp, &side).unwrap(), f64::NEG_INFINITY);
        assert!(log_posterior(&obs, &[1, 1, 1], &mp, &side).unwrap().is_finite());
    }

    #[test]
    fn block_eigenpairs_match_dense_solver() {
        let p = SbmParams::<f64>::new(0.3, 6.0, 2.5, 1.5).unwrap();
        let n = 40;
        let b = sbm_block_matrix(&p, n).unwrap();
        let dense = crate::eigen::top_eigenpairs(&b, 2).unwrap();
        let blocks = sbm_block_eigenpairs(&p, n).unwrap();
        let m = block_split(p.rho, n).unwrap();
        for (d, e) in dense.iter().zip(&blocks) {
            assert!((d.value - e.value).abs() < 1e-12);
            for i in 0..n {
                let want = if i < m { e.on_s } else { e.off_s };
                assert!((d.vector[i] - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn coefficients_reproduce_weights() {
        let p = SbmParams::<f64>::new(0.4, 9.0, 5.0, 2.0).unwrap();
        let n = 500;
        let c = find_sbm_coefficients(&p, n).unwrap();
        let [e1, e2] = sbm_block_eigenpairs(&p, n).unwrap();
        let c2 = c.c2.unwrap();
        let (wp, wm) = sbm_weights(&p);
        assert!((c.c1 * e1.on_s / e1.value + c2 * e2.on_s / e2.value - wp).abs() < 1e-10);
        assert!((c.c1 * e1.off_s / e1.value + c2 * e2.off_s / e2.value - wm).abs() < 1e-10);
    }

    #[test]
    fn rank_one_dispatch() {
        let p = SbmParams::<f64>::new(0.5, 4.0, 1.0, 2.0).unwrap();
        assert!(is_rank_one(&p));
        assert!(matches!(find_sbm_coefficients(&p, 100), Err(Error::RankDeficient)));
        let flat = SbmParams::<f64>::new(0.5, 2.0, 2.0, 2.0).unwrap();
        let sigma = CommunityAssignment::new(vec![1, -1, 1, -1]).unwrap();
        let obs = crate::model::sample_sbm(&flat, &sigma, &mut stream(1, Purpose::Matrix)).unwrap();
        let r = spectral_sbm(&obs, &flat, &SideInformation::none()).unwrap();
        assert_eq!(r.estimate, vec![1; 4]);
        assert!(r.scores().values().iter().all(|&z| z == 0.0));
    }

    #[test]
    fn dp_requires_side_information() {
        let obs = Observation::new(ObservationKind::Ros, SymMatrix::<f64>::zeros(3)).unwrap();
        let p = RosParams::<f64>::new(0.5, 1.0, -1.0).unwrap();
        assert!(matches!(dp_ros(&obs, &p, &SideInformation::none()), Err(Error::MissingSideInfo)));
    }
}
