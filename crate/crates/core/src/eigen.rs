//! Symmetric eigensolvers and entrywise eigenvector diagnostics.
//!
//! Small matrices go through a full Householder tridiagonalization followed
//! by implicit QL. Larger ones use Lanczos with full reorthogonalization,
//! which only ever needs matrix-vector products and returns the extremal
//! part of the spectrum the recovery algorithms use.

use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::linalg::{axpy, dot, norm2, norm_inf, SymMatrix};
use crate::model::{CommunityAssignment, RosParams, SbmParams};
use crate::rng::{stream, Purpose};
use crate::scalar::{log_scale, Scalar};

/// Largest `n` handled by the full decomposition under [`EigenMethod::Auto`].
pub const FULL_CUTOFF: usize = 256;

/// Relative residual every returned pair satisfies.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Magnitudes closer than this (relative) count as tied when ordering.
pub const TIE_TOL: f64 = 1e-12;

const LANCZOS_SEED: u64 = 0x1A2C_705E_ED00_0001;
const LANCZOS_MAX_STEPS: usize = 1200;
const CHECK_EVERY: usize = 5;
const QL_MAX_ITER: usize = 60;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("matrix is not symmetric (max |a_ij - a_ji| = {asymmetry})")]
    NotSymmetric { asymmetry: f64 },
    #[error("requested {k} eigenpairs of a {n} x {n} matrix")]
    InvalidK { k: usize, n: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("reference eigenvalue {value:e} is too close to zero")]
    ZeroEigenvalue { value: f64 },
    #[error("matrix sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

type EResult<T> = std::result::Result<T, EigenError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    /// Full decomposition up to [`FULL_CUTOFF`], Lanczos above it.
    #[default]
    Auto,
    Full,
    Lanczos,
}

/// Eigenvalue with a unit-norm eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<T = f64> {
    pub value: T,
    pub vector: Vec<T>,
}

/// The `k` eigenpairs of largest magnitude, ordered and sign-normalized.
///
/// Order: decreasing `|lambda|`; tied magnitudes by decreasing signed value,
/// then by ascending index of the first nonzero component. Each vector has a
/// positive first nonzero component.
pub fn top_eigenpairs<T: Scalar>(a: &SymMatrix<T>, k: usize) -> EResult<Vec<Eigenpair<T>>> {
    top_eigenpairs_with(a, k, EigenMethod::Auto)
}

pub fn top_eigenpairs_with<T: Scalar>(a: &SymMatrix<T>, k: usize, method: EigenMethod) -> EResult<Vec<Eigenpair<T>>> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(EigenError::InvalidK { k, n });
    }
    check_symmetric(a)?;
    let use_full = match method {
        EigenMethod::Full => true,
        EigenMethod::Lanczos => false,
        EigenMethod::Auto => n <= FULL_CUTOFF,
    };
    let mut pairs = if use_full { full_eigen(a)? } else { lanczos(a, k)? };
    order_pairs(&mut pairs);
    pairs.truncate(k);
    Ok(pairs)
}

/// All eigenpairs via the full decomposition, in the same order as
/// [`top_eigenpairs`].
pub fn all_eigenpairs<T: Scalar>(a: &SymMatrix<T>) -> EResult<Vec<Eigenpair<T>>> {
    check_symmetric(a)?;
    let mut pairs = full_eigen(a)?;
    order_pairs(&mut pairs);
    Ok(pairs)
}

fn check_symmetric<T: Scalar>(a: &SymMatrix<T>) -> EResult<()> {
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(EigenError::NonFinite);
    }
    let asym = a.asymmetry();
    let scale = a.max_abs().max(T::one());
    if asym > T::of(16.0) * T::epsilon() * scale {
        return Err(EigenError::NotSymmetric { asymmetry: asym.as_f64() });
    }
    Ok(())
}

fn sign_threshold<T: Scalar>() -> T {
    T::of(100.0) * T::epsilon()
}

fn first_nonzero<T: Scalar>(v: &[T]) -> usize {
    let tol = sign_threshold::<T>();
    v.iter().position(|x| x.abs() > tol).unwrap_or(v.len())
}

fn normalize_sign<T: Scalar>(v: &mut [T]) {
    let i = first_nonzero(v);
    if i < v.len() && v[i] < T::zero() {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn order_pairs<T: Scalar>(pairs: &mut [Eigenpair<T>]) {
    for p in pairs.iter_mut() {
        normalize_sign(&mut p.vector);
    }
    pairs.sort_by(|x, y| y.value.abs().as_f64().total_cmp(&x.value.abs().as_f64()));
    let tied = |x: T, y: T| (x.abs() - y.abs()).abs().as_f64() <= TIE_TOL * x.abs().max(y.abs()).as_f64().max(1.0);
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && tied(pairs[end - 1].value, pairs[end].value) {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|x, y| {
                y.value
                    .as_f64()
                    .total_cmp(&x.value.as_f64())
                    .then_with(|| first_nonzero(&x.vector).cmp(&first_nonzero(&y.vector)))
            });
        }
        start = end;
    }
}

/// Householder reduction to tridiagonal form. Returns `(d, e, z)` where `d`
/// is the diagonal, `e[i]` couples rows `i` and `i + 1`, and row `i` of the
/// row-major `z` is column `i` of the accumulated orthogonal transform.
fn tridiagonalize<T: Scalar>(a: &SymMatrix<T>) -> (Vec<T>, Vec<T>, Vec<T>) {
    let n = a.n();
    let mut v: Vec<T> = a.as_slice().to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d: Vec<T> = (0..n).map(|j| v[idx(n - 1, j)]).collect();
    let mut e = vec![T::zero(); n];

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for x in &d[..i] {
            scale += x.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
                v[idx(j, i)] = T::zero();
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for x in &mut e[..i] {
                *x = T::zero();
            }
            for j in 0..i {
                let f = d[j];
                v[idx(j, i)] = f;
                let mut g = e[j] + v[idx(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[idx(k, j)] * d[k];
                    e[k] += v[idx(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[idx(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[idx(n - 1, i)] = v[idx(i, i)];
        v[idx(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[idx(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[idx(k, i + 1)] * v[idx(k, j)];
                }
                for k in 0..=i {
                    let dk = d[k];
                    v[idx(k, j)] -= g * dk;
                }
            }
        }
        for k in 0..=i {
            v[idx(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
        v[idx(n - 1, j)] = T::zero();
    }
    v[idx(n - 1, n - 1)] = T::one();

    // Shift so that e[i] couples (i, i + 1).
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let mut z = vec![T::zero(); n * n];
    for r in 0..n {
        for c in 0..n {
            z[c * n + r] = v[idx(r, c)];
        }
    }
    (d, e, z)
}

/// Implicit QL on a symmetric tridiagonal matrix. On entry `z` holds the
/// basis as rows; on exit row `i` is the eigenvector for `d[i]`.
fn tridiagonal_ql<T: Scalar>(d: &mut [T], e: &mut [T], z: &mut [T]) -> EResult<()> {
    let n = d.len();
    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_MAX_ITER {
                    return Err(EigenError::NoConvergence {
                        iterations: iter,
                        residual: e[l].abs().as_f64(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (T::of(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in &mut d[(l + 2)..n] {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (x, y) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let t = *y;
                        *y = s * *x + c * t;
                        *x = c * *x - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}

fn full_eigen<T: Scalar>(a: &SymMatrix<T>) -> EResult<Vec<Eigenpair<T>>> {
    let n = a.n();
    let (mut d, mut e, mut z) = tridiagonalize(a);
    tridiagonal_ql(&mut d, &mut e, &mut z)?;
    Ok(d
        .into_iter()
        .enumerate()
        .map(|(i, value)| Eigenpair {
            value,
            vector: z[i * n..(i + 1) * n].to_vec(),
        })
        .collect())
}

/// Eigen-decomposition of the `m x m` tridiagonal `(alpha, beta)`; returns
/// values and row-major eigenvectors.
fn tridiagonal_eigen<T: Scalar>(alpha: &[T], beta: &[T]) -> EResult<(Vec<T>, Vec<T>)> {
    let m = alpha.len();
    let mut d = alpha.to_vec();
    let mut e = vec![T::zero(); m];
    e[..m - 1].copy_from_slice(&beta[..m - 1]);
    let mut z = vec![T::zero(); m * m];
    for i in 0..m {
        z[i * m + i] = T::one();
    }
    tridiagonal_ql(&mut d, &mut e, &mut z)?;
    Ok((d, z))
}

/// Indices of the `k` Ritz values of largest magnitude.
fn top_by_magnitude<T: Scalar>(theta: &[T], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..theta.len()).collect();
    idx.sort_by(|&i, &j| theta[j].abs().as_f64().total_cmp(&theta[i].abs().as_f64()).then(i.cmp(&j)));
    idx.truncate(k);
    idx
}

fn random_unit<T: Scalar, R: rand::Rng>(n: usize, rng: &mut R, basis: &[Vec<T>]) -> Option<Vec<T>> {
    for _ in 0..8 {
        let mut v: Vec<T> = (0..n).map(|_| T::of(StandardNormal.sample(rng))).collect();
        for _ in 0..2 {
            for q in basis {
                let c = dot(q, &v);
                axpy(-c, q, &mut v);
            }
        }
        let nv = norm2(&v);
        if nv > T::of(1e-6) {
            v.iter_mut().for_each(|x| *x /= nv);
            return Some(v);
        }
    }
    None
}

/// Lanczos with two passes of classical Gram-Schmidt against the whole basis
/// at every step. Converged Ritz pairs are checked against an explicit
/// residual before being returned.
fn lanczos<T: Scalar>(a: &SymMatrix<T>, k: usize) -> EResult<Vec<Eigenpair<T>>> {
    let n = a.n();
    let max_steps = n.min(LANCZOS_MAX_STEPS);
    let mut rng = stream(LANCZOS_SEED, Purpose::Solver);
    let scale = a.max_abs().max(T::min_positive_value());
    let breakdown = T::of(n as f64).sqrt() * scale * T::epsilon() * T::of(64.0);
    let ritz_tol = T::of(1e-11).max(T::of(100.0) * T::epsilon());
    let res_tol = residual_tol::<T>();

    let mut q: Vec<Vec<T>> = Vec::new();
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();
    let mut next = random_unit(n, &mut rng, &q).expect("a random start vector in R^n cannot vanish");
    let mut last_residual = f64::INFINITY;

    loop {
        let qj = next;
        let mut w = a.matvec(&qj);
        let aj = dot(&qj, &w);
        axpy(-aj, &qj, &mut w);
        if let (Some(prev), Some(&bj)) = (q.last(), beta.last()) {
            axpy(-bj, prev, &mut w);
        }
        q.push(qj);
        alpha.push(aj);
        for _ in 0..2 {
            for qi in &q {
                let c = dot(qi, &w);
                axpy(-c, qi, &mut w);
            }
        }
        let bnext = norm2(&w);
        let m = q.len();
        let broke = bnext <= breakdown;
        let exhausted = m >= max_steps;

        if broke || exhausted || (m >= (k + 4).min(n) && m % CHECK_EVERY == 0) {
            let (theta, s) = tridiagonal_eigen(&alpha, &beta_with(&beta, m))?;
            let top = top_by_magnitude(&theta, k.min(m));
            let bound = |i: usize| (if broke { T::zero() } else { bnext }) * s[i * m + m - 1].abs();
            let ritz_ok = top.len() == k && top.iter().all(|&i| bound(i) <= ritz_tol * theta[i].abs().max(T::one()));
            if ritz_ok || m == n {
                let pairs: Vec<Eigenpair<T>> = top
                    .iter()
                    .map(|&i| {
                        let mut y = vec![T::zero(); n];
                        for (j, qj) in q.iter().enumerate() {
                            axpy(s[i * m + j], qj, &mut y);
                        }
                        let ny = norm2(&y);
                        y.iter_mut().for_each(|x| *x /= ny);
                        let ay = a.matvec(&y);
                        Eigenpair { value: dot(&y, &ay), vector: y }
                    })
                    .collect();
                let worst = pairs
                    .iter()
                    .map(|p| residual(a, p).as_f64() / p.value.abs().as_f64().max(1.0))
                    .fold(0.0, f64::max);
                last_residual = worst;
                if worst <= res_tol && top.len() == k {
                    return Ok(pairs);
                }
            }
            if m == n || exhausted {
                return Err(EigenError::NoConvergence {
                    iterations: m,
                    residual: last_residual,
                });
            }
        }

        if broke {
            // Invariant subspace found; continue in its orthogonal complement.
            beta.push(T::zero());
            next = match random_unit(n, &mut rng, &q) {
                Some(v) => v,
                None => {
                    return Err(EigenError::NoConvergence {
                        iterations: m,
                        residual: last_residual,
                    })
                }
            };
        } else {
            beta.push(bnext);
            w.iter_mut().for_each(|x| *x /= bnext);
            next = w;
        }
    }
}

/// Off-diagonal of the current `m x m` Lanczos matrix padded to length `m`.
fn beta_with<T: Scalar>(beta: &[T], m: usize) -> Vec<T> {
    let mut b = beta[..(m - 1)].to_vec();
    b.push(T::zero());
    b
}

/// Relative residual bound for the scalar type: [`RESIDUAL_TOL`] in double
/// precision, looser in single precision where it is unattainable.
pub fn residual_tol<T: Scalar>() -> f64 {
    RESIDUAL_TOL.max(1e4 * T::epsilon().as_f64())
}

/// `||A v - lambda v||_2`.
pub fn residual<T: Scalar>(a: &SymMatrix<T>, p: &Eigenpair<T>) -> T {
    let mut r = a.matvec(&p.vector);
    axpy(-p.value, &p.vector, &mut r);
    norm2(&r)
}

/// `E[A | sigma]` for the Gaussian model: `v v^T sqrt(log n / n)` with the
/// diagonal zeroed.
pub fn expected_matrix_ros<T: Scalar>(params: &RosParams<T>, sigma: &CommunityAssignment) -> SymMatrix<T> {
    let n = sigma.n();
    let (_, f) = log_scale::<T>(n);
    let v: Vec<T> = sigma.labels().iter().map(|&l| params.spike(l)).collect();
    SymMatrix::from_upper(n, |_| T::zero(), |i, j| v[i] * v[j] * f)
}

/// `E[A | sigma]` for the SBM: block edge probabilities with the diagonal
/// zeroed. Probabilities are not clamped.
pub fn expected_matrix_sbm<T: Scalar>(params: &SbmParams<T>, sigma: &CommunityAssignment) -> SymMatrix<T> {
    let n = sigma.n();
    let (ln, _) = log_scale::<T>(n);
    let s = ln / T::of(n as f64);
    let (p1, p2, q) = (params.a1 * s, params.a2 * s, params.b * s);
    let l = sigma.labels();
    SymMatrix::from_upper(
        n,
        |_| T::zero(),
        |i, j| match (l[i] > 0, l[j] > 0) {
            (true, true) => p1,
            (false, false) => p2,
            _ => q,
        },
    )
}

/// `min_{s = ±1} ||s u_k(A) - A u*_k / lambda*_k||_inf` for the 0-based
/// eigenpair index `index`.
pub fn entrywise_gap<T: Scalar>(a: &SymMatrix<T>, a_star: &SymMatrix<T>, index: usize) -> EResult<T> {
    if a.n() != a_star.n() {
        return Err(EigenError::SizeMismatch(a.n(), a_star.n()));
    }
    let star = top_eigenpairs(a_star, index + 1)?.swap_remove(index);
    if star.value.abs() < T::of(1e-10) {
        return Err(EigenError::ZeroEigenvalue { value: star.value.as_f64() });
    }
    let u = top_eigenpairs(a, index + 1)?.swap_remove(index).vector;
    let mut w = a.matvec(&star.vector);
    w.iter_mut().for_each(|x| *x /= star.value);
    let gap = |s: T| {
        let d: Vec<T> = u.iter().zip(&w).map(|(&ui, &wi)| s * ui - wi).collect();
        norm_inf(&d)
    };
    Ok(gap(T::one()).min(gap(-T::one())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_sym(n: usize, seed: u64) -> SymMatrix<f64> {
        let mut r = stream(seed, Purpose::Matrix);
        SymMatrix::from_upper(n, |_| 0.0, |_, _| StandardNormal.sample(&mut r))
    }

    #[test]
    fn diagonal_matrix() {
        let mut m = SymMatrix::<f64>::zeros(2);
        m.set_sym(0, 0, 2.0);
        m.set_sym(1, 1, 1.0);
        let p = top_eigenpairs(&m, 2).unwrap();
        assert_eq!(p[0].value, 2.0);
        assert_eq!(p[0].vector, vec![1.0, 0.0]);
        assert_eq!(p[1].value, 1.0);
        assert_eq!(p[1].vector, vec![0.0, 1.0]);
    }

    #[test]
    fn tie_prefers_positive_eigenvalue() {
        let mut m = SymMatrix::<f64>::zeros(2);
        m.set_sym(0, 1, 1.0);
        let p = top_eigenpairs(&m, 2).unwrap();
        assert!((p[0].value - 1.0).abs() < 1e-15);
        assert!((p[1].value + 1.0).abs() < 1e-15);
        assert!(p.iter().all(|q| q.vector[0] > 0.0));
    }

    #[test]
    fn rejects_asymmetric_and_bad_k() {
        let m = SymMatrix::from_row_major_unchecked(2, vec![0.0, 1.0, 2.0, 0.0]);
        assert!(matches!(top_eigenpairs(&m, 1), Err(EigenError::NotSymmetric { .. })));
        assert!(matches!(top_eigenpairs(&SymMatrix::<f64>::zeros(3), 4), Err(EigenError::InvalidK { .. })));
    }

    #[test]
    fn lanczos_agrees_with_full() {
        let a = random_sym(120, 3);
        let full = top_eigenpairs_with(&a, 3, EigenMethod::Full).unwrap();
        let lz = top_eigenpairs_with(&a, 3, EigenMethod::Lanczos).unwrap();
        for (x, y) in full.iter().zip(&lz) {
            assert!((x.value - y.value).abs() < 1e-9, "{} vs {}", x.value, y.value);
            let d: f64 = x.vector.iter().zip(&y.vector).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            assert!(d < 1e-6);
        }
    }

    #[test]
    fn full_residuals_are_small() {
        let a = random_sym(40, 8);
        for p in all_eigenpairs(&a).unwrap() {
            assert!(residual(&a, &p) <= 1e-10 * p.value.abs().max(1.0));
            assert!((norm2(&p.vector) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_one_expected_matrix_in_lanczos() {
        let labels: Vec<i8> = (0..400).map(|i| if i % 3 == 0 { 1 } else { -1 }).collect();
        let sigma = CommunityAssignment::new(labels).unwrap();
        let p = RosParams::<f64>::new(0.4, 1.3, -0.5).unwrap();
        let a = expected_matrix_ros(&p, &sigma);
        let top = top_eigenpairs_with(&a, 1, EigenMethod::Lanczos).unwrap();
        assert!(residual(&a, &top[0]) < 1e-8 * top[0].value.abs());
        assert!(entrywise_gap(&a, &a, 0).unwrap() < 1e-8);
    }

    #[test]
    fn f32_matrices_are_supported() {
        let a = random_sym(30, 5).map(|x| x as f32);
        let p = top_eigenpairs(&a, 2).unwrap();
        assert!(residual(&a, &p[0]) < 1e-4 * p[0].value.abs());
    }
}
