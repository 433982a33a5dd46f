//! One-dimensional maximization on a closed interval.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Number of points in the coarse scan preceding the golden-section stage.
pub const PRESCAN_POINTS: usize = 512;

/// Maximizer and maximum of `f` on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Golden-section search for a unimodal `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Maximum {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let arg = 0.5 * (lo + hi);
    Maximum { arg, value: f(arg) }
}

/// Maximizes `f` on `[lo, hi]`: a uniform scan locates the best grid cell,
/// golden-section search refines inside the two neighbouring cells, and the
/// endpoints are compared exactly so boundary maxima are returned exactly.
pub fn maximize_on_interval(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Maximum {
    let m = PRESCAN_POINTS - 1;
    let grid = |k: usize| lo + (hi - lo) * k as f64 / m as f64;
    let mut best_k = 0;
    let mut best_v = f(lo);
    for k in 1..=m {
        let v = f(grid(k));
        if v > best_v {
            best_k = k;
            best_v = v;
        }
    }
    let left = grid(best_k.saturating_sub(1));
    let right = grid((best_k + 1).min(m));
    let mut best = golden_section_max(&f, left, right, tol);
    // Near an interior maximum `f` is flat to rounding, so the grid point
    // only wins strictly; endpoints win ties so boundary maxima are exact.
    for (arg, wins_ties) in [(grid(best_k), false), (lo, true), (hi, true)] {
        let value = f(arg);
        if value > best.value || (wins_ties && value == best.value) {
            best = Maximum { arg, value };
        }
    }
    best
}
