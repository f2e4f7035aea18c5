//! Adaptive Simpson quadrature with an absolute-error budget.

/// Default absolute tolerance for band-lamination integrals.
pub const TOL_Q: f64 = 1e-10;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`. Returns the
/// value and an error estimate that is `≤ tol` unless the depth cap was
/// hit (the estimate stays honest either way).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, delta.abs() / 15.0);
    }
    let (lv, le) = simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
    let (rv, re) = simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    (lv + rv, le + re)
}

/// Locate the root of a monotone function on `[lo, hi]` by bisection;
/// `f(lo)` and `f(hi)` must have opposite (weak) signs.
pub fn bisect_monotone<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let rising = flo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let (v, e) = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12);
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-11, "got {v}, err {e}");
    }

    #[test]
    fn integrates_oscillation_to_tolerance() {
        let (v, e) = adaptive_simpson(&|x: f64| (10.0 * x).sin(), 0.0, 1.0, 1e-10);
        let want = (1.0 - (10.0f64).cos()) / 10.0;
        assert!((v - want).abs() < 1e-9);
        assert!(e < 1e-9);
    }

    #[test]
    fn bisection_finds_root() {
        let r = bisect_monotone(&|x| x * x - 2.0, 0.0, 2.0, 1e-12);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-11);
    }
}
