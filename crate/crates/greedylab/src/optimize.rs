//! Derivative-free one-dimensional minimization on a bracket. The objectives
//! here are convex but only piecewise smooth (max-of-linear norms), so
//! bracketed ternary search is the workhorse.

/// Minimizes `f` over `[lo, hi]` by ternary search. Returns the best point
/// and value seen, including the endpoints.
pub fn ternary_min<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut best_x = lo;
    let mut best_v = f(lo);
    let v_hi = f(hi);
    if v_hi < best_v {
        best_x = hi;
        best_v = v_hi;
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    for _ in 0..200 {
        if hi - lo <= rel_tol * scale {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        let v1 = f(m1);
        let v2 = f(m2);
        if v1 < best_v {
            best_x = m1;
            best_v = v1;
        }
        if v2 < best_v {
            best_x = m2;
            best_v = v2;
        }
        if v1 <= v2 {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = f(mid);
    if v < best_v {
        best_x = mid;
        best_v = v;
    }
    (best_x, best_v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_minimum_of_shifted_parabola() {
        let (x, v) = ternary_min(|x| (x - 2.0).powi(2) + 1.0, -10.0, 10.0, 1e-12);
        assert!((x - 2.0).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn handles_nonsmooth_vee() {
        let (x, v) = ternary_min(|x| (x - 0.5f64).abs().max(0.25), -4.0, 4.0, 1e-12);
        assert!(v <= 0.25 + 1e-12);
        assert!((x - 0.5).abs() < 0.3, "any point in the flat bottom is fine");
    }

    #[test]
    fn endpoint_minimum_is_kept() {
        let (x, _) = ternary_min(|x| x, 1.0, 3.0, 1e-12);
        assert!((x - 1.0).abs() < 1e-9);
    }
}
