//! Bisection on bracketing predicates.

use crate::error::{inconsistency, Result};

/// Width at which bisection stops.
pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;

/// Narrows `[lo, hi]` around the transition of a monotone predicate.
///
/// Requires `pred(lo) == false` and `pred(hi) == true`; returns the final
/// `(lo, hi)` with `hi − lo ≤ BISECTION_TOL` (or no representable midpoint).
pub fn bisect_predicate<F>(mut lo: f64, mut hi: f64, mut pred: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(lo <= hi) {
        return Err(inconsistency(format!("bisection interval [{lo}, {hi}] is reversed")));
    }
    if pred(lo)? || !pred(hi)? {
        return Err(inconsistency(format!("predicate not bracketed on [{lo}, {hi}]")));
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// Root of a continuous `f` with `f(lo) > 0 ≥ f(hi)` (or the mirrored signs).
pub fn bisect_root<F>(lo: f64, hi: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(inconsistency(format!(
            "root not bracketed on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    let positive_at_lo = f_lo > 0.0;
    let (a, b) = bisect_predicate(lo, hi, |x| {
        let v = f(x)?;
        Ok(if positive_at_lo { v <= 0.0 } else { v >= 0.0 })
    })?;
    Ok(0.5 * (a + b))
}
