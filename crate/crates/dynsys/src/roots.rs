//! Scalar root-finding helpers: safeguarded bisection on a bracket,
//! geometric bracket expansion on the negative axis, and Newton polish.

use crate::error::{DynError, Result};

/// Bisection on `[lo, hi]` assuming `g(lo)` and `g(hi)` have opposite
/// signs; converges to relative tolerance `rtol`.
pub fn bisect_on<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, rtol: f64) -> Result<f64> {
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(DynError::NoBracket("bisection endpoints agree in sign"));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= rtol * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Geometric leftward bracket expansion: starting at `w0 < 0`, doubles
/// `w` until the sign of `g` differs from its sign at `w0`, and returns
/// the bracketing pair `(lo, hi)` with `lo < hi < 0`.
pub fn bisect_expand_left<G: Fn(f64) -> f64>(g: &G, w0: f64) -> Result<(f64, f64)> {
    let hi = w0.min(-1e-300);
    let s0 = g(hi);
    if s0 == 0.0 {
        return Ok((2.0 * hi, hi));
    }
    let mut prev = hi;
    let mut lo = hi;
    for _ in 0..2000 {
        lo *= 2.0;
        let gl = g(lo);
        if gl == 0.0 || gl.signum() != s0.signum() {
            return Ok((lo, prev));
        }
        prev = lo;
        if lo < -1e290 {
            break;
        }
    }
    Err(DynError::NoBracket("leftward expansion found no sign change"))
}

/// A few Newton steps from a bisection seed; falls back to the seed when
/// the iteration leaves the basin.
pub fn newton_polish<G: Fn(f64) -> f64, DG: Fn(f64) -> f64>(
    g: &G,
    dg: DG,
    seed: f64,
    rtol: f64,
) -> f64 {
    let mut x = seed;
    for _ in 0..8 {
        let d = dg(x);
        if d == 0.0 || !d.is_finite() {
            return x;
        }
        let step = g(x) / d;
        let next = x - step;
        if !next.is_finite() {
            return x;
        }
        if (next - x).abs() <= rtol * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let g = |x: f64| x * x - 2.0;
        let r = bisect_on(&g, 1.0, 2.0, 1e-15).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn expand_left_brackets_negative_root() {
        // root at -8
        let g = |w: f64| -w - 8.0;
        let (lo, hi) = bisect_expand_left(&g, -1.0).unwrap();
        assert!(lo <= -8.0 && -8.0 <= hi);
    }
}
