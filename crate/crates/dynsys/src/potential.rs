//! The potential chart of the Loud sub-family `F = D + 1`:
//! `V(u) = u²(1-u)^(-2(D+1))/2`, its involution σ, the turning points of
//! an energy level, the monotonicity-criterion operator, and the two
//! comparison curves ψ₁, ψ₂.

use crate::error::{DynError, Result};
use crate::roots::{bisect_expand_left, bisect_on, newton_polish};

/// `(V, V', ℓ)` at `u`, for `u < 1`:
/// `V = u²(1-u)^(-2(D+1))/2`, `V' = u(1+Du)(1-u)^(-2D-3)`,
/// `ℓ = (1-u)^(-(D+2))`.
pub fn potential_terms(u: f64, d: f64) -> Result<(f64, f64, f64)> {
    if !(u < 1.0) {
        return Err(DynError::DomainError("potential chart requires u < 1"));
    }
    let om = 1.0 - u;
    let v = 0.5 * u * u * om.powf(-2.0 * (d + 1.0));
    let vp = u * (1.0 + d * u) * om.powf(-2.0 * d - 3.0);
    let ell = om.powf(-(d + 2.0));
    Ok((v, vp, ell))
}

pub fn potential(u: f64, d: f64) -> f64 {
    0.5 * u * u * (1.0 - u).powf(-2.0 * (d + 1.0))
}

pub fn potential_deriv(u: f64, d: f64) -> f64 {
    u * (1.0 + d * u) * (1.0 - u).powf(-2.0 * d - 3.0)
}

pub fn potential_second_deriv(u: f64, d: f64) -> f64 {
    let om = 1.0 - u;
    (1.0 + 2.0 * d * u) * om.powf(-2.0 * d - 3.0)
        + u * (1.0 + d * u) * (2.0 * d + 3.0) * om.powf(-2.0 * d - 4.0)
}

pub fn potential_third_deriv(u: f64, d: f64) -> f64 {
    let om = 1.0 - u;
    2.0 * d * om.powf(-2.0 * d - 3.0)
        + 2.0 * (1.0 + 2.0 * d * u) * (2.0 * d + 3.0) * om.powf(-2.0 * d - 4.0)
        + u * (1.0 + d * u) * (2.0 * d + 3.0) * (2.0 * d + 4.0) * om.powf(-2.0 * d - 5.0)
}

pub fn integrating_factor(u: f64, d: f64) -> f64 {
    (1.0 - u).powf(-(d + 2.0))
}

/// The involution: the unique `w < 0` with `V(w) = V(u)`, for `u ∈ (0,1)`
/// and `D ∈ (-1, 0)`. `σ(0+) → 0`.
pub fn involution_sigma(u: f64, d: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(DynError::DomainError("involution requires 0 < u < 1"));
    }
    let target = potential(u, d);
    let g = |w: f64| potential(w, d) - target;
    // V(-u) < V(u) for D in (-1,0); expand left until V exceeds the target
    let (lo, hi) = bisect_expand_left(&g, -u)?;
    let mut w = bisect_on(&g, lo, hi, 1e-15)?;
    w = newton_polish(&g, |x| potential_deriv(x, d), w, 1e-13);
    Ok(w)
}

/// Turning points `u₋ < 0 < u₊ < 1` of the level `V = h`.
pub fn turning_points(h: f64, d: f64) -> Result<(f64, f64)> {
    if !(h > 0.0) {
        return Err(DynError::DomainError("energy must be positive"));
    }
    // right: V increases from 0 to ∞ on (0, 1)
    let g = |u: f64| potential(u, d) - h;
    let mut hi = 1.0 - 1e-3;
    let mut guard = 0;
    while potential(hi, d) < h {
        hi = 1.0 - 0.1 * (1.0 - hi);
        guard += 1;
        if guard > 200 {
            return Err(DynError::ConvergenceFailure("right turning point bracket"));
        }
    }
    let mut lo = hi.min(1e-8);
    while potential(lo, d) > h {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(DynError::ConvergenceFailure("right turning point bracket"));
        }
    }
    let mut up = bisect_on(&g, lo, hi, 1e-15)?;
    up = newton_polish(&g, |x| potential_deriv(x, d), up, 1e-13);

    // left: V increases to ∞ as u → -∞
    let (llo, lhi) = bisect_expand_left(&g, -up.max(1e-12))?;
    let mut um = bisect_on(&g, llo, lhi, 1e-15)?;
    um = newton_polish(&g, |x| potential_deriv(x, d), um, 1e-13);
    Ok((um, up))
}

/// The closed form of `f` in the criterion operator:
/// `f(x) = x(1-x)^(-3(D+1)) (1 + 2Dx + D(1+2D)x²) / (2(1+Dx)²)`.
pub fn criterion_f(x: f64, d: f64) -> Result<f64> {
    let den = 1.0 + d * x;
    if den.abs() < 1e-9 {
        return Err(DynError::PoleError { u: x });
    }
    let quad = 1.0 + 2.0 * d * x + d * (1.0 + 2.0 * d) * x * x;
    Ok(x * (1.0 - x).powf(-3.0 * (d + 1.0)) * quad / (2.0 * den * den))
}

/// The criterion operator `(f(u) - f(σ(u)) σ'(u)) / 2` with
/// `g(u) = u(1-u)^(-3(D+1))` and `σ'(u) = V'(u)/V'(σ(u))`.
pub fn pi_sigma(u: f64, d: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(DynError::DomainError("criterion requires 0 < u < 1"));
    }
    let w = involution_sigma(u, d)?;
    let fu = criterion_f(u, d)?;
    let fw = criterion_f(w, d)?;
    let sp = potential_deriv(u, d) / potential_deriv(w, d);
    Ok(0.5 * (fu - fw * sp))
}

/// Left end `w*(D) = (-D + √(-D(1+D))) / (D(1+2D))` of the admissible
/// `w`-window for the second comparison curve, `D ∈ (-1/2, 0)`.
pub fn w_star(d: f64) -> Result<f64> {
    if !(d > -0.5 && d < 0.0) {
        return Err(DynError::DomainError("w* requires D in (-1/2, 0)"));
    }
    Ok((-d + (-d * (1.0 + d)).sqrt()) / (d * (1.0 + 2.0 * d)))
}

/// `F₁(u, w; D) = u(1-u)^(-(D+1)) + w(1-w)^(-(D+1))`.
pub fn curve_f1(u: f64, w: f64, d: f64) -> f64 {
    let e = -(d + 1.0);
    u * (1.0 - u).powf(e) + w * (1.0 - w).powf(e)
}

/// `F₂(u, w; D)`: sum of `(1-x)(1+2Dx+D(1+2D)x²) / (x(1+Dx)³)` at `x = u`
/// and `x = w`.
pub fn curve_f2(u: f64, w: f64, d: f64) -> f64 {
    let g2 = |x: f64| {
        let quad = 1.0 + 2.0 * d * x + d * (1.0 + 2.0 * d) * x * x;
        let den = x * (1.0 + d * x).powi(3);
        (1.0 - x) * quad / den
    };
    g2(u) + g2(w)
}

/// Solves `F₁(u, ·; D) = 0` on `(-∞, 0)`: this is the involution curve.
pub fn psi_one(u: f64, d: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(DynError::DomainError("psi requires 0 < u < 1"));
    }
    let g = |w: f64| curve_f1(u, w, d);
    // g(0-) > 0 and g → -∞ as w → -∞
    let (lo, hi) = bisect_expand_left(&g, -u)?;
    bisect_on(&g, lo, hi, 1e-15)
}

/// Solves `F₂(u, ·; D) = 0` on `(w*(D), 0)` by bracketed bisection.
pub fn psi_two(u: f64, d: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(DynError::DomainError("psi requires 0 < u < 1"));
    }
    let ws = w_star(d)?;
    let g = |w: f64| curve_f2(u, w, d);
    // Bracket inside (w*, 0): the w-part of F₂ tends to 0⁻ at w*⁺, so g
    // approaches the positive u-part there; near 0⁻ it blows down like 1/w.
    let mut lo = ws + (0.0 - ws) * 1e-9;
    let mut k = 0;
    while !(g(lo) > 0.0) {
        lo = ws + (lo - ws) * 0.25;
        k += 1;
        if k > 120 || !(lo > ws) {
            return Err(DynError::NoBracket("psi_two left endpoint"));
        }
    }
    let mut hi = -1e-6;
    k = 0;
    while !(g(hi) < 0.0) {
        hi *= 0.5;
        k += 1;
        if k > 300 {
            return Err(DynError::NoBracket("psi_two right endpoint"));
        }
    }
    if !(lo < hi) {
        return Err(DynError::NoBracket("psi_two window collapsed"));
    }
    bisect_on(&g, lo, hi, 1e-15)
}

/// `ψ₁(u; D) - ψ₂(u; D)`, the gap the certificate proves nonzero.
pub fn curve_gap(u: f64, d: f64) -> Result<f64> {
    if !(d > -0.5 && d < 0.0) {
        return Err(DynError::DomainError("curve gap requires D in (-1/2, 0)"));
    }
    Ok(psi_one(u, d)? - psi_two(u, d)?)
}
