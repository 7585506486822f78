//! Period and Abelian integrals of the potential system by quadrature.
//!
//! The cycle integral is folded through the involution onto the right
//! half-projection `(0, u₊)`:
//!
//! `∮ k(u)/v du = 2 ∫₀^{u₊} [k(u) + k(σ(u))·|σ'(u)|] / √(2(h-V(u))) du`
//!
//! which keeps the integration domain order-one even when the left
//! turning point runs off to very large `|u|` (large `h`, `D` near 0).
//! The trigonometric substitution `u = m + ρ sin φ` removes the
//! square-root singularity at `u₊`; near it the energy gap switches to a
//! second-order Taylor evaluation to dodge cancellation, and the distance
//! `s = 1 - u` is carried through every kernel so `1 - u` is never
//! recomputed from a rounded `u`. A tanh-sinh pass backs up the adaptive
//! rule when the transformed integrand keeps a stiff boundary layer.

use std::f64::consts::FRAC_PI_2;

use crate::error::{DynError, Result};
use crate::params::EnergyLevel;
use crate::potential::{potential, potential_deriv, turning_points};
use crate::quad::{gauss_kronrod_adaptive, tanh_sinh};
use crate::roots::{bisect_expand_left, bisect_on, newton_polish};

/// `V` and derivatives parameterized by `(u, s = 1-u)`.
fn v_of(u: f64, s: f64, d: f64) -> f64 {
    0.5 * u * u * s.powf(-2.0 * (d + 1.0))
}

fn vp_of(u: f64, s: f64, d: f64) -> f64 {
    u * (1.0 + d * u) * s.powf(-2.0 * d - 3.0)
}

fn vpp_of(u: f64, s: f64, d: f64) -> f64 {
    (1.0 + 2.0 * d * u) * s.powf(-2.0 * d - 3.0)
        + u * (1.0 + d * u) * (2.0 * d + 3.0) * s.powf(-2.0 * d - 4.0)
}

fn vppp_of(u: f64, s: f64, d: f64) -> f64 {
    2.0 * d * s.powf(-2.0 * d - 3.0)
        + 2.0 * (1.0 + 2.0 * d * u) * (2.0 * d + 3.0) * s.powf(-2.0 * d - 4.0)
        + u * (1.0 + d * u) * (2.0 * d + 3.0) * (2.0 * d + 4.0) * s.powf(-2.0 * d - 5.0)
}

struct LevelGeometry {
    d: f64,
    h: f64,
    /// distance from the right turning point to the chart boundary
    s_plus: f64,
    u_plus: f64,
    /// half-width of the folded domain (0, u₊)
    rho: f64,
    vp_plus: f64,
    vpp_plus: f64,
    switch_plus: f64,
}

impl LevelGeometry {
    fn new(h: f64, d: f64) -> Result<Self> {
        let (_, up) = turning_points(h, d)?;
        let s_plus = refine_boundary_distance(h, d, 1.0 - up)?;
        let up = 1.0 - s_plus;
        // Taylor radius balancing truncation against the cancellation
        // noise of the direct h - V evaluation: the cubic term
        // (V'''/6)d³ matches the round-off eps·h at d = (6 eps h/V''')^(1/3)
        let switch_plus = {
            let vppp = vppp_of(up, s_plus, d).abs().max(1e-300);
            (6.0 * f64::EPSILON * h / vppp).cbrt().min(0.05 * up)
        };
        Ok(Self {
            d,
            h,
            s_plus,
            u_plus: up,
            rho: 0.5 * up,
            vp_plus: vp_of(up, s_plus, d),
            vpp_plus: vpp_of(up, s_plus, d),
            switch_plus,
        })
    }

    /// `2(h - V(u))`, by Taylor expansion from the right turning point
    /// inside the cancellation zone.
    fn two_gap(&self, u: f64, s: f64, d_plus: f64) -> f64 {
        let g = if d_plus < self.switch_plus {
            d_plus * (self.vp_plus - 0.5 * self.vpp_plus * d_plus)
        } else {
            self.h - v_of(u, s, self.d)
        };
        (2.0 * g).max(0.0)
    }

    /// `(u, s, d₊, cos φ)` at the angle φ, cancellation-free: `d₊ =
    /// ρ(1 - sin φ) = 2ρ sin²(π/4 - φ/2)`, the boundary distance is the
    /// exact positive sum `s₊ + d₊`, and `cos φ` reuses the same
    /// half-angle factors so its rounding cancels against `√d₊`.
    fn coords(&self, phi: f64) -> (f64, f64, f64, f64) {
        let half = 0.5 * (FRAC_PI_2 - phi);
        let sn = half.sin();
        let cs = half.cos();
        let d_plus = 2.0 * self.rho * sn * sn;
        let d_minus = 2.0 * self.rho * cs * cs;
        let u = if d_plus <= d_minus {
            self.u_plus - d_plus
        } else {
            d_minus
        };
        let s = self.s_plus + d_plus;
        (u, s, d_plus, 2.0 * sn * cs)
    }

    /// The involution image `(σ(u), σ'(u))`, targeting the directly
    /// evaluated `V(u) = u²s^(-2(D+1))/2`, which is well conditioned at
    /// every fold point. `ln V(-e^x)` is strictly increasing in `x`, so
    /// a Newton iteration in `x = ln(-w)` converges from the asymptotic
    /// seed; geometric bracketing stays as the fallback.
    fn sigma(&self, u: f64, s: f64) -> Result<(f64, f64)> {
        let d = self.d;
        if u <= 1e-12 * self.u_plus {
            // σ(u) = -u + O(u²), σ' → -1
            return Ok((-u, -1.0));
        }
        let target = v_of(u, s, d);
        let ln_target = target.ln();
        // seeds from the two regimes: V ~ w²/2 near 0, V ~ |w|^(-2D)/2 far out
        let m_small = (2.0 * target).sqrt();
        let m_large = (2.0 * target).powf(-1.0 / (2.0 * d));
        let mut x = m_small.max(m_large).ln();
        let mut converged = false;
        for _ in 0..60 {
            let w = -x.exp();
            let v = potential(w, d);
            let vp = potential_deriv(w, d);
            // d/dx ln V(-e^x) = w V'(w) / V(w), positive for w < 0
            let slope = w * vp / v;
            if !(slope.is_finite() && slope != 0.0) {
                break;
            }
            let step = (v.ln() - ln_target) / slope;
            x -= step;
            if !x.is_finite() {
                break;
            }
            if step.abs() < 1e-14 {
                converged = true;
                break;
            }
        }
        let w = if converged {
            -x.exp()
        } else {
            let g = |w: f64| potential(w, d) - target;
            let (lo, hi) = bisect_expand_left(&g, -u)?;
            let seed = bisect_on(&g, lo, hi, 1e-14)?;
            newton_polish(&g, |x| potential_deriv(x, d), seed, 1e-14)
        };
        let sp = vp_of(u, s, d) / potential_deriv(w, d);
        Ok((w, sp))
    }
}

/// Newton refinement of `s = 1 - u₊` in logarithmic coordinates, where
/// `V(1-s) = h` stays well conditioned however small `s` gets.
fn refine_boundary_distance(h: f64, d: f64, s_seed: f64) -> Result<f64> {
    let mut s = s_seed.clamp(1e-300, 1.0 - 1e-16);
    if s > 1e-6 {
        return Ok(s);
    }
    // F(ln s) = ln(1/2) + 2 ln(1-s) - 2(D+1) ln s - ln h
    for _ in 0..80 {
        let f = (0.5_f64).ln() + 2.0 * (-s).ln_1p() - 2.0 * (d + 1.0) * s.ln() - h.ln();
        let df = -2.0 * s / (1.0 - s) - 2.0 * (d + 1.0);
        let step = f / df;
        let next = (s.ln() - step).exp();
        if !(next > 0.0 && next < 1.0) {
            break;
        }
        let done = (next.ln() - s.ln()).abs() < 1e-15;
        s = next;
        if done {
            return Ok(s);
        }
    }
    if s > 0.0 && s < 1.0 {
        Ok(s)
    } else {
        Err(DynError::ConvergenceFailure("boundary distance refinement"))
    }
}

fn integrate_level<K>(h: f64, d: f64, rel_tol: f64, kernel: K) -> Result<(f64, f64)>
where
    K: Fn(FoldPoint) -> f64,
{
    let geo = LevelGeometry::new(h, d)?;
    let f = |phi: f64| {
        let (u, s, dp, cos_phi) = geo.coords(phi);
        let two_gap = geo.two_gap(u, s, dp);
        let root = two_gap.sqrt();
        let (sigma, sigma_prime) = match geo.sigma(u, s) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        geo.rho
            * cos_phi
            * kernel(FoldPoint {
                u,
                s,
                sigma,
                sigma_abs_slope: -sigma_prime,
                root,
            })
    };
    // coarse pass to scale the absolute tolerance
    let (coarse, _) = gauss_kronrod_adaptive(&f, -FRAC_PI_2, FRAC_PI_2, 1.0, 32)?;
    let abs_tol = rel_tol * coarse.abs().max(1e-12);
    let (val, err) = gauss_kronrod_adaptive(&f, -FRAC_PI_2, FRAC_PI_2, abs_tol, 4000)?;

    if err <= 10.0 * abs_tol.max(rel_tol * val.abs()) {
        return Ok((val, err));
    }
    // endpoint-stiff case: double-exponential nodes cluster where needed
    let (v2, e2) = tanh_sinh(&f, -FRAC_PI_2, FRAC_PI_2, rel_tol)?;
    if e2 < err {
        Ok((v2, e2))
    } else {
        Ok((val, err))
    }
}

/// One folded sample: the point `u ∈ (0, u₊)` with boundary distance
/// `s = 1 - u`, its involution image `σ(u) < 0`, the positive slope
/// `|σ'(u)|`, and `√(2(h - V(u)))`.
struct FoldPoint {
    u: f64,
    s: f64,
    sigma: f64,
    sigma_abs_slope: f64,
    root: f64,
}

/// Period `T(h) = ∮ ℓ(u)/v du` over the level cycle, to relative
/// accuracy near `rel_tol`; returns `(value, error estimate)`.
pub fn period_quadrature_tol(h: EnergyLevel, d: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let h = h.value();
    integrate_level(h, d, rel_tol, |p| {
        let ell_u = p.s.powf(-(d + 2.0));
        let ell_s = (1.0 - p.sigma).powf(-(d + 2.0));
        2.0 * (ell_u + ell_s * p.sigma_abs_slope) / p.root
    })
}

pub fn period_quadrature(h: EnergyLevel, d: f64) -> Result<f64> {
    Ok(period_quadrature_tol(h, d, 1e-11)?.0)
}

/// `(T, I, A)` over the same cycle with one quadrature engine:
/// `A = ∮ ℓ v du`-type and `I = ∮ u(1-u)^(-3(D+1))/v du`-type integrals,
/// positively oriented so that `A' = T` and `2hT' + I'/(D+1) = 0`.
pub fn abelian_triple(h: EnergyLevel, d: f64) -> Result<(f64, f64, f64)> {
    let hv = h.value();
    let (t, _) = integrate_level(hv, d, 1e-11, |p| {
        let ell_u = p.s.powf(-(d + 2.0));
        let ell_s = (1.0 - p.sigma).powf(-(d + 2.0));
        2.0 * (ell_u + ell_s * p.sigma_abs_slope) / p.root
    })?;
    let (a, _) = integrate_level(hv, d, 1e-11, |p| {
        let ell_u = p.s.powf(-(d + 2.0));
        let ell_s = (1.0 - p.sigma).powf(-(d + 2.0));
        2.0 * (ell_u + ell_s * p.sigma_abs_slope) * p.root
    })?;
    let (i, _) = integrate_level(hv, d, 1e-11, |p| {
        let g_u = p.u * p.s.powf(-3.0 * (d + 1.0));
        let g_s = p.sigma * (1.0 - p.sigma).powf(-3.0 * (d + 1.0));
        2.0 * (g_u + g_s * p.sigma_abs_slope) / p.root
    })?;
    Ok((t, i, a))
}
