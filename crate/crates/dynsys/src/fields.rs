//! The two ODE families, the coordinate chain between them, closed-form
//! periods, the first period constant and the boundary limits.

#[cfg(test)]
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{DynError, Result};
use crate::ode::State;
use crate::params::{Chart, LoudParams, PlanarState, ZkParams};

/// Loud vector field `(-y + xy, x + Dx² + Fy²)`.
pub fn loud_field(p: &LoudParams, s: &State) -> State {
    let (x, y) = (s[0], s[1]);
    [-y + x * y, x + p.d * x * x + p.f * y * y]
}

/// Normalized (`a = 1`) equivariant field in polar coordinates:
/// `(r' , θ') = (r^(2n+k+1) cos kθ, 1 + r^(2n+k) sin kθ)`.
pub fn zk_field(p: &ZkParams, s: &State) -> Result<State> {
    if !p.is_normalized() {
        return Err(DynError::NotNormalized);
    }
    let (r, theta) = (s[0], s[1]);
    let m = (2 * p.n + p.k) as i32;
    let kt = p.k as f64 * theta;
    Ok([r.powi(m + 1) * kt.cos(), 1.0 + r.powi(m) * kt.sin()])
}

/// Rotation–scaling `z = λ e^(iμ) w` reducing the coefficient to `a = 1`:
/// `λ = |a|^(-1/(2n+k))`, `μ = -arg(a)/k`. Periods of corresponding
/// orbits are equal; there is no time rescaling.
pub fn normalize_zk(p: &ZkParams) -> Result<(f64, f64, ZkParams)> {
    if p.a.norm_sqr() == 0.0 {
        return Err(DynError::ZeroCoefficient);
    }
    if p.k == 0 {
        return Err(DynError::DomainError("normalization requires k >= 1"));
    }
    let m = (2 * p.n + p.k) as f64;
    let lambda = p.a.norm().powf(-1.0 / m);
    let mu = -p.a.arg() / p.k as f64;
    Ok((lambda, mu, ZkParams::normalized(p.n, p.k)))
}

/// Loud parameters reached by the equivariant family:
/// `D = -k/(2(k+n))`, `F = D + 1`, together with `b = 1 + 2n/k`.
pub fn zk_to_loud(n: u32, k: u32) -> Result<(LoudParams, f64)> {
    if n == 0 || k == 0 {
        return Err(DynError::DomainError("transformation requires n, k >= 1"));
    }
    let d = -(k as f64) / (2.0 * (k + n) as f64);
    let b = 1.0 + 2.0 * n as f64 / k as f64;
    Ok((LoudParams { d, f: d + 1.0 }, b))
}

/// Loud start point of the orbit through `z = ρ`: the chain
/// `(r,θ) → (R,Θ) = (r^(2n+k), kθ) → (X,Y) → (x,y) = (-(1+b)Y, -(1+b)X)`
/// sends it to `(0, -(1+b)ρ^(2n+k))`; the time factor across the whole
/// chain is exactly 1 (`τ = kt` then the orbit closes after `k` turns).
pub fn map_zk_orbit(p: &ZkParams, rho: f64) -> Result<(PlanarState, f64)> {
    if !p.is_normalized() {
        return Err(DynError::NotNormalized);
    }
    if !(rho >= 0.0) {
        return Err(DynError::DomainError("radius must be nonnegative"));
    }
    if p.k == 0 {
        return Err(DynError::DomainError("orbit map requires k >= 1"));
    }
    let b = 1.0 + 2.0 * p.n as f64 / p.k as f64;
    let big_r = rho.powi((2 * p.n + p.k) as i32);
    let y = -(1.0 + b) * big_r;
    Ok((PlanarState::new(Chart::Loud, 0.0, y)?, 1.0))
}

/// First period constant of the Loud family:
/// `P₂ = π/12 (10D² + 10DF - D + 4F² - 5F + 1)`; on the line `F = D+1`
/// this collapses to `π D(2D+1)`.
pub fn p2_constant(d: f64, f: f64) -> f64 {
    PI / 12.0 * (10.0 * d * d + 10.0 * d * f - d + 4.0 * f * f - 5.0 * f + 1.0)
}

/// Boundary limit of the Loud period function on the line `F = D+1`:
/// `π/(D+1)` for `D ∈ (-1,0)`, infinite at `D = -1` and beyond the
/// segment (homoclinic boundary).
pub fn asymptotic_period_loud(d: f64) -> f64 {
    if d > -1.0 && d < 0.0 {
        PI / (d + 1.0)
    } else {
        f64::INFINITY
    }
}

/// Boundary limit of the equivariant period: `2(k+n)π/(k+2n)`.
pub fn asymptotic_period_zk(n: u32, k: u32) -> f64 {
    2.0 * (k + n) as f64 * PI / (k + 2 * n) as f64
}

/// Closed-form periods for the two degenerate parameter cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormCase {
    /// `D = -1`: circles of radius `r`, `T = 2π/√(1-r²)`.
    DMinusOne { r: f64 },
    /// `k = 0`, `a = αi`: `T = 2π/(1 + α uⁿ)` with `u = z z̄`.
    KZero { alpha: f64, n: u32, u: f64 },
}

pub fn closed_form_period(case: ClosedFormCase) -> Result<f64> {
    match case {
        ClosedFormCase::DMinusOne { r } => {
            if !(0.0..1.0).contains(&r) {
                return Err(DynError::DomainError("radius must lie in [0, 1)"));
            }
            Ok(2.0 * PI / (1.0 - r * r).sqrt())
        }
        ClosedFormCase::KZero { alpha, n, u } => {
            if n == 0 {
                return Err(DynError::DomainError("k = 0 closed form needs n >= 1"));
            }
            if !(u >= 0.0) {
                return Err(DynError::DomainError("u = z z̄ must be nonnegative"));
            }
            let denom = 1.0 + alpha * u.powi(n as i32);
            if denom <= 0.0 {
                return Err(DynError::DomainError(
                    "boundary of the period annulus (equilibria)",
                ));
            }
            Ok(2.0 * PI / denom)
        }
    }
}

/// The affine change sending the second center `(-1/D, 0)` to the origin:
/// parameters become `(-1-D, F)`, time is scaled by `√(-D/(D+1))`, and
/// the second center's period starts at `2π√(-D/(D+1))`.
#[derive(Debug, Clone, Copy)]
pub struct SecondCenter {
    pub image: LoudParams,
    pub timefactor: f64,
    pub startperiod: f64,
    /// Branchwise comparison of `2π`, the start period, and `π/(D+1)`
    /// (strict on both branches, equalities at `D = -1/2`).
    pub chain_holds: bool,
}

pub fn second_center_transform(p: &LoudParams) -> Result<SecondCenter> {
    let d = p.d;
    if !(d > -1.0 && d < 0.0) {
        return Err(DynError::DomainError("second center exists for D in (-1,0)"));
    }
    let ratio = (-d / (d + 1.0)).sqrt();
    let startperiod = 2.0 * PI * ratio;
    let boundary = PI / (d + 1.0);
    let two_pi = 2.0 * PI;
    let tol = 1e-12 * boundary.abs().max(two_pi);
    let chain_holds = if (d + 0.5).abs() < 1e-14 {
        (startperiod - two_pi).abs() <= tol && (boundary - two_pi).abs() <= tol
    } else if d < -0.5 {
        two_pi < startperiod && startperiod < boundary
    } else {
        startperiod < boundary && boundary < two_pi
    };
    Ok(SecondCenter {
        image: LoudParams { d: -1.0 - d, f: p.f },
        timefactor: ratio,
        startperiod,
        chain_holds,
    })
}

/// Potential-chart field of the transformed system:
/// `u' = -v(1-u)^(D+2)`, `v' = u(1+Du)(1-u)^(-(D+1))`.
pub fn potential_field(d: f64, s: &State) -> State {
    let (u, v) = (s[0], s[1]);
    let om = 1.0 - u;
    [-v * om.powf(d + 2.0), u * (1.0 + d * u) * om.powf(-(d + 1.0))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loud_equilibria() {
        let p = LoudParams::on_line(-0.3).unwrap();
        assert_eq!(loud_field(&p, &[0.0, 0.0]), [0.0, 0.0]);
        // second center at (-1/D, 0)
        let s = [-1.0 / p.d, 0.0];
        let v = loud_field(&p, &s);
        assert!(v[0].abs() < 1e-14 && v[1].abs() < 1e-14);
        // direct substitution at (0, 1) with D=-1/4, F=3/4
        let q = LoudParams::new(-0.25, 0.75).unwrap();
        let v = loud_field(&q, &[0.0, 1.0]);
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn zk_field_values() {
        let p = ZkParams::normalized(1, 1);
        assert_eq!(zk_field(&p, &[0.0, 0.3]).unwrap()[0], 0.0);
        assert_eq!(zk_field(&p, &[0.0, 0.3]).unwrap()[1], 1.0);
        let v = zk_field(&p, &[1.0, 0.0]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
        let v = zk_field(&p, &[1.0, std::f64::consts::FRAC_PI_2]).unwrap();
        assert!(v[0].abs() < 1e-15 && (v[1] - 2.0).abs() < 1e-15);
        let raw = ZkParams::new(1, 1, Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!(zk_field(&raw, &[1.0, 0.0]), Err(DynError::NotNormalized));
    }

    #[test]
    fn normalization_cases() {
        // a = 1: identity
        let p = ZkParams::normalized(2, 3);
        let (l, m, q) = normalize_zk(&p).unwrap();
        assert_eq!((l, m), (1.0, 0.0));
        assert!(q.is_normalized());
        // a = i, n=0, k=1: λ=1, μ=-π/2
        let p = ZkParams::new(0, 1, Complex64::new(0.0, 1.0)).unwrap();
        let (l, m, _) = normalize_zk(&p).unwrap();
        assert!((l - 1.0).abs() < 1e-15);
        assert!((m + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // a = 2, n=1, k=1: λ = 2^(-1/3), μ = 0
        let p = ZkParams::new(1, 1, Complex64::new(2.0, 0.0)).unwrap();
        let (l, m, _) = normalize_zk(&p).unwrap();
        assert!((l - 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(m, 0.0);
    }

    #[test]
    fn zk_to_loud_values() {
        let (p, b) = zk_to_loud(1, 1).unwrap();
        assert!((p.d + 0.25).abs() < 1e-15);
        assert!((b - 3.0).abs() < 1e-15);
        let (p, _) = zk_to_loud(2, 1).unwrap();
        assert!((p.d + 1.0 / 6.0).abs() < 1e-15);
        // D -> -1/2 only as n -> 0; for n >= 1 it stays inside (-1/2, 0)
        for n in 1..6 {
            for k in 1..6 {
                let (p, _) = zk_to_loud(n, k).unwrap();
                assert!(p.d > -0.5 && p.d < 0.0);
            }
        }
    }

    #[test]
    fn orbit_map_examples() {
        let p = ZkParams::normalized(1, 1);
        let (s, factor) = map_zk_orbit(&p, 1.0).unwrap();
        assert_eq!(s.c, [0.0, -4.0]);
        assert_eq!(factor, 1.0);
        let (s, _) = map_zk_orbit(&p, 0.0).unwrap();
        assert_eq!(s.c, [0.0, 0.0]);
    }

    #[test]
    fn p2_values() {
        assert!((p2_constant(-0.25, 0.75) + PI / 8.0).abs() < 1e-15);
        assert!(p2_constant(-0.5, 0.5).abs() < 1e-15);
        // line simplification: πD(2D+1)
        for d in [-0.4, -0.25, -0.1] {
            let full = p2_constant(d, d + 1.0);
            let line = PI * d * (2.0 * d + 1.0);
            assert!((full - line).abs() < 1e-14, "d={d}");
        }
    }

    #[test]
    fn asymptotics() {
        assert!((asymptotic_period_loud(-0.25) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!(asymptotic_period_loud(-1.0).is_infinite());
        assert!(asymptotic_period_loud(0.5).is_infinite());
        let zk = asymptotic_period_zk(1, 1);
        assert!((zk - 4.0 * PI / 3.0).abs() < 1e-14);
        // consistency with the parameter map
        let (p, _) = zk_to_loud(1, 1).unwrap();
        assert!((asymptotic_period_loud(p.d) - zk).abs() < 1e-12);
    }

    #[test]
    fn closed_forms() {
        assert!((closed_form_period(ClosedFormCase::DMinusOne { r: 0.0 }).unwrap()
            - 2.0 * PI)
            .abs()
            < 1e-15);
        let t = closed_form_period(ClosedFormCase::DMinusOne {
            r: 3f64.sqrt() / 2.0,
        })
        .unwrap();
        assert!((t - 4.0 * PI).abs() < 1e-12);
        assert!(closed_form_period(ClosedFormCase::DMinusOne { r: 1.0 }).is_err());
        let t = closed_form_period(ClosedFormCase::KZero {
            alpha: 1.0,
            n: 1,
            u: 1.0,
        })
        .unwrap();
        assert!((t - PI).abs() < 1e-15);
        assert!(closed_form_period(ClosedFormCase::KZero {
            alpha: -1.0,
            n: 2,
            u: 1.0,
        })
        .is_err());
    }

    #[test]
    fn second_center_cases() {
        let sc = second_center_transform(&LoudParams::on_line(-0.5).unwrap()).unwrap();
        assert!((sc.image.d + 0.5).abs() < 1e-15);
        assert!((sc.timefactor - 1.0).abs() < 1e-15);
        assert!((sc.startperiod - 2.0 * PI).abs() < 1e-12);
        assert!(sc.chain_holds);

        let sc = second_center_transform(&LoudParams::on_line(-0.25).unwrap()).unwrap();
        assert!((sc.image.d + 0.75).abs() < 1e-15);
        assert!((sc.startperiod - 2.0 * PI / 3f64.sqrt()).abs() < 1e-12);
        assert!(sc.chain_holds);

        // the parameter map is an involution
        let twice = second_center_transform(&sc.image).unwrap();
        assert!((twice.image.d + 0.25).abs() < 1e-14);

        // increasing branch ordering
        let sc = second_center_transform(&LoudParams::on_line(-0.75).unwrap()).unwrap();
        assert!(sc.chain_holds);
    }
}
