//! Periods by direct simulation: Poincaré return maps for the Loud plane
//! and angular return for the equivariant family.

use std::f64::consts::PI;

use crate::error::{DynError, Result};
use crate::fields::{loud_field, zk_field};
use crate::ode::{return_time, OdeOptions, RaySection, State};
use crate::params::{Chart, LoudParams, PlanarState, ZkParams};

#[derive(Debug, Clone, Copy)]
pub enum SystemSpec {
    Loud(LoudParams),
    /// Must be normalized (`a = 1`); callers run `normalize_zk` first.
    Zk(ZkParams),
}

/// Minimal period of the orbit through `start`.
///
/// Loud systems return to the half-line section through the start; the
/// equivariant family integrates the polar field from `θ = 0` to
/// `θ = 2π/k` and multiplies the transit time by `k`.
pub fn period_returnmap(sys: &SystemSpec, start: &PlanarState, opts: &OdeOptions) -> Result<f64> {
    match sys {
        SystemSpec::Loud(p) => {
            if start.chart != Chart::Loud {
                return Err(DynError::DomainError("expected a Loud-chart start"));
            }
            let f = |y: &State| loud_field(p, y);
            let section = RaySection::through(&start.c)?;
            return_time(&f, &start.c, &section, opts)
        }
        SystemSpec::Zk(p) => {
            if !p.is_normalized() {
                return Err(DynError::NotNormalized);
            }
            let rho = match start.chart {
                Chart::Polar => {
                    if start.c[1] != 0.0 {
                        return Err(DynError::DomainError("start on the section θ = 0"));
                    }
                    start.c[0]
                }
                Chart::Complex => {
                    if start.c[1] != 0.0 {
                        return Err(DynError::DomainError("start on the positive real axis"));
                    }
                    start.c[0]
                }
                _ => return Err(DynError::DomainError("expected a polar or complex start")),
            };
            if !(rho > 0.0) {
                return Err(DynError::DomainError("radius must be positive"));
            }
            let t = zk_sector_time(p, rho, opts)?;
            Ok(p.k as f64 * t)
        }
    }
}

/// Time for the polar orbit through `(ρ, 0)` to advance from `θ = 0` to
/// `θ = 2π/k`. The angle is strictly increasing inside the period
/// annulus, so the event is a monotone crossing.
fn zk_sector_time(p: &ZkParams, rho: f64, opts: &OdeOptions) -> Result<f64> {
    let f = move |y: &State| zk_field(p, y).expect("normalized");
    let target = 2.0 * PI / p.k as f64;
    let mut t = 0.0;
    let mut y: State = [rho, 0.0];
    let mut h: f64 = 1e-6;
    let mut steps: u64 = 0;
    loop {
        steps += 1;
        if steps > opts.max_steps {
            return Err(DynError::MaxTimeExceeded);
        }
        let deriv = f(&y);
        if deriv[1] <= 1e-12 {
            // winding stalls only outside the period annulus
            return Err(DynError::EscapedAnnulus);
        }
        let y_prev = y;
        let t_prev = t;
        let (t_new, y_new, h_used, h_next) = crate::ode::accept_step(&f, t, &y, h, opts)?;
        t = t_new;
        y = y_new;
        h = h_next;
        if y[0].abs() > opts.bound {
            return Err(DynError::EscapedAnnulus);
        }
        if t > opts.t_max {
            return Err(DynError::MaxTimeExceeded);
        }
        if y[1] >= target {
            // refine θ(dt) = target by bisection on a partial step
            let g = |dt: f64| -> f64 {
                if dt == 0.0 {
                    return y_prev[1] - target;
                }
                let (ys, _) = crate::ode::dp54_step(&f, &y_prev, dt);
                ys[1] - target
            };
            let dt = crate::roots::bisect_on(&g, 0.0, h_used, 1e-15)?;
            return Ok(t_prev + dt);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{asymptotic_period_zk, map_zk_orbit, zk_to_loud};
    use crate::params::EnergyLevel;
    use crate::period::period_quadrature;

    fn opts() -> OdeOptions {
        OdeOptions::default()
    }

    #[test]
    fn small_loud_orbit_is_near_two_pi() {
        // T(ρ) = 2π + P₂ρ² + O(ρ³); at ρ = 1e-4 the quadratic term sits
        // well under the 1e-4·ρ linearization envelope
        let p = LoudParams::on_line(-0.3).unwrap();
        let rho = 1e-4;
        let t = period_returnmap(&SystemSpec::Loud(p), &PlanarState::loud(rho, 0.0), &opts())
            .unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-4 * rho, "t={t}");
    }

    #[test]
    fn d_minus_one_circle_period() {
        // D = -1, F = 0: T(r) = 2π/√(1-r²)
        let p = LoudParams::new(-1.0, 0.0).unwrap();
        let t = period_returnmap(&SystemSpec::Loud(p), &PlanarState::loud(0.6, 0.0), &opts())
            .unwrap();
        assert!((t - 2.0 * PI / 0.8).abs() < 1e-8, "t={t}");
    }

    #[test]
    fn zk_small_orbit_and_limit_direction() {
        let p = ZkParams::normalized(1, 1);
        let t = period_returnmap(
            &SystemSpec::Zk(p),
            &PlanarState::polar(1e-3, 0.0).unwrap(),
            &opts(),
        )
        .unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-6);
        // large orbits approach 2(k+n)π/(k+2n) from above, decreasing
        let t_big = period_returnmap(
            &SystemSpec::Zk(p),
            &PlanarState::polar(8.0, 0.0).unwrap(),
            &opts(),
        )
        .unwrap();
        let lim = asymptotic_period_zk(1, 1);
        assert!(t_big > lim && t_big < t, "t_big={t_big} lim={lim}");
    }

    #[test]
    fn zk_period_equals_loud_period_through_the_map() {
        // (n,k) = (1,1), ρ = 0.5; compare against the Loud return map and
        // the quadrature engine through the potential chart
        let zk = ZkParams::normalized(1, 1);
        let rho = 0.5;
        let t_zk = period_returnmap(
            &SystemSpec::Zk(zk),
            &PlanarState::polar(rho, 0.0).unwrap(),
            &opts(),
        )
        .unwrap();
        let (loud, _) = zk_to_loud(1, 1).unwrap();
        let (start, factor) = map_zk_orbit(&zk, rho).unwrap();
        let t_loud =
            period_returnmap(&SystemSpec::Loud(loud), &start, &opts()).unwrap() * factor;
        assert!(
            (t_zk - t_loud).abs() < 1e-8 * t_loud,
            "t_zk={t_zk} t_loud={t_loud}"
        );
        // chart chain into the potential plane: u = x, v = y(1-x)^-(D+1);
        // the start (0, y0) keeps v = y0, so h = v²/2
        let h = 0.5 * start.c[1] * start.c[1];
        let t_quad = period_quadrature(EnergyLevel::new(h).unwrap(), loud.d).unwrap();
        assert!(
            (t_zk - t_quad).abs() < 1e-7 * t_quad,
            "t_zk={t_zk} t_quad={t_quad}"
        );
    }
}
