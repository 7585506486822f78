//! Parameter records, chart-tagged planar states and sampled period curves.

use num_complex::Complex64;
use std::fmt;

use crate::error::{DynError, Result};

/// Reversible quadratic family `x' = -y + xy, y' = x + D x^2 + F y^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoudParams {
    pub d: f64,
    pub f: f64,
}

impl LoudParams {
    pub fn new(d: f64, f: f64) -> Result<Self> {
        if d.is_finite() && f.is_finite() {
            Ok(Self { d, f })
        } else {
            Err(DynError::DomainError("Loud parameters must be finite"))
        }
    }

    /// The distinguished sub-family `F = D + 1`.
    pub fn on_line(d: f64) -> Result<Self> {
        Self::new(d, d + 1.0)
    }

    pub fn is_on_line(&self) -> bool {
        (self.f - (self.d + 1.0)).abs() <= 1e-14 * (1.0 + self.f.abs())
    }
}

/// Equivariant family `z' = i z + a (z z̄)^n z^(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZkParams {
    pub n: u32,
    pub k: u32,
    pub a: Complex64,
}

impl ZkParams {
    pub fn new(n: u32, k: u32, a: Complex64) -> Result<Self> {
        if a.norm_sqr() == 0.0 {
            return Err(DynError::ZeroCoefficient);
        }
        if n + k == 0 {
            return Err(DynError::DomainError("n + k must be at least 1"));
        }
        Ok(Self { n, k, a })
    }

    pub fn normalized(n: u32, k: u32) -> Self {
        Self {
            n,
            k,
            a: Complex64::new(1.0, 0.0),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.a == Complex64::new(1.0, 0.0)
    }
}

/// Positive energy level labelling the orbit `γ_h ⊂ {H = h}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EnergyLevel(f64);

impl EnergyLevel {
    pub fn new(h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 {
            Ok(Self(h))
        } else {
            Err(DynError::DomainError("energy level must be positive"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The coordinate charts used along the transformation chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// complex `z`, stored as (Re z, Im z)
    Complex,
    /// polar `(r, θ)`, `r ≥ 0`
    Polar,
    /// `(R, Θ) = (r^(2n+k), kθ)`
    RadialPower,
    /// intermediate cartesian `(X, Y)`
    XY,
    /// Loud plane `(x, y)`
    Loud,
    /// potential chart `(u, v)`, `u < 1`
    Potential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarState {
    pub chart: Chart,
    pub c: [f64; 2],
}

impl PlanarState {
    pub fn new(chart: Chart, a: f64, b: f64) -> Result<Self> {
        let ok = match chart {
            Chart::Polar | Chart::RadialPower => a >= 0.0,
            Chart::Potential => a < 1.0,
            _ => true,
        };
        if ok && a.is_finite() && b.is_finite() {
            Ok(Self { chart, c: [a, b] })
        } else {
            Err(DynError::DomainError("coordinates out of chart range"))
        }
    }

    pub fn loud(x: f64, y: f64) -> Self {
        Self::new(Chart::Loud, x, y).expect("finite")
    }

    pub fn polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Chart::Polar, r, theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    ReturnMap,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Quadrature => "quadrature",
            Method::ReturnMap => "returnmap",
            Method::ClosedForm => "closedform",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodPoint {
    pub param: f64,
    pub period: f64,
    pub method: Method,
    pub err_estimate: f64,
}

/// Sampled `(parameter, period)` table with strictly increasing parameters
/// and positive periods.
#[derive(Debug, Clone, Default)]
pub struct PeriodCurve {
    points: Vec<PeriodPoint>,
}

impl PeriodCurve {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, p: PeriodPoint) -> Result<()> {
        if !(p.period > 0.0) || !p.param.is_finite() {
            return Err(DynError::BadCurvePoint);
        }
        if let Some(last) = self.points.last() {
            if p.param <= last.param {
                return Err(DynError::BadCurvePoint);
            }
        }
        self.points.push(p);
        Ok(())
    }

    pub fn points(&self) -> &[PeriodPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the first adjacent pair violating strict decrease, if any.
    pub fn first_increase(&self) -> Option<usize> {
        self.points
            .windows(2)
            .position(|w| w[1].period >= w[0].period)
    }

    /// Index of the first adjacent pair violating strict increase, if any.
    pub fn first_decrease(&self) -> Option<usize> {
        self.points
            .windows(2)
            .position(|w| w[1].period <= w[0].period)
    }

    /// CSV with header `param,period,method,err_estimate`, 17 significant
    /// digits, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,period,method,err_estimate\n");
        for p in &self.points {
            out.push_str(&format!(
                "{:.16e},{:.16e},{},{:.16e}\n",
                p.param, p.period, p.method, p.err_estimate
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_rejects_non_increasing_params() {
        let mut c = PeriodCurve::new();
        let mk = |param, period| PeriodPoint {
            param,
            period,
            method: Method::Quadrature,
            err_estimate: 0.0,
        };
        c.push(mk(0.1, 6.0)).unwrap();
        assert_eq!(c.push(mk(0.1, 6.0)), Err(DynError::BadCurvePoint));
        assert_eq!(c.push(mk(0.05, 6.0)), Err(DynError::BadCurvePoint));
        c.push(mk(0.2, 5.5)).unwrap();
        assert_eq!(c.push(mk(0.3, -1.0)), Err(DynError::BadCurvePoint));
        assert_eq!(c.first_increase(), None);
        assert_eq!(c.first_decrease(), Some(0));
    }

    #[test]
    fn csv_has_17_significant_digits() {
        let mut c = PeriodCurve::new();
        c.push(PeriodPoint {
            param: 0.1,
            period: std::f64::consts::TAU,
            method: Method::ReturnMap,
            err_estimate: 1e-12,
        })
        .unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("param,period,method,err_estimate\n"));
        assert!(csv.contains("6.2831853071795862e0"));
        assert!(csv.contains("returnmap"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn chart_ranges_enforced() {
        assert!(PlanarState::polar(-0.1, 0.0).is_err());
        assert!(PlanarState::new(Chart::Potential, 1.0, 0.0).is_err());
        assert!(PlanarState::new(Chart::Potential, 0.5, -2.0).is_ok());
    }
}
