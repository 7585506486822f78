//! Planar dynamics of the reversible quadratic (Loud) family and the
//! equivariant family with homogeneous nonlinearities: vector fields, the
//! coordinate chain between them, period functions by quadrature and by
//! return map, Abelian integrals, the potential involution and the
//! monotonicity-criterion operator.
//!
//! Everything here is floating point (binary64). Certified claims live in
//! the exact-arithmetic crates; this one supplies the numerics they are
//! checked against. All operations are pure and reentrant.

mod error;
pub mod fields;
pub mod ode;
pub mod params;
pub mod period;
pub mod potential;
pub mod quad;
pub mod returnmap;
pub(crate) mod roots;

pub use error::{DynError, Result};
pub use fields::{
    asymptotic_period_loud, asymptotic_period_zk, closed_form_period, loud_field, map_zk_orbit,
    normalize_zk, p2_constant, potential_field, second_center_transform, zk_field, zk_to_loud,
    ClosedFormCase, SecondCenter,
};
pub use ode::{integrate_orbit, orbit_csv, return_crossing, return_time, OdeOptions, RaySection, State};
pub use params::{
    Chart, EnergyLevel, LoudParams, Method, PeriodCurve, PeriodPoint, PlanarState, ZkParams,
};
pub use period::{abelian_triple, period_quadrature, period_quadrature_tol};
pub use potential::{
    criterion_f, curve_f1, curve_f2, curve_gap, integrating_factor, involution_sigma, pi_sigma,
    potential, potential_deriv, potential_terms, psi_one, psi_two, turning_points, w_star,
};
pub use quad::{gauss_kronrod_adaptive, tanh_sinh};
pub use returnmap::{period_returnmap, SystemSpec};
