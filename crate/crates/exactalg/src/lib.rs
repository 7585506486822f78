//! Exact rational arithmetic and polynomial algebra over `Q[u, w, D]`:
//! ring operations, exact division, Sylvester resultants (direct and by
//! evaluation–interpolation), discriminants, square-free decomposition,
//! Sturm sequences and certified real-root isolation.
//!
//! Everything in this crate is exact; floating point never participates in
//! a decision. All operations are pure functions of their inputs and safe
//! to call concurrently.

mod error;
pub mod mpoly;
pub mod rational;
pub mod resultant;
pub mod squarefree;
pub mod sturm;
pub mod textfmt;
pub(crate) mod uni;

pub use error::{ExactError, Result};
pub use mpoly::{Exponents, MPoly, Var};
pub use rational::{int, parse_rational, pow_rational, rat, sqrt_enclosure, IntervalQ, Rational};
pub use resultant::{
    discriminant, discriminant_interpolated, interpolated_resultant, resultant,
    resultant_cancellable, resultant_univariate,
};
pub use squarefree::squarefree_decomposition;
pub use sturm::{cauchy_bound, isolate_roots, refine_root, sturm_count, SturmSeq};
