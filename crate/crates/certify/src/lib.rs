//! Exact algebraic certificate that the period function of the
//! distinguished reversible quadratic sub-family is monotonous on each
//! parameter branch. The certificate replays a chain of polynomial
//! identities — comparison-curve elimination, discriminant factor
//! analysis, Sturm counts on validated rational samples, and rational
//! bounding polynomials at the discriminant roots — entirely in exact
//! arithmetic, and emits a machine-readable verdict tree.

pub mod pipeline;
pub mod polys;
pub mod report;
pub mod steps;

pub use pipeline::{certify_theorem_b, certify_theorem_b_full, emit_polys, CertifyOutcome};
pub use report::{Branch, CertificateReport, StepReport, Verdict};
pub use steps::CertifyConfig;
