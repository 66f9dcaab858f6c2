//! Exact computer algebra for (q,t)-deformed lattice-path operators on
//! symmetric functions.
//!
//! Everything is computed over the fraction field Q(q,t) with arbitrary
//! precision integer coefficients, so all identity checks are exact:
//!
//! - [`qt`]: the coefficient field Q(q,t) as reduced fractions of sparse
//!   bivariate integer polynomials.
//! - [`partition`]: integer partitions, dominance order, `z_lambda`.
//! - [`symfunc`]: sparse symmetric functions in the p/m/e/h/s bases with
//!   Hall and star scalar products, plethystic scalings and skewing.
//! - [`linop`]: graded linear operators stored as per-degree matrices, with
//!   composition, commutators and star adjoints.
//! - [`paths`]: alternating lattice paths and the path operators `R_beta` /
//!   `Q_alpha`, with interchangeable evaluation engines.
//! - [`laurent`]: truncated multivariate Laurent series and the normal-ordered
//!   coefficient-extraction formulas.
//! - [`macdonald`]: modified Macdonald polynomials via the `D_0` eigenproblem,
//!   Pieri support, and the diagonal Delta/Pi operators.
//! - [`tau`]: the weighted (q,t)-tau function, its differential equations,
//!   the operator-generated basis, and the extended delta identity.
//! - [`verify`]: executable identity suites with machine-readable reports.

pub mod error;
pub mod json;
mod la;
pub mod laurent;
pub mod linop;
pub mod macdonald;
pub mod partition;
pub mod paths;
pub mod qt;
pub mod symfunc;
pub mod tau;
pub mod verify;

pub use error::{Error, Result};
pub use linop::GradedOperator;
pub use macdonald::{MacData, WeightSpec};
pub use partition::Partition;
pub use paths::AltPath;
pub use qt::QtScalar;
pub use symfunc::{Basis, SymFunc};
pub use tau::TensorSeries;
