//! Exact symbolic verification engine for the kappa-deformed Poincare group
//! and algebra, their Hopf pairing, the infinitesimal induced representation
//! on the mass hyperboloid, and the kappa-Minkowski calculus.
//!
//! Everything is exact: scalars are fractions over Gaussian rationals in the
//! formal symbols `k`, `m`, `c = cosh(m/k)`, `s = sinh(m/k)` (plus momentum
//! symbols), and every check in the verification suites is a hard equality.

pub mod duality;
pub mod hopfcore;
pub mod indrep;
pub mod kalgebra;
pub mod kgroup;
pub mod kminkowski;
pub mod metric;
pub mod report;
pub mod scalars;

pub use scalars::{Coefficient, Gauss, Poly, ScalarError, Var};
