//! Numerical laboratory for Bohr-type inequalities on the unit disk.

// `!(x >= lo)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod functionals;
pub mod harmonic;
pub mod lemmas;
pub mod radius;
pub mod scalar;
pub mod series;
pub mod suites;
pub mod theorems;

pub use error::{BohrError, Result};
pub use scalar::Scalar;

pub type Series = series::CoefficientSeries<f64>;
pub type Descriptor = functionals::FunctionalDescriptor<f64>;
pub type Equation = radius::RadiusEquation<f64>;
