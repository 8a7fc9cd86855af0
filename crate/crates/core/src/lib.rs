//! Power-series inversion, polynomial deflation and quadratic inversion in
//! binary64, with their a-priori rounding-error and conditioning bounds and an
//! extended-precision oracle to measure actual errors against.

pub mod bounds;
pub mod cli;
pub mod complex;
pub mod deflation;
pub mod error;
pub mod experiments;
pub mod ext;
pub mod io;
pub mod polynomial;
pub mod precision;
pub mod pseudozero;
pub mod quadratic;
pub mod report;
pub mod real;
pub mod series;
pub mod thresholds;

pub use complex::Cx;
pub use error::{Error, Result};
pub use ext::Ext;
pub use precision::PrecisionContext;
pub use real::Real;
pub use series::{PowerSeries, NamedSeries};
pub use polynomial::{Polynomial, RootSet};
