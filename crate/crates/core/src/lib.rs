//! Rigid quadrangulations of the disk.
//!
//! The crate provides
//! - labelled binary trees (partition trees and their H, pre-Q and Q subclasses)
//!   together with the path bijections between them ([`tree`]),
//! - half-edge rigid quadrangulations with validation, ray tracing and side
//!   typing ([`map`]),
//! - the recursive bijection between H-trees and rigid quadrangulations,
//!   built on minimal submaps and gluing ([`bijection`]),
//! - truncated formal power series for every generating function involved
//!   ([`series`]),
//! - exhaustive enumeration and seeded uniform sampling ([`enumerate`]),
//! - JSON and SVG input/output ([`render`]).

pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod map;
pub mod render;
pub mod series;
pub mod tree;

pub use error::{Error, Result};
pub use map::RigidQuadMap;
pub use tree::{PartitionTree, TreeClass};

/// Exact rational scalars used by the generating-function code.
pub type Rational = num_rational::BigRational;
/// Univariate series with exact rational coefficients.
pub type Series = series::UniSeries<Rational>;
/// Series in `t` with polynomial coefficients in `x` and `y`, exact.
pub type Series3 = series::TriSeries<Rational>;
/// Univariate series with `f64` coefficients.
pub type SeriesF64 = series::UniSeries<f64>;
/// Univariate series with `f32` coefficients.
pub type SeriesF32 = series::UniSeries<f32>;
