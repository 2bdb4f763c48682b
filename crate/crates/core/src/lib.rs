//! Exact tools for algebraic differences of Cantor sets.

pub mod central;
pub mod digitset;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod scantor;

pub use error::{Error, Result};
pub use numerics::{Gap, Interval, IntervalUnion, Rational};
