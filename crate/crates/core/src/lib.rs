//! Exact computer algebra for Calabi-Yau type differential operators.

pub mod catalog;
pub mod congruence;
pub mod error;
pub mod exact;
pub mod fit;
pub mod frobenius;
pub mod laurent;
pub mod ops;
pub mod pullback;
pub mod sequences;

pub use error::{Error, Result};
pub use ops::{DOperator, Recurrence, ThetaOperator};
