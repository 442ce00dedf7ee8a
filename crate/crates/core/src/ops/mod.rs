//! Differential operators in theta form and d/dx form, the recurrence
//! correspondence, Calabi-Yau condition checks and the mirror transform.

mod dform;
mod expr;
mod recurrence;
mod theta;

pub use dform::{DOperator, RatFunc};
pub use recurrence::Recurrence;
pub use theta::ThetaOperator;
