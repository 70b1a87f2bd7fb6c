pub mod closed_form;
pub mod error;
pub mod euler_sums;
pub mod gamma;
pub mod gr_table;
pub mod half_line;
pub mod pipoly;
pub mod precision;
pub mod quadrature;
pub mod rational;
pub mod recurrence;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use pipoly::PiPoly;
pub use precision::PrecisionFloat;
pub use rational::Rational;
pub use report::VerificationReport;
