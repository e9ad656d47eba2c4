pub mod cli;
pub mod coeff;
pub mod error;
pub mod fixture;
pub mod grpalg;
pub mod lattice;
pub mod lift;
pub mod linalg;
pub mod quiver;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, Report};
