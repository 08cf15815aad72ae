pub mod aff;
pub mod complex;
pub mod error;
pub mod heis;
pub mod scalar;

pub use error::{Error, Result};
pub mod metric;
pub mod sphere;
pub mod heis_sub;
