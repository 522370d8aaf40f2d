pub mod bounds;
pub mod cli;
pub mod domains;
pub mod error;
pub mod exterior;
pub mod harness;
pub mod kaehler;
pub mod spectral;

pub use error::{Error, Result};
