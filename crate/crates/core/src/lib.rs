pub mod cli;
pub mod detcore;
pub mod error;
pub mod harness;
pub mod ntheory;
pub mod quadfield;
pub mod realball;
pub mod recognize;

pub use error::{Error, Result};
