pub mod binomial;
pub mod borel;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod hilbert_function;
pub mod hilbert_poly;
pub mod poly;
pub mod regularity;

pub use error::{Error, Result};
