pub mod cli;
pub mod deformation;
pub mod engine;
pub mod error;
pub mod lie;
pub mod oracles;
pub mod poly;
pub mod rational;
pub mod real;
pub mod rep;
pub mod series;

pub use error::{Error, Result};
