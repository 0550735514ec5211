//! Sum-of-squares pseudo-expectations for independent sets and colourings.

pub mod error;
pub mod graph;
pub mod poly;
pub mod pe;
pub mod config;
pub mod scalar;
pub mod spectral;
pub mod reduction;
pub mod refutation;
pub mod experiments;
pub mod io;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::{Arithmetic, Rational, Scalar};
