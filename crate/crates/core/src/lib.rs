//! Sigma-cyclic convolutional codes over skew-polynomial rings.

pub mod automorphism;
pub mod builder;
pub mod code;
pub mod descriptor;
pub mod distance;
pub mod error;
pub mod field;
pub mod golden;
mod linalg;
pub mod parse;
pub mod polymat;
pub mod ring;
pub mod skew;

pub use error::{Error, Result};
