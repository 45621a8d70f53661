//! Crystal bases of type A on tableaux, extremal weight pairs and bimatrices.

pub mod crystal;
pub mod error;
pub mod extremal;
pub mod glinf;
pub mod lr;
pub mod matrix;
pub mod modified;
pub mod rsk_jdt;
pub mod shapes;
pub mod switching;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
