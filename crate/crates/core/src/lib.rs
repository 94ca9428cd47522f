//! Generalized Jacobians of curves with modulus over finite fields, their
//! character L-functions, and recovery of the curve from L-data.

pub mod algebra;
pub mod curve_spec;
pub mod elliptic;
pub mod error;
pub mod genus0;
pub mod group;
pub mod lfun;
pub mod model_checks;
pub mod reconstruction;

pub use error::{Error, Result};
