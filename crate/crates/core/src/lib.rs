//! Derivation, exact certification and numeric verification of q-WZ pairs
//! for accelerated 3phi2 series.

pub mod algebra;
pub mod error;
pub mod identity;
pub mod qterm;
pub mod telescoper;
mod serde_util;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
