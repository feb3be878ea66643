//! Exact computations with σ-diagonal pseudo-Riemannian metrics on nice
//! nilpotent Lie algebras.

pub mod catalog;
pub mod constructions;
pub mod curvature;
pub mod diagram;
pub mod error;
pub mod exactmath;
pub mod involution;
pub mod liealg;

pub use error::{Error, Result};
