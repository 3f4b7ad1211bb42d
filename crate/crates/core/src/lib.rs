//! Exact genus-zero Gromov-Witten invariants and quantum cohomology of small
//! homogeneous spaces.

pub mod algebra;
pub mod error;
pub mod model;

pub use error::{Error, Result};
pub mod gw;
pub mod potential;
pub mod qring;
pub mod boundary;
pub mod cli;
