//! Exact computations on Vogan varieties of unramified parameters for
//! `GL_N`, `Sp_N` and `SO_N` dual groups.

pub mod corpus;
pub mod error;
pub mod exactla;
pub mod liealg;
pub mod orbits;
pub mod params;
pub mod report;
pub mod sl2;
pub mod vogan;

pub use error::{Error, Result};
