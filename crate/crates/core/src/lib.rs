pub mod branching;
pub mod conecalc;
pub mod decision;
pub mod error;
pub mod golden;
pub mod job;
pub mod ratcone;
pub mod rootdata;

pub use error::{Error, Result};
