//! Classifications, sequent theories and logics over finite type sets,
//! with executable checks for their categorical laws.

pub mod cls;
pub mod dgm;
pub mod error;
pub mod fibered;
pub mod fol;
pub mod gen;
pub mod io;
pub mod limits;
pub mod theory;
pub mod truth;

pub use error::{Error, Result};
pub use limits::Limits;
