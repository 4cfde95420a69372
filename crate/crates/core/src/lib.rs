//! Entanglement measures, invariants and extremal-state search for
//! four-qubit pure states.

pub mod entanglement;
pub mod error;
pub mod extremal;
pub mod invariants;
pub mod linalg;
pub mod search;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
