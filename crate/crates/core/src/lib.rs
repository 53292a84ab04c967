//! Exact computation of equivariant formal group law data for complex
//! cobordism at a finite truncation degree, with machine verification of the
//! defining axioms and diagram compatibilities.

pub mod algebra;
pub mod cli;
pub mod efgl;
pub mod error;
pub mod fgl;
pub mod groups;
pub mod verify;

pub use error::{Error, Result};
