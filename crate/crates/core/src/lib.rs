//! Kohnert diagrams and tableaux, key and quasi-key polynomials, their
//! fundamental slide expansions and stable limits.

pub mod composition;
pub mod diagram;
pub mod error;
pub mod expand;
pub mod kohnert;
pub mod qsym;
pub mod stability;
#[cfg(test)]
mod strategies;
pub mod verify;

pub use composition::{Partition, StrongComposition, WeakComposition};
pub use diagram::{Cell, Diagram};
pub use error::{Error, Result};
pub use kohnert::KohnertTableau;
