//! Finite-scale domain theory: posets, finite T0 spaces, convergence classes,
//! free ordered algebras, powerdomains and dcpo presentations, with exhaustive
//! checkers for the standard representation results on small instances.

pub mod algebra;
pub mod carrier;
pub mod convergence;
pub mod dot;
pub mod error;
pub mod exec;
pub mod json;
pub mod order;
pub mod powerdomain;
pub mod presentation;
pub mod report;
pub mod subset;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use order::{FinitePoset, MonotoneMap};
pub use subset::Subset;
pub use topology::FiniteSpace;
