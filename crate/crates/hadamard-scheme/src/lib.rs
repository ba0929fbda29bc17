//! Exact verification of complex Hadamard matrices living in the
//! Bose-Mesner algebra of a four-class association scheme.

pub mod error;
pub mod exact;
pub mod families;
pub mod gram;
pub mod linalg;
pub mod nomura;
pub mod report;
pub mod scheme;

pub use error::{Error, Result};
