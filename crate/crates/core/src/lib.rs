//! Exact chain complexes over the integers and small DG-categories.

pub mod complexes;
pub mod dgcat;
pub mod cones;
pub mod ell;
pub mod error;
pub mod monoidal;
pub mod random;
pub mod serial;
pub mod signs;
pub mod suite;
pub mod totals;
pub mod zlinalg;

pub use complexes::{Complex, Proto};
pub use error::{Error, Result};
