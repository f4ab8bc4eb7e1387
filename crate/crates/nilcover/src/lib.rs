//! Nilpotent orbits, covering groups and theta representations.
//!
//! The library decides quasi-admissibility and raisability of split nilpotent
//! orbits for `n`-fold covers of classical and exceptional groups, predicts the
//! wavefront orbit of theta representations, and computes the leading
//! coefficient `c_O` for covers of `GL_r`.

pub mod admissibility;
pub mod audit;
pub mod characters;
pub mod cover;
pub mod data;
pub mod duality;
pub mod error;
pub mod exec;
pub mod partition;
pub mod roots;
pub mod theta;

pub use error::{Error, Result};
pub use partition::{ClassicalType, Partition};
pub use roots::{CartanLabel, Family, Rational, RootSystem, SubsystemLabel, SubsystemReport};
