//! Exact-arithmetic toolkit for the algebra of the Rarita-Schwinger variant
//! of the Seiberg-Witten equations on spin 4-manifolds: quaternionic
//! Clifford fiber algebra, Pin(2)-equivariance verification, the index
//! pipeline, representation-ring feasibility verdicts, and a numerical
//! Kuranishi finite-dimensional sandbox.

pub mod clifford;
pub mod error;
pub mod index;
pub mod kuranishi;
pub mod pin2;
pub mod report;
pub mod repring;
pub mod sampling;
pub mod scalars;
pub mod topology;

pub use error::{Error, Result};
