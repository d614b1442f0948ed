//! Exact computations with special derivations of the free Lie algebra on two
//! generators and the Kashiwara-Vergne Lie algebra `krv`.

pub mod derivation;
pub mod error;
pub mod free_assoc;
pub mod krv;
pub mod lie;
pub mod linalg;
pub mod poly_model;
pub mod trace;
pub mod verify;

pub use derivation::Derivation;
pub use error::{Error, Result};
pub use free_assoc::{BiDegree, Gen, NcPoly, TensorPoly, Word};
pub use lie::{FLElement, LiePoly, LyndonWord};
pub use linalg::{RatMatrix, Rational};
pub use trace::{CyclicWord, TracePoly};
