//! Exact finite-scale rigged sequence spaces.
//!
//! The crate models sequence spaces whose unit balls are polytopes, the
//! regular linear maps between them, the multiplicative-additive connectives,
//! degree-truncated free exponentials, and an interpreter that turns one-sided
//! sequent proofs into tensors of the model. All arithmetic is exact.

pub mod connectives;
pub mod counterexample;
pub mod error;
pub mod expo;
pub mod guard;
pub mod index;
pub mod ll;
pub mod lp;
pub mod polar;
pub mod rational;
pub mod regmap;
pub mod sample;
pub mod seq;
pub mod space;

pub use error::{Error, Result};
pub use guard::Guards;
pub use index::{IndexSet, Label};
pub use rational::Rat;
pub use regmap::{adjoint, apply, compose, is_morphism, map_norm, MatrixRep};
pub use seq::{abs_parts, pairing, Sequence};
pub use space::{validate, PolytopeSpace, ValidationReport};
