//! Formulas, one-sided sequent proofs, and their interpretation in the model.

pub mod formula;
pub mod interp;
pub mod proof;
pub mod sexp;

pub use formula::{parse_formula, parse_sequent, Formula};
pub use interp::{interpret, morphism_bound, Bindings, CompiledSpace, Env, Interpretation, MorphismBound};
pub use proof::{check_proof, parse_proof, CheckReport, Proof, Rule};
