//! Degree-truncated free exponentials.

pub mod bang;
pub mod laws;
pub mod level;
pub mod series;

pub use bang::{bang_space_norms, BangBounds};
pub use laws::{law_suite, law_suite_with, CorruptedMu, Digging, LawReport, LawResult, Standard, SuiteConfig};
pub use level::{
    convergence, convergence_csv, embed_level, exp_norm_interval, level_norm, polarize, sym_n, ConvergenceRow, ExpInterval, LevelRep,
};
pub use series::{
    delta, eta, eta_series, lift, lift_eta, lift_matrix, lift_mu, mu, mult_m, unit_u, GradedCoeffs, Key, MultiIndex, MultiSeries, Series,
};
