//! Finite simplicial complexes and their reduced homology over the rationals.

mod betti;
mod complex;

pub use betti::{betti, check_verdict, rational_rank, BettiReport, ChainComplex, Verdict, VerdictMode, PROXY_CAVEAT};
pub use complex::{faces_of, Simplex, SimplicialComplex};
