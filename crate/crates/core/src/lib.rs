pub mod coxeter;
pub mod error;
pub mod homology;
pub mod morse;
pub mod scalar;
pub mod spherical;
pub mod suites;
pub mod zonotope;
