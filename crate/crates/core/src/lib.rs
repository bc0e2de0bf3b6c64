//! Exact-arithmetic computational geometry for lattice polytopes.
//!
//! The crate provides lattice-point counting and discrete moment
//! expansions, the discrete Steiner point, Minkowski-valuation operators
//! (difference body, the z_{a,b} family, projection bodies and their
//! planar rotations), canonical cell decompositions with an
//! inclusion-exclusion checker, and seeded property suites that verify
//! the operators' valuation, equivariance, and integrality behavior.
//! All arithmetic is exact; there is no floating point anywhere.

pub mod decomp;
pub mod ehrhart;
pub mod error;
pub mod jsonio;
mod kernel;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::{det, random_unimodular, solve_linear, IntMat, IntVec, RatVec, UnimodularMap};
pub use poly::{lagrange_interpolate, ExactPolynomial, VectorPolynomial};
pub use polytope::{vertex_enumeration, HalfspaceSystem, Polytope};
pub use rational::{parse_rational, rat, rat_int, rational_to_string, Int, Rational};
