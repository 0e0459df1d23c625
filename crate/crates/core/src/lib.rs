//! Restricted Chebyshev centers in finite sup-norm spaces.
//!
//! The ambient space is `C(S)` for a finite point set `S`: vectors are real
//! functions on `S` measured in the sup norm. Constraint sets are polytopes
//! (subspaces cut out by finitely supported functionals, their unit balls
//! and scaled balls). On top of a small dense LP engine and an exact vertex
//! enumerator the crate computes restricted radii and center sets, the
//! clamping construction of a restricted center from a finite reduction,
//! the near-center repair procedure, empirical property-(P1) moduli and a
//! finite-dimensional model of Garkavi's renormed hyperplane.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod centers;
pub mod constraints;
pub mod constructive;
pub mod error;
pub mod garkavi;
mod linalg;
pub mod lp;
pub mod p1;
pub mod space;
pub mod tol;

pub use centers::{CenterProblem, CenterReport};
pub use constraints::{Constraint, Functional, Polytope, SubspaceSpec};
pub use error::{Error, Result};
pub use space::{FunctionFamily, SupSpace, Vector};
pub use tol::Tolerances;
