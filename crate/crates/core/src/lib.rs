//! Exact computations around Hamiltonian actions of compact Lie groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: root systems, centralizer types of Cartan elements and
//!   group types up to local isomorphism.
//! * [`polyring`]: graded polynomials over the rationals, Gröbner bases,
//!   quotient rings with normal forms, Hilbert series and exact univariate
//!   root counting.
//! * [`cohomology`]: Grassmannian rings, the `CP^k`-bundle ring over a
//!   Grassmannian, sphere-bundle rings, Borel's Poincaré polynomial, Chern data
//!   and the symplectic-cone test.
//! * [`quantum`]: small quantum cohomology presentations, contributing curve
//!   classes, Gromov–Witten fact table and quantum cup-length.
//! * [`classifier`]: orbit-type case analysis, quintuple admissibility and
//!   effectiveness, the quintuple search and the linear system for the
//!   blow-down case.
//! * [`cli`]: the JSON/text command-line front end.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod classifier;
pub mod cli;
pub mod cohomology;
mod linalg;
pub mod polyring;
pub mod quantum;
pub mod rational;
pub mod rootsys;

pub use rational::Q;
