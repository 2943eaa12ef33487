//! Graded polynomial rings over `Q`, Gröbner bases and quotient rings.
//!
//! Every variable carries an even real degree. Internally a monomial is
//! weighted by half its real degree. The term order compares weights first
//! and breaks ties lexicographically in the order of the variable table
//! (`f > x1 > … > xk > q` for the rings built by this crate).

mod groebner;
mod poly;
mod quotient;
mod univariate;

use thiserror::Error;

pub use groebner::groebner_basis;
pub use poly::{parse_poly, GradedPoly, Monomial, Variables};
pub use quotient::{CupLength, QuotientRing};
pub use univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {name} has degree {degree}; degrees must be even and positive")]
    BadDegree { name: String, degree: u32 },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable tables disagree on a degree")]
    VariableMismatch,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("quotient ring is not finite dimensional")]
    NotFiniteDimensional,
    #[error("top degree has dimension {0}, expected 1")]
    TopNotOneDimensional(usize),
    #[error("expected a homogeneous class of degree {expected}, got {found}")]
    DegreeMismatch { expected: u32, found: String },
}
