//! Exact analysis of skew-linear dynamical systems over the rationals.
//!
//! A skew-linear system is the self-map `f(x, y) = (x + 1, A(x) y)` of the
//! product of a line and an `n`-dimensional linear space, where `A` is a
//! square polynomial matrix whose determinant is a nonzero constant.  All
//! computation in this crate is exact: coefficients are arbitrary-precision
//! rationals and every reported object is re-verified against its defining
//! identity before it leaves the library.
//!
//! The crate is organised bottom-up:
//!
//! * [`rat`], [`poly`], [`multipoly`] — scalar, univariate, and multivariate
//!   exact arithmetic;
//! * [`polymat`], [`linalg`], [`intmat`], [`roots`] — polynomial matrices,
//!   fraction-free kernels and ranks, integer normal forms, and root finding;
//! * [`system`] — the dynamical system itself: validation, orbits, cocycles,
//!   gauge conjugation, pushforwards;
//! * [`invariant`] — invariant rank-one subbundles (skew eigenvectors) and
//!   semi-invariant polynomials, found through an exact linear pencil;
//! * [`straighten`] — constructive diagonalisation of two-dimensional
//!   systems, with a certificate when the obstruction is an irrational
//!   eigenvalue;
//! * [`closure`] — orbit-closure machinery for diagonal systems: vanishing
//!   ideals from orbit data, multiplicative relation lattices, component
//!   counts, and binomial closure descriptions.

pub mod closure;
pub mod intmat;
pub mod invariant;
pub mod linalg;
pub mod multipoly;
pub mod poly;
pub mod polymat;
pub mod rat;
pub mod roots;
pub mod straighten;
pub mod system;

mod factor;
mod pencil;

use std::fmt;

use poly::Poly;

/// Errors shared by every layer of the crate.
///
/// Variants carry enough of the offending object to make the message
/// self-explanatory; callers that need the data (for example the polynomial
/// determinant of a non-unimodular matrix) can match on the variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewError {
    /// A matrix inverse was requested but the determinant is not a nonzero
    /// constant, so the inverse has no polynomial entries.
    NotUnimodular { det: Poly },
    /// A system matrix failed validation: the determinant must be a nonzero
    /// constant for the map to be invertible fibrewise.
    InvalidSystem { det: Poly },
    /// Two objects that must agree in dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation that needs a nonzero input received zero.
    ZeroInput(&'static str),
    /// Both arguments of a gcd/Bezout computation were zero.
    BothZero,
    /// A vector expected to have coprime entries has a nonconstant common
    /// divisor.
    NotCoprime { gcd: Poly },
    /// A claimed invariant line fails its defining identity.
    NotALine,
    /// The operation is only defined for systems of this dimension.
    UnsupportedDimension { expected: usize, found: usize },
    /// Too few sample points for the requested monomial space.
    TooFewPoints { required: usize, found: usize },
    /// A coordinate that must be nonzero (a diagonal entry, a ratio base)
    /// is zero.
    ZeroCoordinate { index: usize },
    /// Parsing a rational, polynomial, or matrix from text failed.
    Parse(String),
}

impl fmt::Display for SkewError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewError::NotUnimodular { det } => {
                write!(f, "matrix is not invertible over the polynomial ring: det = {det}")
            }
            SkewError::InvalidSystem { det } => {
                write!(f, "system matrix determinant is not a nonzero constant: det = {det}")
            }
            SkewError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            SkewError::ZeroInput(what) => write!(f, "{what} must be nonzero"),
            SkewError::BothZero => write!(f, "gcd of (0, 0) is undefined"),
            SkewError::NotCoprime { gcd } => {
                write!(f, "entries share a nonconstant factor: gcd = {gcd}")
            }
            SkewError::NotALine => write!(f, "vector does not satisfy the invariant-line identity"),
            SkewError::UnsupportedDimension { expected, found } => {
                write!(f, "operation needs dimension {expected}, system has dimension {found}")
            }
            SkewError::TooFewPoints { required, found } => {
                write!(f, "need at least {required} sample points, got {found}")
            }
            SkewError::ZeroCoordinate { index } => {
                write!(f, "coordinate {index} must be nonzero")
            }
            SkewError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for SkewError {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SkewError>;
