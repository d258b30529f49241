//! Toric fiber products of multigraded ideals.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`]: exact sparse polynomials, rings, gradings and term orders;
//! * [`groebner`]: Buchberger's algorithm, initial forms, ideal equality and
//!   standard-monomial counts;
//! * [`oracle`]: kernels and contractions of polynomial maps by elimination,
//!   used as independent ground truth;
//! * [`tfp`]: the toric fiber product construction (lifts, quadrics,
//!   composite weight orders, Hilbert function products);
//! * [`models`]: Segre products, hierarchical and hidden-variable models,
//!   and group-based phylogenetic models;
//! * [`verify`]: the case runner comparing constructions against the oracle.
//!
//! Algorithms are generic over the coefficient field ([`Coeff`]); the
//! aliases below fix it to exact rationals.

pub mod coeff;
pub mod error;
pub mod format;
pub mod groebner;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod poly;
pub mod tfp;
pub mod verify;

pub use coeff::Coeff;
pub use error::{Error, PartialState, Result};
pub use groebner::{ComputeLimits, GroebnerBasis};
pub use poly::{Monomial, MultiGrading, Ring, RingRef, TermOrder, TieBreak, Var, WeightStack};

/// Exact rational numbers over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Polynomial with exact rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Gröbner basis with exact rational coefficients.
pub type Basis = groebner::GroebnerBasis<Rational>;
/// Polynomial map with exact rational coefficients.
pub type Map = oracle::PolynomialMap<Rational>;
