//! Graded commutative algebra over prime fields: Gröbner bases for modules,
//! minimal free resolutions, Tor and Ext, and depth of modules and complexes.

pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod resolve;

pub use error::{AlgebraError, Result};
pub use field::{Field, PrimeField, Rationals};
pub use groebner::GradedRing;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{PolyRing, Polynomial};

/// Graded rings over `F_p`.
pub type FpRing = GradedRing<PrimeField>;
/// Graded rings over the rationals.
pub type QRing = GradedRing<Rationals>;
/// Polynomials over `F_p`.
pub type FpPoly = Polynomial<PrimeField>;
