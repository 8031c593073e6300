//! Exact computations with standard graded algebras: Gröbner bases, ideal
//! algebra, canonical modules via linkage, cores of powers of the maximal
//! ideal, and Cayley-Bacharach classification of point sets.

pub mod algebra;
pub mod canonical;
pub mod cores;
pub mod corpus;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod identities;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod points;
pub mod poly;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{BaseOrder, Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::{Polynomial, Ring};
pub use ideal::Ideal;
pub use algebra::GradedAlgebra;
