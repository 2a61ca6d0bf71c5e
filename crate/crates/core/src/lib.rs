//! Exact commutative algebra over prime fields: graded quotient rings,
//! finitely presented modules, and the Frobenius functor and pushforwards.

pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod instances;
pub mod modules;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod theorems;

pub use error::{AlgebraError, Result};
pub use field::PrimeField;
pub use groebner::{HilbertSeries, Ideal};
pub use modules::{Module, QuotientRing};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use ring::PolyRing;
