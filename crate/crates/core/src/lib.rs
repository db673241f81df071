//! Rational maps between projective varieties: base loci, images,
//! birationality, inverses and closed embeddings, computed through Rees
//! algebras and Jacobian dual matrices.

pub mod error;
pub mod field;
pub mod families;
pub mod groebner;
pub mod inverse;
pub mod jacobian;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polymatrix;
pub mod rational_map;
pub mod rees;
pub mod script;
pub mod ring;
pub mod variety;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, RationalField};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use ring::{PolyRing, RingRef};
