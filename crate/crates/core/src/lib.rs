//! Bimatroids (linking systems) in exact arithmetic.
//!
//! The crate covers the regular-minor, extended-matroid, relative-rank and
//! regular-rectangle descriptions of a bimatroid, the realizable, relation
//! and bond constructions, bimatroid products, morphisms of matroids and
//! the Lorentzian-polynomial machinery used to certify (ultra)
//! log-concavity of the associated counting sequences.

pub mod bimatroid;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod exactnum;
pub mod lorentzian;
pub mod matroid;
pub mod morphism;
pub mod polynomial;
pub mod product;
pub mod schema;
pub mod subset;
pub mod verify;

pub use bimatroid::{Bimatroid, Minor, Orientation, RelativeRankTable};
pub use error::{Error, Result};
pub use exactnum::{FieldMatrix, Matrix, PrimeField, Rational, Rationals};
pub use matroid::Matroid;
pub use morphism::{MatroidMorphism, SetMap};
pub use polynomial::MultiPoly;
pub use verify::TheoremReport;
