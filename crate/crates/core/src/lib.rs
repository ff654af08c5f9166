//! Computational algebra of finite-dimensional nonassociative algebras over
//! finite fields: series and lattices, morphism searches, polynomial
//! identities, relatively free algebras realised inside Birkhoff direct
//! powers, semidirect and free-product constructions, enveloping algebras,
//! and censuses of small structure tensors.

pub mod algebra;
pub mod birkhoff;
pub mod caps;
pub mod census;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod examples;
pub mod field;
pub mod linalg;
pub mod morphisms;
pub mod poly;
pub mod suite;

pub use algebra::{Algebra, Bilinear};
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use linalg::{Matrix, Subspace, Vector};
