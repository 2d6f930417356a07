//! Cubic Hecke algebras on up to five strands.

pub mod braid;
pub mod derive;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod field;
pub mod level5;
pub mod linalg;
pub mod rewrite;
pub mod ring;
pub mod scalar;
pub mod semisimple;
pub mod tower;
pub mod verify;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use ring::{LaurentCoeff, SpecPoint};
