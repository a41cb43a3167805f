//! Exact computation of typical pieces of NK-groups for Artinian algebras and
//! numerical-semigroup curve rings over Q, with Hochschild and cyclic homology
//! as an independent oracle.

pub mod algebra;
pub mod basis_algebra;
pub mod cech;
pub mod chain;
pub mod differentials;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hochschild;
pub mod linalg;
pub mod nk_engine;
pub mod parse;
pub mod poly;
pub mod semigroup;
pub mod verify;
pub mod witt_cartier;

pub use error::{Error, Result};
pub use field::{Field, RatFunc, Q};
