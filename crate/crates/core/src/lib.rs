//! Weyl group combinatorics for 235-triples in adjoint simple groups.

pub mod chartab;
pub mod checks;
pub mod classical;
pub mod combinat;
pub mod dixon;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod frobcount;
pub mod ineq;
pub mod linalg;
pub mod poly;
pub mod rootsys;
pub mod tablegen;
pub mod torsion;
pub mod weyl;
pub mod weylchar;

pub use error::{Error, Result};
