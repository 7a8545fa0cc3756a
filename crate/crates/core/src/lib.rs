//! Exact K-theory of Grassmannians and of their (extended) cotangent bundles,
//! the lattice maps induced by stratified Mukai flops, and the supporting
//! Schubert calculus, Bott cohomology, Plücker geometry and Weyl group words.

pub mod chow;
pub mod error;
pub mod bott;
pub mod counterex;
pub mod exec;
pub mod flopgeom;
pub mod kgroup;
pub mod linalg;
pub mod partitions;
pub mod symfunc;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use partitions::{BoxShape, Partition};
