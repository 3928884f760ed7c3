//! Chermak-Delgado lattices of finite groups.
//!
//! Two engines compute `CD(G)`: [`cd::BruteEngine`] enumerates every
//! subgroup of an explicit Cayley table, and [`class2::Class2Engine`] works
//! with a class-2 `p`-group through its commutator form on `G/Z0`. The
//! [`verify`] module checks the structural theorems about these lattices
//! on both.

pub mod algebra;
pub mod bitset;
pub mod cd;
pub mod class2;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod fp_linalg;
pub mod group;
pub mod lattice;
pub mod verify;

pub use algebra::SubgroupAlgebra;
pub use cd::{BruteEngine, CdMember, CdResult, Measure};
pub use class2::{CentralSubgroup, Class2Engine, Class2Presentation, CommutatorEntry};
pub use error::{Error, Result};
pub use group::{CayleyGroup, SubgroupSet};
pub use lattice::FiniteLattice;
