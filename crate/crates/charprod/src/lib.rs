//! Exact computational verification of irreducible-character product
//! decompositions in finite p-groups.
//!
//! The crate builds concrete p-groups (cyclic, direct powers, wreath and
//! semidirect products), computes characters over cyclotomic fields with
//! exact rational arithmetic, and verifies that products of irreducible
//! characters decompose with prescribed multiplicities.

pub mod classfn;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod subgroup;
pub mod verify;

pub use cyclotomic::CycNumber;
pub use error::{Error, Result};
pub use group::{Element, FiniteGroup};
pub use subgroup::{GroupRef, Subgroup};

/// Enumeration and rank bounds shared across the engine.
#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    /// Largest group or subgroup that may be enumerated element by element.
    pub max_enum: u128,
    /// Largest subgroup index (and elementary abelian rank) for coset
    /// enumeration.
    pub rank_bound: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_enum: 200_000, rank_bound: 32 }
    }
}
