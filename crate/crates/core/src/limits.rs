//! Resource caps shared by every search in the crate.

use serde::{Deserialize, Serialize};

/// Caps and budgets. Every exhaustive routine checks the relevant field
/// before starting and fails with [`crate::Error::CapExceeded`] instead of
/// running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest group whose elements may be listed explicitly.
    pub enumeration_cap: u64,
    /// Largest group whose full subgroup lattice may be built.
    pub lattice_cap: u64,
    /// Largest number of subgroups a lattice may hold.
    pub max_subgroups: u64,
    /// Largest point set for affine and coset permutation images.
    pub degree_cap: u64,
    /// Largest `p^n` for exhaustive irreducibility tests.
    pub spin_cap: u64,
    /// Subgroup-generation tests allowed per invariable-generation search.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 1_000_000,
            lattice_cap: 512,
            max_subgroups: 6_000,
            degree_cap: 4096,
            spin_cap: 1_000_000,
            search_budget: 1_000_000,
        }
    }
}

impl Limits {
    pub fn with_budget(self, search_budget: u64) -> Self {
        Limits {
            search_budget,
            ..self
        }
    }
}
