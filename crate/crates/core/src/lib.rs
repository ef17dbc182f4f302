//! Invariable generation of finite groups by elements of coprime
//! (prime-power) order.
//!
//! The crate provides exact permutation-group arithmetic, linear algebra and
//! modules over prime fields, semidirect products `V^u ⋊ H`, subgroup
//! lattices for small groups, the backtracking invariable-generation search,
//! and the linear-algebra criteria that decide lifting questions in
//! `V^u ⋊ H` without enumerating the group.

pub mod acceptance;
pub mod constructions;
pub mod corpus;
pub mod criteria;
pub mod error;
pub mod gf;
pub mod invgen;
pub mod lattice;
pub mod limits;
pub mod modrep;
pub mod oracle;
pub mod perm;
pub mod semidirect;

pub use error::{Error, ParseError, Result};
pub use limits::Limits;
pub use perm::{ConjClass, PermGroup, Permutation};
