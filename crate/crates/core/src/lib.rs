//! Computational group theory for splitting the center of a Sylow subgroup.
//!
//! The engine works with permutation groups given by generators. It computes
//! Sylow subgroups, the radical series `O_p`, `O_p'`, `O_p',p`, `Z_p*`, the
//! Thompson subgroup, the weakly closed subgroup `W_G(S) ≤ Z(S)` and the
//! transfer on fixed points, and uses them to certify (or refute) that
//! `W_G(S)` is a direct factor of `Z(S)`, both for groups and for the
//! fusion systems they realize.

pub mod caps;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod group;
pub mod perm;
pub mod report;
pub mod structure;
pub mod table;
pub mod theorem;
pub mod transfer;
pub mod weak_closure;

#[cfg(test)]
pub(crate) mod testing;

pub use caps::Caps;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
