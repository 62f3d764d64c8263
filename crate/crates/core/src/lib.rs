//! Workbench for transformation semigroups and finite automata.
//!
//! Computes syntactic semigroups of regular languages, decides triviality of
//! Green's relations, builds the extremal witnesses for the syntactic
//! complexity of R- and J-trivial languages, and checks the bounds `n!`,
//! `⌊e(n−1)!⌋` and `2^(n−1)` by direct computation.

pub mod automata;
pub mod cli;
pub mod error;
pub mod partition;
pub mod semigroup;
pub mod transform;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use partition::Partition;
pub use semigroup::{close, TransformationSemigroup};
pub use transform::{Transformation, TransformationProfile};
