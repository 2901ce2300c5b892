//! Exact extremal sizes of t-cycle-intersecting permutation families.
//!
//! Permutations of [n] are kept in canonical cycle form; two permutations
//! share a cycle when the same cyclic sequence occurs in both. A family is
//! t-intersecting when every two distinct members share at least t cycles,
//! and nontrivial when fewer than t cycles are common to all members.
//!
//! - [`counting`]: derangements, generated-family counts and the closed
//!   formulas for M(n,t) and M̃(n,t).
//! - [`perm`] and [`sets`]: permutations, permutation families and the
//!   set families that generate them.
//! - [`compression`]: the fix and shift operators.
//! - [`oracle`]: exhaustive searches used as ground truth.
//! - [`verify`]: the verification suites behind the `verify` command.

pub mod cli;
pub mod compression;
pub mod counting;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod perm;
mod search;
pub mod sets;
pub mod verify;


pub use counting::{BigCount, ExactRatio, ExtremalReport, Regime};
pub use error::{Error, Result};
pub use exec::Exec;
pub use perm::{PermFamily, Permutation};
pub use sets::{SetFamily, SubsetMask};
