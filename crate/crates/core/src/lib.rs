//! Permutation-group computation engine and a verification harness for solvability,
//! nilpotency and real-element criteria on finite groups.
//!
//! The layers, bottom up:
//!
//! - [`perm`], [`chain`], [`group`]: permutations, Schreier–Sims chains, generated groups.
//! - [`table`]: enumerated groups with conjugacy classes.
//! - [`structure`]: series, radicals, Sylow subgroups, coset actions.
//! - [`symcomb`] and [`numtheory`]: closed-form cycle-type combinatorics for `S_n`/`A_n`,
//!   primitive prime divisors and cyclotomic values.
//! - [`field`] and [`atlas`]: finite fields and the group corpus.
//! - [`graphs`]: element and class graphs on a group.
//! - [`harness`]: per-group checks producing [`harness::VerdictReport`]s.

pub mod atlas;
pub mod chain;
pub mod cycles;
pub mod field;
pub mod graphs;
pub mod group;
pub mod harness;
pub mod numtheory;
pub mod perm;
pub mod structure;
pub mod symcomb;
pub mod table;

pub use atlas::GroupSpec;
pub use chain::StabilizerChain;
pub use cycles::CycleType;
pub use group::{GroupError, PermGroup, DEFAULT_ENUMERATION_CAP};
pub use perm::{PermError, Permutation};
pub use table::{ConjugacyClass, GroupTable};
