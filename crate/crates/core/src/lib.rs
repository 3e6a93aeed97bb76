//! Exact search-space reduction for Kemeny rank aggregation.
//!
//! The crate computes pairs of candidates, and absolute candidate positions,
//! that are the same in every Kemeny median of an election:
//!
//! | Rule | Output |
//! |------|--------|
//! | [`rules::betzler34`] | candidates split by the 3/4-majority rule |
//! | [`rules::ab_majority`] | candidates split by the optimized (alpha, beta)-majority rule |
//! | [`rules::mot`] / [`rules::iterated_mot`] | pairs from the major order theorem |
//! | [`rules::ab_mot`] | pairs from iterated (alpha, beta)-MOT |
//! | [`rules::positional_refine`] | extra pairs for candidates with bounded rank |
//! | [`rules::combined_reduce`] | fixpoint of all of the above |
//!
//! Rules are also available by name through [`rules::RuleRegistry`].
//! Every margin is an exact integer in vote-count scale; no floating point is
//! involved in any certification decision.
//!
//! [`oracle`] enumerates all medians of small elections and checks rule
//! output against them. [`data`] reads PrefLib files, samples Mallows
//! profiles and serializes instances and reports.

pub mod data;
pub mod distance;
pub mod error;
pub mod oracle;
pub mod partial;
pub mod profile;
pub mod relation;
pub mod rules;
pub mod tally;

pub use distance::{avg_distance, kendall_tau, kendall_tau_profile};
pub use error::{Error, Result};
pub use partial::{Block, BlockStatus, PartialResult};
pub use profile::{CandidateId, Ranking, VoteProfile};
pub use relation::SolvedRelation;
pub use rules::{Instance, ReductionReport, ReductionRule, RuleParams, RuleRegistry};
pub use tally::{MajorityGraph, PairTally};
