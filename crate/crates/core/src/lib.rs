//! Permutation groups, subgroup censuses and arc-transitive coset graphs.
//!
//! Composition convention: `p.then(q)` applies `p` first, so it maps `i` to
//! `q(p(i))`. Points are 0-based internally and 1-based in cycle notation.

pub mod atlas;
pub mod coset_graph;
pub mod group;
pub mod perm;
pub mod subgroups;
pub mod verify;

pub use coset_graph::{CosetGraph, CosetGraphError, QuotientGate, QuotientGraph};
pub use atlas::{Atlas, AtlasError, GroupSpec, GroupType};
pub use group::{GroupError, PermGroup, ScanOptions};
pub use verify::{ClaimReport, Manifest, Status, SuiteReport, Verifier, VerifyError};
pub use perm::{Parity, PermError, Permutation};
