//! Matching counts, the census of small local constructions, the bound
//! report and named examples.

pub mod bounds;
pub mod census;
pub mod examples;
pub mod matching;

pub use bounds::{bound_report, BoundChain};
pub use census::{census, Census, CensusConfig, CensusRecord, ComplexClass};
pub use matching::{brute_force_planar_matchings, catalan, matching_count, MatchingCounter};
