//! Checks that a 5-graph with a designated vertex `z` satisfies the six
//! draw-sufficiency properties, plus the supporting facts about the
//! explicit graph. Every check returns a report with its evidence.

mod all;
pub mod cover;
pub mod observation;
pub mod properties;
mod report;
pub mod rigidity;
pub mod uniquerg;

pub use all::{verify_all, verify_with, VerifyOptions};
pub use cover::{check_property_iii_constructive, lemma41_cover, CoverLeaf, FpChoice};
pub use observation::{check_observation42, FactResult};
pub use properties::{
    check_missing1edge, check_property_i, check_property_ii, check_property_iv,
    check_property_iv_pairs, check_property_v, check_property_vi,
};
pub use report::{Check, FullReport, PropertyReport, RigidityResult, Witness};
pub use uniquerg::{check_uniquerg, completing_pairs, CandidateOrder, CompletingPairs};
