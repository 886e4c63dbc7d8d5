//! Canonical forms and the decidable levels of the 3-order hierarchy.

pub mod canonical;
pub mod census;
pub mod convex;
pub mod enumerate;
pub mod fast;
pub mod report;

pub use canonical::{canonical_form, canonical_form_detailed, canonical_form_with_limit, CanonicalCode, CanonicalForm};
pub use census::{census_point_types, census_stabilized, Census, CensusClass, StabilizedCensus};
pub use convex::is_convex_position_type;
pub use enumerate::{abstract_t3o_maps, count_labeled_family, enumerate_abstract_t3o, AbstractEnumeration, Family};
pub use fast::{
    fast_growing_witness, is_incremental, rule_map, rule_orientation, sees_sequences, verify_witness, witness_map,
    FastGrowingWitness,
};
pub use report::{classify, ClassificationReport};
