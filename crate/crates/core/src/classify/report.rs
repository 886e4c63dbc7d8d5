use serde::{Deserialize, Serialize};

use crate::axioms::{check_interiority, InteriorityCounterexample};
use crate::classify::canonical::{canonical_form_with_limit, CanonicalCode};
use crate::classify::convex::is_convex_position_type;
use crate::classify::fast::{fast_growing_witness_with_limit, sees_sequences, FastGrowingWitness};
use crate::error::{Error, Result};
use crate::orientation::OrientationMap;

/// Verdicts for the levels of the hierarchy that have a finite decision
/// procedure: convex ⊂ fast-growing ⊂ T3O ⊂ P3O.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub is_total: bool,
    pub is_p3o: bool,
    pub is_t3o: bool,
    pub interiority_counterexample: Option<InteriorityCounterexample>,
    pub is_convex_type: bool,
    pub convex_order: Option<Vec<usize>>,
    pub is_fast_growing: bool,
    pub fast_growing_witness: Option<FastGrowingWitness>,
    /// 1-based heights; see [`sees_sequences`].
    pub sees: Option<Vec<Vec<usize>>>,
    /// Mirror-inclusive canonical code.
    pub canonical: CanonicalCode,
    /// Canonical code with mirror images kept apart.
    pub canonical_chiral: CanonicalCode,
}

impl ClassificationReport {
    /// convex ⇒ fast-growing ⇒ T3O ⇒ P3O.
    pub fn hierarchy_consistent(&self) -> bool {
        (!self.is_convex_type || self.is_fast_growing)
            && (!self.is_fast_growing || self.is_t3o)
            && (!self.is_t3o || self.is_p3o)
    }
}

pub const DEFAULT_CLASSIFY_LIMIT: usize = 9;

pub fn classify(map: &OrientationMap) -> Result<ClassificationReport> {
    classify_with_limit(map, DEFAULT_CLASSIFY_LIMIT)
}

pub fn classify_with_limit(map: &OrientationMap, limit: usize) -> Result<ClassificationReport> {
    if map.n() > limit {
        return Err(Error::TooLarge(format!(
            "classification needs n <= {limit}, got {}",
            map.n()
        )));
    }
    let is_total = map.is_total();
    let counterexample = check_interiority(map).err();
    let is_p3o = counterexample.is_none();
    let is_t3o = is_total && is_p3o;
    let (convex_order, witness) = if is_t3o {
        (
            is_convex_position_type(map)?,
            fast_growing_witness_with_limit(map, limit)?,
        )
    } else {
        (None, None)
    };
    let sees = witness.as_ref().and_then(|w| sees_sequences(map, w));
    Ok(ClassificationReport {
        n: map.n(),
        is_total,
        is_p3o,
        is_t3o,
        interiority_counterexample: counterexample,
        is_convex_type: convex_order.is_some(),
        convex_order,
        is_fast_growing: witness.is_some(),
        fast_growing_witness: witness,
        sees,
        canonical: canonical_form_with_limit(map, true, limit)?,
        canonical_chiral: canonical_form_with_limit(map, false, limit)?,
    })
}
