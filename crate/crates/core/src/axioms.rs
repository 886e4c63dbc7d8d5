//! The interiority condition and `conv` membership.
//!
//! A map satisfies interiority when `o(ABD) = o(BCD) = o(CAD) = +1` forces
//! `o(ABC) = +1` for all distinct `A, B, C, D`. The `-1` premise variant is
//! the `+1` variant applied to `(A, C, B)`, so it needs no separate check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{ElementId, OrientationMap, Sign};

/// An ordered quadruple violating interiority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorityCounterexample {
    pub a: ElementId,
    pub b: ElementId,
    pub c: ElementId,
    pub d: ElementId,
    /// `o(ABD), o(BCD), o(CAD)`.
    pub premise_values: [Sign; 3],
    /// `o(ABC)`.
    pub conclusion_value: Sign,
}

#[inline]
fn violates(map: &OrientationMap, a: usize, b: usize, c: usize, d: usize) -> bool {
    map.at(a, b, d) == Sign::Positive
        && map.at(b, c, d) == Sign::Positive
        && map.at(c, a, d) == Sign::Positive
        && map.at(a, b, c) != Sign::Positive
}

/// True iff the quadruple `{w, x, y, z}` (any order) satisfies interiority
/// for every role assignment. Each apex gets the two cyclic classes of the
/// remaining three elements.
#[inline]
pub(crate) fn quad_ok(map: &OrientationMap, q: [usize; 4]) -> bool {
    for apex in 0..4 {
        let mut rest = [0usize; 3];
        let mut r = 0;
        for (i, &e) in q.iter().enumerate() {
            if i != apex {
                rest[r] = e;
                r += 1;
            }
        }
        let d = q[apex];
        let [a, b, c] = rest;
        if violates(map, a, b, c, d) || violates(map, a, c, b, d) {
            return false;
        }
    }
    true
}

/// Fast boolean interiority test.
pub fn satisfies_interiority(map: &OrientationMap) -> bool {
    let n = map.n();
    for d in 3..n {
        for c in 2..d {
            for b in 1..c {
                for a in 0..b {
                    if !quad_ok(map, [a, b, c, d]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Returns the lexicographically first ordered `(a, b, c, d)` violating
/// interiority, or `Ok(())`.
pub fn check_interiority(map: &OrientationMap) -> std::result::Result<(), InteriorityCounterexample> {
    if satisfies_interiority(map) {
        return Ok(());
    }
    let n = map.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    if violates(map, a, b, c, d) {
                        return Err(InteriorityCounterexample {
                            a,
                            b,
                            c,
                            d,
                            premise_values: [map.at(a, b, d), map.at(b, c, d), map.at(c, a, d)],
                            conclusion_value: map.at(a, b, c),
                        });
                    }
                }
            }
        }
    }
    unreachable!("fast scan reported a violation the full scan did not find")
}

/// Total and satisfying interiority.
pub fn is_t3o(map: &OrientationMap) -> bool {
    map.is_total() && satisfies_interiority(map)
}

/// Satisfying interiority; zeros allowed.
pub fn is_p3o(map: &OrientationMap) -> bool {
    satisfies_interiority(map)
}

/// `d ∈ conv(abc)`: the three premise values are all `+1` or all `-1`.
pub fn in_conv(map: &OrientationMap, d: ElementId, a: ElementId, b: ElementId, c: ElementId) -> Result<bool> {
    let ids = [a, b, c, d];
    for (i, &x) in ids.iter().enumerate() {
        if x >= map.n() {
            return Err(Error::OutOfRange { id: x, n: map.n() });
        }
        if ids[i + 1..].contains(&x) {
            return Err(Error::DuplicateElement(ids.to_vec()));
        }
    }
    Ok(in_conv_unchecked(map, d, a, b, c))
}

#[inline]
pub(crate) fn in_conv_unchecked(map: &OrientationMap, d: usize, a: usize, b: usize, c: usize) -> bool {
    let s = map.at(a, b, d);
    !s.is_zero() && map.at(b, c, d) == s && map.at(c, a, d) == s
}
