//! Relabeling-invariant fingerprints of orientation maps.
//!
//! The canonical code is the lexicographically smallest packed value string
//! over all relabelings (and optionally the global sign flip). Labels are
//! assigned one at a time; fixing new label `m` fixes every triple whose
//! largest new label is `m`, which is exactly the next colex block, so
//! prefixes can be compared and pruned as they are built.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{triple_count, OrientationMap, Sign};

pub const DEFAULT_CANONICAL_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub n: usize,
    /// Packed two-bit values of the minimal relabeled map.
    pub code: Vec<u8>,
    /// Whether the global sign flip took part in the minimization.
    pub mirror: bool,
}

impl CanonicalCode {
    pub fn hex(&self) -> String {
        self.code.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The canonical representative itself.
    pub fn to_map(&self) -> OrientationMap {
        OrientationMap::from_packed_bytes(self.n, &self.code).expect("canonical codes are well formed")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hex())
    }
}

/// Canonical code together with a relabeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `relabel[old] = new`.
    pub relabel: Vec<usize>,
    /// True when the minimum was reached on the sign-flipped map.
    pub flipped: bool,
}

struct Search<'a> {
    map: &'a OrientationMap,
    flip: bool,
    n: usize,
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u8>,
    // comparison of current prefix against best prefix, per depth
    state: Vec<Ordering>,
    best: Option<Vec<u8>>,
    best_order: Vec<usize>,
    best_flipped: bool,
}

impl Search<'_> {
    #[inline]
    fn value(&self, a: usize, b: usize, c: usize) -> u8 {
        let v = self.map.at(a, b, c);
        if self.flip {
            (-v).code()
        } else {
            v.code()
        }
    }

    fn run(&mut self) {
        let depth = self.order.len();
        if depth == self.n {
            let better = match &self.best {
                None => true,
                Some(_) => self.state[depth] == Ordering::Less,
            };
            if better {
                self.best = Some(self.current.clone());
                self.best_order = self.order.clone();
                self.best_flipped = self.flip;
                for s in self.state.iter_mut() {
                    *s = Ordering::Equal;
                }
            }
            return;
        }
        for e in 0..self.n {
            if self.used[e] {
                continue;
            }
            let start = self.current.len();
            let mut st = self.state[depth];
            let mut pruned = false;
            'block: for j in 1..depth {
                for i in 0..j {
                    let v = self.value(self.order[i], self.order[j], e);
                    let idx = self.current.len();
                    self.current.push(v);
                    if st == Ordering::Equal {
                        if let Some(best) = &self.best {
                            st = v.cmp(&best[idx]);
                            if st == Ordering::Greater {
                                pruned = true;
                                break 'block;
                            }
                        }
                    }
                }
            }
            if !pruned {
                self.state[depth + 1] = st;
                self.used[e] = true;
                self.order.push(e);
                self.run();
                self.order.pop();
                self.used[e] = false;
            }
            self.current.truncate(start);
        }
    }
}

/// Canonical form with the relabeling that realizes it.
pub fn canonical_form_detailed(map: &OrientationMap, include_mirror: bool, limit: usize) -> Result<CanonicalForm> {
    let n = map.n();
    if n > limit {
        return Err(Error::TooLarge(format!("canonical form needs n <= {limit}, got {n}")));
    }
    let mut s = Search {
        map,
        flip: false,
        n,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        current: Vec::with_capacity(triple_count(n)),
        state: vec![Ordering::Equal; n + 1],
        best: None,
        best_order: Vec::new(),
        best_flipped: false,
    };
    s.run();
    if include_mirror {
        s.flip = true;
        s.state.fill(Ordering::Equal);
        s.run();
    }
    let trits = s.best.expect("at least one labeling exists");
    let values: Vec<Sign> = trits.iter().map(|&c| Sign::from_code(c)).collect();
    let min_map = OrientationMap::from_colex_values(n, &values)?;
    let mut relabel = vec![0; n];
    for (new, &old) in s.best_order.iter().enumerate() {
        relabel[old] = new;
    }
    Ok(CanonicalForm {
        code: CanonicalCode {
            n,
            code: min_map.packed_bytes(),
            mirror: include_mirror,
        },
        relabel,
        flipped: s.best_flipped,
    })
}

pub fn canonical_form_with_limit(map: &OrientationMap, include_mirror: bool, limit: usize) -> Result<CanonicalCode> {
    canonical_form_detailed(map, include_mirror, limit).map(|f| f.code)
}

pub fn canonical_form(map: &OrientationMap, include_mirror: bool) -> Result<CanonicalCode> {
    canonical_form_with_limit(map, include_mirror, DEFAULT_CANONICAL_LIMIT)
}

pub fn is_isomorphic(a: &OrientationMap, b: &OrientationMap, include_mirror: bool) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(canonical_form(a, include_mirror)? == canonical_form(b, include_mirror)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{order_type, PointSet};
    use crate::perm::all_permutations;

    /// Oracle: minimum over every relabeling, built naively.
    fn brute_canonical(map: &OrientationMap, mirror: bool) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for p in all_permutations(map.n()) {
            let r = map.relabel(&p).unwrap();
            let mut cands = vec![r.packed_bytes()];
            if mirror {
                cands.push(r.negated().packed_bytes());
            }
            for c in cands {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        best.unwrap()
    }

    fn six_points() -> OrientationMap {
        order_type(&PointSet::from_integer_pairs(&[(0, 0), (7, 1), (3, 5), (2, 9), (8, 6), (5, 3)]).unwrap())
    }

    #[test]
    fn matches_brute_force() {
        let maps = [
            six_points(),
            order_type(&PointSet::from_integer_pairs(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]).unwrap()),
            order_type(&PointSet::from_integer_pairs(&[(0, 0), (4, 1), (1, 3), (2, 2), (5, 5)]).unwrap()),
        ];
        for m in &maps {
            for mirror in [false, true] {
                assert_eq!(canonical_form(m, mirror).unwrap().code, brute_canonical(m, mirror));
            }
        }
    }

    #[test]
    fn relabeling_invariant() {
        let m = six_points();
        let c = canonical_form(&m, false).unwrap();
        for p in all_permutations(6).iter().step_by(37) {
            assert_eq!(canonical_form(&m.relabel(p).unwrap(), false).unwrap(), c);
        }
    }

    #[test]
    fn mirror_handling() {
        let ccw = order_type(&PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap());
        let cw = order_type(&PointSet::from_integer_pairs(&[(0, 0), (0, 1), (1, 0)]).unwrap());
        assert_ne!(ccw, cw);
        assert_eq!(canonical_form(&ccw, true).unwrap(), canonical_form(&cw, true).unwrap());
        // swapping two labels already reverses the only triple
        assert_eq!(
            canonical_form(&ccw, false).unwrap(),
            canonical_form(&cw, false).unwrap()
        );
        assert_ne!(
            canonical_form(&ccw, false).unwrap().mirror,
            canonical_form(&cw, true).unwrap().mirror
        );
    }

    #[test]
    fn detailed_relabel_reproduces_code() {
        let m = six_points();
        for mirror in [false, true] {
            let f = canonical_form_detailed(&m, mirror, 9).unwrap();
            let mut r = m.relabel(&f.relabel).unwrap();
            if f.flipped {
                r = r.negated();
            }
            assert_eq!(r.packed_bytes(), f.code.code);
            assert_eq!(f.code.to_map(), r);
        }
    }

    #[test]
    fn too_large() {
        let m = OrientationMap::filled(10, Sign::Positive);
        assert!(matches!(canonical_form(&m, true), Err(Error::TooLarge(_))));
        assert!(canonical_form_with_limit(&m, true, 10).is_ok());
    }
}
