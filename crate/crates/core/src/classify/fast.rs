//! Fast-growing point sets as a combinatorial certificate.
//!
//! A witness is an ordering of the elements by position (left to right)
//! together with a height permutation of the positions. The induced
//! orientation of positions `i < j < k` is `-1` exactly when the middle one
//! is the highest of the three.
//!
//! Equivalently: for every triple, `o(top, left, right) = +1`, where `top`
//! is the highest of the three and `left`, `right` are the other two by
//! position. So each element sees all lower elements in left-to-right
//! order, and the order seen by the top element fixes the positions of all
//! others. The search uses this to enumerate candidate position orders
//! directly instead of trying all `n!` of them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{OrientationMap, Sign};
use crate::perm::{inverse, is_permutation};

pub const DEFAULT_WITNESS_LIMIT: usize = 9;

/// Both vectors are 0-based: `sigma[element] = position`,
/// `pi[position] = height`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FastGrowingWitness {
    pub sigma: Vec<usize>,
    pub pi: Vec<usize>,
}

impl FastGrowingWitness {
    pub fn new(sigma: Vec<usize>, pi: Vec<usize>) -> Result<Self> {
        if sigma.len() != pi.len() || !is_permutation(&sigma) || !is_permutation(&pi) {
            return Err(Error::InvalidInput(
                "witness vectors must be permutations of equal length".into(),
            ));
        }
        Ok(FastGrowingWitness { sigma, pi })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Elements listed by position.
    pub fn elements_by_position(&self) -> Vec<usize> {
        inverse(&self.sigma)
    }

    /// Elements listed by height, lowest first.
    pub fn elements_by_height(&self) -> Vec<usize> {
        let by_pos = self.elements_by_position();
        let pos_by_height = inverse(&self.pi);
        pos_by_height.iter().map(|&p| by_pos[p]).collect()
    }
}

/// Orientation of positions `i < j < k` under heights `pi`.
#[inline]
pub fn rule_orientation(i: usize, j: usize, k: usize, pi: &[usize]) -> Sign {
    debug_assert!(i < j && j < k);
    if pi[j] > pi[i] && pi[j] > pi[k] {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// The map induced on positions `0..n`.
pub fn rule_map(pi: &[usize]) -> OrientationMap {
    OrientationMap::from_fn(pi.len(), |i, j, k| rule_orientation(i, j, k, pi))
}

/// The map induced on elements.
pub fn witness_map(w: &FastGrowingWitness) -> OrientationMap {
    rule_map(&w.pi)
        .relabel(&w.elements_by_position())
        .expect("witness holds permutations")
}

pub fn verify_witness(map: &OrientationMap, w: &FastGrowingWitness) -> bool {
    map.n() == w.n() && is_permutation(&w.sigma) && is_permutation(&w.pi) && witness_map(w) == *map
}

/// For each height `h` (1-based), the lower heights in the order the
/// element at height `h` sees them, starting from the direction of the
/// top element. Returns `None` unless every sequence is consistent with
/// the map, which happens exactly when the witness verifies.
pub fn sees_sequences(map: &OrientationMap, w: &FastGrowingWitness) -> Option<Vec<Vec<usize>>> {
    if map.n() != w.n() {
        return None;
    }
    let by_height = w.elements_by_height();
    let mut out = Vec::with_capacity(w.n());
    for h in 0..w.n() {
        let viewer = by_height[h];
        let mut lower: Vec<usize> = (0..h).collect();
        lower.sort_by_key(|&g| w.sigma[by_height[g]]);
        for a in 0..lower.len() {
            for b in a + 1..lower.len() {
                if map.at(viewer, by_height[lower[a]], by_height[lower[b]]) != Sign::Positive {
                    return None;
                }
            }
        }
        out.push(lower.into_iter().map(|g| g + 1).collect());
    }
    Some(out)
}

/// True if every sequence is the previous one with the next height
/// inserted somewhere.
pub fn is_incremental(seqs: &[Vec<usize>]) -> bool {
    seqs.windows(2).enumerate().all(|(i, w)| {
        let inserted = i + 1;
        let mut without = w[1].clone();
        match without.iter().position(|&x| x == inserted) {
            Some(p) => {
                without.remove(p);
                without == w[0] && w[1].len() == w[0].len() + 1
            }
            None => false,
        }
    })
}

/// Renders sees sequences the way they are usually written:
/// `1: ∅, 2: 1, 3: 12, ...`.
pub fn format_sees(seqs: &[Vec<usize>]) -> String {
    seqs.iter()
        .enumerate()
        .map(|(h, s)| {
            let body = if s.is_empty() {
                "∅".to_string()
            } else {
                s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
            };
            format!("{}: {}", h + 1, body)
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Order of the other elements as seen from `top`, if `o(top, a, b) = +1`
/// is a strict total order on them.
fn view_order(map: &OrientationMap, top: usize) -> Option<Vec<usize>> {
    let n = map.n();
    let others: Vec<usize> = (0..n).filter(|&e| e != top).collect();
    let mut wins = vec![0usize; n];
    for &a in &others {
        for &b in &others {
            if a != b && map.at(top, a, b) == Sign::Positive {
                wins[a] += 1;
            }
        }
    }
    let mut order = others;
    order.sort_by(|&a, &b| wins[b].cmp(&wins[a]).then(a.cmp(&b)));
    for x in 0..order.len() {
        for y in x + 1..order.len() {
            if map.at(top, order[x], order[y]) != Sign::Positive {
                return None;
            }
        }
    }
    Some(order)
}

/// Lexicographically smallest height permutation for a fixed position
/// order, by backtracking with a triple check after every placement.
fn smallest_heights(map: &OrientationMap, by_pos: &[usize]) -> Option<Vec<usize>> {
    fn go(map: &OrientationMap, by_pos: &[usize], pi: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let p = pi.len();
        if p == by_pos.len() {
            return true;
        }
        for h in 0..by_pos.len() {
            if used[h] {
                continue;
            }
            pi.push(h);
            let ok = (1..p)
                .all(|j| (0..j).all(|i| rule_orientation(i, j, p, pi) == map.at(by_pos[i], by_pos[j], by_pos[p])));
            if ok {
                used[h] = true;
                if go(map, by_pos, pi, used) {
                    return true;
                }
                used[h] = false;
            }
            pi.pop();
        }
        false
    }
    let mut pi = Vec::with_capacity(by_pos.len());
    let mut used = vec![false; by_pos.len()];
    go(map, by_pos, &mut pi, &mut used).then_some(pi)
}

pub fn fast_growing_witness_with_limit(map: &OrientationMap, limit: usize) -> Result<Option<FastGrowingWitness>> {
    let n = map.n();
    if !map.is_total() {
        return Err(Error::NotTotal);
    }
    if n > limit {
        return Err(Error::TooLarge(format!("witness search needs n <= {limit}, got {n}")));
    }
    if n == 0 {
        return Ok(Some(FastGrowingWitness {
            sigma: vec![],
            pi: vec![],
        }));
    }
    // Every valid position order is the view order of the top element with
    // the top element inserted at some position.
    let mut sigmas = BTreeSet::new();
    for top in 0..n {
        if let Some(order) = view_order(map, top) {
            for slot in 0..n {
                let mut by_pos = order.clone();
                by_pos.insert(slot, top);
                sigmas.insert(inverse(&by_pos));
            }
        }
    }
    for sigma in sigmas {
        let by_pos = inverse(&sigma);
        if let Some(pi) = smallest_heights(map, &by_pos) {
            return Ok(Some(FastGrowingWitness { sigma, pi }));
        }
    }
    Ok(None)
}

/// Lexicographically smallest `(sigma, pi)` reproducing the map, or `None`.
pub fn fast_growing_witness(map: &OrientationMap) -> Result<Option<FastGrowingWitness>> {
    fast_growing_witness_with_limit(map, DEFAULT_WITNESS_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::satisfies_interiority;
    use crate::geometry::{order_type, PointSet};
    use crate::perm::all_permutations;
    use Sign::*;

    /// Oracle: every (sigma, pi) pair in lexicographic order.
    fn brute_witness(map: &OrientationMap) -> Option<FastGrowingWitness> {
        let perms = all_permutations(map.n());
        for sigma in &perms {
            for pi in &perms {
                let w = FastGrowingWitness {
                    sigma: sigma.clone(),
                    pi: pi.clone(),
                };
                if witness_map(&w) == *map {
                    return Some(w);
                }
            }
        }
        None
    }

    #[test]
    fn rule_examples() {
        assert_eq!(rule_orientation(0, 1, 2, &[0, 1, 2]), Positive);
        assert_eq!(rule_orientation(0, 1, 2, &[0, 2, 1]), Negative);
        assert_eq!(rule_orientation(0, 1, 2, &[2, 0, 1]), Positive);
        let id = [0, 1, 2, 3, 4];
        assert!(crate::orientation::colex_triples(5).all(|(i, j, k)| rule_orientation(i, j, k, &id) == Positive));
    }

    #[test]
    fn rule_maps_satisfy_interiority() {
        for n in 3..=6 {
            for pi in all_permutations(n) {
                let m = rule_map(&pi);
                assert!(m.is_total());
                assert!(satisfies_interiority(&m), "{pi:?}");
            }
        }
    }

    #[test]
    fn search_agrees_with_brute_force() {
        // every total map on 4 elements and a spread of 5-element ones
        for n in [3usize, 4, 5] {
            let t = crate::orientation::triple_count(n);
            let step = if n == 5 { 7 } else { 1 };
            for bits in (0u32..(1 << t)).step_by(step) {
                let vals: Vec<Sign> = (0..t)
                    .map(|i| if bits >> i & 1 == 1 { Negative } else { Positive })
                    .collect();
                let m = OrientationMap::from_colex_values(n, &vals).unwrap();
                assert_eq!(fast_growing_witness(&m).unwrap(), brute_witness(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn three_points_always_fast() {
        for v in [Positive, Negative] {
            let m = OrientationMap::filled(3, v);
            let w = fast_growing_witness(&m).unwrap().unwrap();
            assert!(verify_witness(&m, &w));
        }
    }

    #[test]
    fn perturbed_witness_fails() {
        let m = order_type(&PointSet::from_integer_pairs(&[(0, 0), (5, 1), (2, 7), (3, 3), (9, 4)]).unwrap());
        let w = fast_growing_witness(&m).unwrap().unwrap();
        assert!(verify_witness(&m, &w));
        let mut bad = w.clone();
        bad.pi.swap(0, 2);
        assert!(!verify_witness(&m, &bad));
        assert!(sees_sequences(&m, &bad).is_none());
    }

    #[test]
    fn not_total_is_an_error() {
        let sq = order_type(&PointSet::from_integer_pairs(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]).unwrap());
        assert_eq!(fast_growing_witness(&sq), Err(Error::NotTotal));
    }

    #[test]
    fn sees_sequences_from_witness_are_incremental() {
        // positions chosen so heights 1..5 appear left to right as 1 5 3 4 2
        // and height 6 sits at the far right
        let pi = vec![0, 4, 2, 3, 1, 5];
        let m = rule_map(&pi);
        let w = FastGrowingWitness::new((0..6).collect(), pi).unwrap();
        let seqs = sees_sequences(&m, &w).unwrap();
        assert_eq!(format_sees(&seqs), "1: ∅, 2: 1, 3: 12, 4: 132, 5: 1342, 6: 15342");
        assert!(is_incremental(&seqs));
        assert!(!is_incremental(&[vec![], vec![1], vec![2, 1, 3]]));
    }
}
