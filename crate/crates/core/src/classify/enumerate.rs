//! Exhaustive enumeration of abstract total 3-orders and labeled family
//! counts.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{in_conv_unchecked, quad_ok};
use crate::classify::convex::is_convex_position_type;
use crate::classify::fast::rule_map;
use crate::error::{Error, Result};
use crate::orientation::{colex_triples, triple_count, OrientationMap, Sign};
use crate::perm::all_permutations;

pub const MAX_ABSTRACT_N: usize = 6;
pub const MAX_FAMILY_N: usize = 7;

/// Depth-first assignment of triples in colex order, `+1` before `-1`, so
/// results come out in increasing code order. After assigning triple
/// `(b, c, d)` every quadruple `{a, b, c, d}` with `a < b` is complete and
/// gets checked.
fn enumerate_total<F>(n: usize, quad_filter: &F) -> Vec<OrientationMap>
where
    F: Fn(&OrientationMap, [usize; 4]) -> bool + Sync,
{
    let triples: Vec<(usize, usize, usize)> = colex_triples(n).collect();
    if triples.is_empty() {
        return vec![OrientationMap::filled(n, Sign::Positive)];
    }

    fn go<F: Fn(&OrientationMap, [usize; 4]) -> bool>(
        idx: usize,
        triples: &[(usize, usize, usize)],
        map: &mut OrientationMap,
        quad_filter: &F,
        out: &mut Vec<OrientationMap>,
    ) {
        if idx == triples.len() {
            out.push(map.clone());
            return;
        }
        let (b, c, d) = triples[idx];
        for v in [Sign::Positive, Sign::Negative] {
            map.set_index(idx, v);
            if (0..b).all(|a| quad_ok(map, [a, b, c, d]) && quad_filter(map, [a, b, c, d])) {
                go(idx + 1, triples, map, quad_filter, out);
            }
        }
        map.set_index(idx, Sign::Zero);
    }

    // split on the first few triples for parallelism; order is preserved
    let split = triples.len().min(6);
    let prefixes: Vec<u32> = (0..1u32 << split).collect();
    prefixes
        .par_iter()
        .map(|&bits| {
            let mut map = OrientationMap::filled(n, Sign::Zero);
            let mut out = Vec::new();
            for (i, &(b, c, d)) in triples.iter().enumerate().take(split) {
                let v = if bits >> (split - 1 - i) & 1 == 1 {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
                map.set_index(i, v);
                if !(0..b).all(|a| quad_ok(&map, [a, b, c, d]) && quad_filter(&map, [a, b, c, d])) {
                    return out;
                }
            }
            go(split, &triples, &mut map, quad_filter, &mut out);
            out
        })
        .flatten_iter()
        .collect()
}

/// Labeled and isomorphism-class counts of total 3-orders on `n` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractEnumeration {
    pub n: usize,
    pub labeled: usize,
    /// Classes under relabeling only.
    pub classes: usize,
    /// Classes under relabeling and global sign flip.
    pub classes_mirror: usize,
    #[serde(skip)]
    pub maps: Vec<OrientationMap>,
}

/// Number of orbits of `maps` under relabeling (and sign flip if asked).
pub fn count_orbits(n: usize, maps: &[OrientationMap], include_mirror: bool) -> usize {
    let perms = all_permutations(n);
    let mut seen: HashSet<OrientationMap> = HashSet::new();
    let mut classes = 0;
    for m in maps {
        if seen.contains(m) {
            continue;
        }
        classes += 1;
        for p in &perms {
            let r = m.relabel(p).expect("valid permutation");
            if include_mirror {
                seen.insert(r.negated());
            }
            seen.insert(r);
        }
    }
    classes
}

/// Every total map on `n` labeled elements satisfying interiority, in
/// increasing code order.
pub fn abstract_t3o_maps(n: usize) -> Result<Vec<OrientationMap>> {
    if n > MAX_ABSTRACT_N {
        return Err(Error::TooLarge(format!(
            "abstract enumeration needs n <= {MAX_ABSTRACT_N}, got {n}"
        )));
    }
    Ok(enumerate_total(n, &|_: &OrientationMap, _: [usize; 4]| true))
}

pub fn enumerate_abstract_t3o(n: usize) -> Result<AbstractEnumeration> {
    let maps = abstract_t3o_maps(n)?;
    Ok(AbstractEnumeration {
        n,
        labeled: maps.len(),
        classes: count_orbits(n, &maps, false),
        classes_mirror: count_orbits(n, &maps, true),
        maps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// 3-orders of lines, equal to convex-position order types.
    Lt3o,
    /// Order types of fast-growing point sets.
    FastT3o,
}

/// Exact number of distinct labeled maps in the family on `n` elements.
pub fn count_labeled_family(family: Family, n: usize) -> Result<u64> {
    if n > MAX_FAMILY_N {
        return Err(Error::TooLarge(format!(
            "family count needs n <= {MAX_FAMILY_N}, got {n}"
        )));
    }
    match family {
        Family::Lt3o => {
            // no element may lie in conv of three others: prune on that too
            let no_interior = |m: &OrientationMap, q: [usize; 4]| {
                (0..4).all(|apex| {
                    let r: Vec<usize> = (0..4).filter(|&i| i != apex).map(|i| q[i]).collect();
                    !in_conv_unchecked(m, q[apex], r[0], r[1], r[2])
                })
            };
            let maps = enumerate_total(n, &no_interior);
            let count = maps
                .par_iter()
                .filter(|m| matches!(is_convex_position_type(m), Ok(Some(_))))
                .count();
            Ok(count as u64)
        }
        Family::FastT3o => {
            let perms = all_permutations(n);
            let distinct_rules: HashSet<OrientationMap> = perms.iter().map(|pi| rule_map(pi)).collect();
            let all: HashSet<OrientationMap> = distinct_rules
                .par_iter()
                .flat_map_iter(|m| perms.iter().map(move |p| m.relabel(p).expect("valid permutation")))
                .collect();
            Ok(all.len() as u64)
        }
    }
}

/// Number of total maps on `n` elements, for reference.
pub fn total_map_count(n: usize) -> u128 {
    1u128 << triple_count(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::is_t3o;
    use crate::classify::fast::{witness_map, FastGrowingWitness};

    /// Oracle: filter every one of the 2^C(n,3) total maps.
    fn brute_t3o(n: usize) -> Vec<OrientationMap> {
        let t = triple_count(n);
        let mut out: Vec<OrientationMap> = (0u32..(1 << t))
            .map(|bits| {
                let vals: Vec<Sign> = (0..t)
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            Sign::Negative
                        } else {
                            Sign::Positive
                        }
                    })
                    .collect();
                OrientationMap::from_colex_values(n, &vals).unwrap()
            })
            .filter(is_t3o)
            .collect();
        out.sort_by_key(|m| m.packed_bytes());
        out
    }

    #[test]
    fn n3_has_both_signs() {
        let e = enumerate_abstract_t3o(3).unwrap();
        assert_eq!(e.labeled, 2);
        assert_eq!(e.classes, 1);
        assert_eq!(e.classes_mirror, 1);
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for n in 3..=5 {
            assert_eq!(abstract_t3o_maps(n).unwrap(), brute_t3o(n), "n = {n}");
        }
    }

    #[test]
    fn too_large() {
        assert!(matches!(abstract_t3o_maps(7), Err(Error::TooLarge(_))));
        assert!(matches!(count_labeled_family(Family::Lt3o, 8), Err(Error::TooLarge(_))));
    }

    #[test]
    fn lt3o_counts_are_factorials() {
        assert_eq!(count_labeled_family(Family::Lt3o, 3).unwrap(), 2);
        assert_eq!(count_labeled_family(Family::Lt3o, 4).unwrap(), 6);
        assert_eq!(count_labeled_family(Family::Lt3o, 5).unwrap(), 24);
        assert_eq!(count_labeled_family(Family::Lt3o, 6).unwrap(), 120);
    }

    #[test]
    fn fast_count_n4_by_witness_dedupe() {
        let perms = all_permutations(4);
        let mut set = HashSet::new();
        for s in &perms {
            for p in &perms {
                set.insert(witness_map(&FastGrowingWitness {
                    sigma: s.clone(),
                    pi: p.clone(),
                }));
            }
        }
        let c = count_labeled_family(Family::FastT3o, 4).unwrap();
        assert_eq!(c, set.len() as u64);
        assert!(c <= 576);
    }
}
