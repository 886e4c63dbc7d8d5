//! Order types realized by general-position subsets of a small integer
//! grid.
//!
//! Every `n`-subset of the `g x g` grid is visited. Subsets are labeled in
//! grid order, their labeled order types are deduplicated first, and only
//! the distinct labeled maps are canonicalized. Each class keeps the
//! lexicographically smallest realizing subset, so results do not depend
//! on the thread count.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::classify::canonical::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::geometry::{orient_i64, PointSet};
use crate::orientation::{colex_triples, OrientationMap, Sign};
use crate::perm::{binomial, next_combination};

pub const MAX_CENSUS_N: usize = 7;
pub const MAX_CENSUS_GRID: usize = 12;
pub const DEFAULT_MAX_SUBSETS: u128 = 2_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusClass {
    /// Mirror-inclusive canonical code.
    pub code: CanonicalCode,
    /// Realizing grid points, in the labeling that produced `map`.
    pub realization: Vec<(i64, i64)>,
    /// Order type of `realization`.
    pub map: OrientationMap,
    /// Whether the class splits into two chiral classes.
    pub chiral: bool,
}

impl CensusClass {
    pub fn point_set(&self) -> PointSet<i64> {
        PointSet::from_integer_pairs(&self.realization).expect("grid points are distinct")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub grid: usize,
    pub subsets_examined: u128,
    pub general_position_subsets: u128,
    pub classes: BTreeMap<CanonicalCode, CensusClass>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes when mirror images are kept apart.
    pub fn chiral_class_count(&self) -> usize {
        self.classes.values().map(|c| if c.chiral { 2 } else { 1 }).sum()
    }
}

fn grid_point(idx: usize, g: usize) -> (i64, i64) {
    ((idx / g) as i64, (idx % g) as i64)
}

/// Packs the order type of a subset, or `None` if it has a collinear
/// triple.
fn subset_key(pts: &[(i64, i64)], triples: &[(usize, usize, usize)]) -> Option<u128> {
    let mut key = 0u128;
    for (t, &(i, j, k)) in triples.iter().enumerate() {
        let s = orient_i64(pts[i], pts[j], pts[k]);
        if s == Sign::Zero {
            return None;
        }
        key |= (s.code() as u128) << (2 * t);
    }
    Some(key)
}

fn key_to_map(n: usize, key: u128) -> OrientationMap {
    let vals: Vec<Sign> = (0..crate::orientation::triple_count(n))
        .map(|t| Sign::from_code(((key >> (2 * t)) & 3) as u8))
        .collect();
    OrientationMap::from_colex_values(n, &vals).expect("key has the right length")
}

pub fn census_point_types(n: usize, grid: usize) -> Result<Census> {
    census_point_types_with_budget(n, grid, DEFAULT_MAX_SUBSETS)
}

pub fn census_point_types_with_budget(n: usize, grid: usize, max_subsets: u128) -> Result<Census> {
    if n > MAX_CENSUS_N || grid > MAX_CENSUS_GRID {
        return Err(Error::TooLarge(format!(
            "census needs n <= {MAX_CENSUS_N} and grid <= {MAX_CENSUS_GRID}, got n = {n}, grid = {grid}"
        )));
    }
    let cells = grid * grid;
    let total = binomial(cells, n);
    if total > max_subsets {
        return Err(Error::TooLarge(format!(
            "{total} subsets exceed the budget of {max_subsets}"
        )));
    }
    if n < 3 || cells < n {
        return Err(Error::InvalidInput(format!(
            "census needs 3 <= n <= grid^2, got n = {n}, grid = {grid}"
        )));
    }
    let triples: Vec<(usize, usize, usize)> = colex_triples(n).collect();

    // partition by the first point of the subset
    let partial: Vec<(u128, HashMap<u128, Vec<usize>>)> = (0..=cells - n)
        .into_par_iter()
        .map(|first| {
            let mut found: HashMap<u128, Vec<usize>> = HashMap::new();
            let mut general = 0u128;
            let rest_n = cells - first - 1;
            let mut rest: Vec<usize> = (0..n - 1).collect();
            let mut pts = vec![(0i64, 0i64); n];
            pts[0] = grid_point(first, grid);
            loop {
                for (slot, &r) in rest.iter().enumerate() {
                    pts[slot + 1] = grid_point(first + 1 + r, grid);
                }
                if let Some(key) = subset_key(&pts, &triples) {
                    general += 1;
                    found.entry(key).or_insert_with(|| {
                        let mut s = vec![first];
                        s.extend(rest.iter().map(|r| first + 1 + r));
                        s
                    });
                }
                if !next_combination(&mut rest, rest_n) {
                    break;
                }
            }
            (general, found)
        })
        .collect();

    let mut general_position_subsets = 0;
    let mut labeled: HashMap<u128, Vec<usize>> = HashMap::new();
    for (g, found) in partial {
        general_position_subsets += g;
        for (key, subset) in found {
            labeled
                .entry(key)
                .and_modify(|s| {
                    if subset < *s {
                        *s = subset.clone();
                    }
                })
                .or_insert(subset);
        }
    }

    let mut labeled: Vec<(u128, Vec<usize>)> = labeled.into_iter().collect();
    labeled.sort();
    let canon: Vec<(CanonicalCode, bool, Vec<usize>, OrientationMap)> = labeled
        .into_par_iter()
        .map(|(key, subset)| {
            let map = key_to_map(n, key);
            let code = canonical_form(&map, true).expect("n within limits");
            let plain = canonical_form(&map, false).expect("n within limits");
            let mirrored = canonical_form(&map.negated(), false).expect("n within limits");
            (code, plain != mirrored, subset, map)
        })
        .collect();

    let mut classes: BTreeMap<CanonicalCode, CensusClass> = BTreeMap::new();
    for (code, chiral, subset, map) in canon {
        let realization: Vec<(i64, i64)> = subset.iter().map(|&i| grid_point(i, grid)).collect();
        let better = classes.get(&code).is_none_or(|c| {
            let existing: Vec<usize> = c
                .realization
                .iter()
                .map(|&(x, y)| x as usize * grid + y as usize)
                .collect();
            subset < existing
        });
        if better {
            classes.insert(
                code.clone(),
                CensusClass {
                    code,
                    realization,
                    map,
                    chiral,
                },
            );
        }
    }
    Ok(Census {
        n,
        grid,
        subsets_examined: total,
        general_position_subsets,
        classes,
    })
}

/// Censuses for every grid size in `grids`. Small grids miss classes, so the
/// census counts as stable once the two largest grids give the same class set.
#[derive(Debug, Clone)]
pub struct StabilizedCensus {
    pub runs: Vec<Census>,
    pub stable: bool,
}

impl StabilizedCensus {
    pub fn last(&self) -> &Census {
        self.runs.last().expect("at least one grid size")
    }

    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.runs.iter().map(|c| (c.grid, c.class_count())).collect()
    }
}

pub fn census_stabilized(n: usize, grids: std::ops::RangeInclusive<usize>) -> Result<StabilizedCensus> {
    if grids.is_empty() {
        return Err(Error::InvalidInput("empty grid range".into()));
    }
    let runs = grids.map(|g| census_point_types(n, g)).collect::<Result<Vec<_>>>()?;
    let keys: Vec<Vec<&CanonicalCode>> = runs.iter().map(|c| c.classes.keys().collect()).collect();
    let stable = keys.len() >= 2 && keys[keys.len() - 2] == keys[keys.len() - 1];
    Ok(StabilizedCensus { runs, stable })
}
