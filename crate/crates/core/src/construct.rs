//! Explicit point-set constructions with exact coordinates.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::classify::canonical::canonical_form;
use crate::classify::fast::rule_orientation;
use crate::error::{Error, Result};
use crate::geometry::{first_collinear, order_type, orient, Point, PointSet};
use crate::orientation::{colex_triples, OrientationMap, Sign};
use crate::perm::{binomial, is_permutation, next_combination};
use crate::Rational;

pub const DEFAULT_AMPLIFY_BUDGET: usize = 10_000;
pub const EXHAUSTIVE_VERIFY_LIMIT: usize = 200;
pub const DEFAULT_DENSITY_BUDGET: u128 = 10_000_000;

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Points `(i, base^(pi[i] + 1))` for positions `i = 1..n` (`pi` 0-based).
/// Fails if their order type differs from the combinatorial rule, which
/// can only happen for small bases (`base > n` always suffices).
pub fn build_fast_growing_points(pi: &[usize], base: u64) -> Result<PointSet<Rational>> {
    if base < 2 {
        return Err(Error::InvalidInput("base must be at least 2".into()));
    }
    if !is_permutation(pi) {
        return Err(Error::InvalidInput(format!("{pi:?} is not a permutation")));
    }
    let b = BigInt::from(base);
    let ints: Vec<Point<BigInt>> = pi
        .iter()
        .enumerate()
        .map(|(i, &h)| Point::new(BigInt::from(i as u64 + 1), num_traits::pow(b.clone(), h + 1)))
        .collect();
    for (i, j, k) in colex_triples(pi.len()) {
        if orient(&ints[i], &ints[j], &ints[k]) != rule_orientation(i, j, k, pi) {
            return Err(Error::BaseTooSmall {
                base,
                triple: (i, j, k),
            });
        }
    }
    PointSet::new(
        ints.into_iter()
            .map(|p| p.map(|v| Rational::from_integer(v.clone())))
            .collect(),
    )
}

/// `n` points `(i, i^2)` on a parabola, in convex position.
pub fn convex_ngon(n: usize) -> Result<PointSet<Rational>> {
    if n < 3 {
        return Err(Error::InvalidInput("a polygon needs at least 3 vertices".into()));
    }
    PointSet::new((0..n as i64).map(|i| Point::new(rat(i), rat(i * i))).collect())
}

/// Corners of a square in counterclockwise order, then its center.
pub fn square_center() -> PointSet<Rational> {
    PointSet::new(
        [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
            .iter()
            .map(|&(x, y)| Point::new(rat(x), rat(y)))
            .collect(),
    )
    .expect("distinct corners")
}

/// Recursive replacement of every seed point by a shrunken copy of the
/// previous level. Point `t` belongs to top-level group `t / n^(k-1)`; more
/// generally its base-`n` digits, most significant first, are its path in
/// the group tree.
#[derive(Debug, Clone)]
pub struct AmplifiedSet {
    pub base_points: PointSet<Rational>,
    pub base_map: OrientationMap,
    pub k: u32,
    pub points: PointSet<Rational>,
    /// Scale factor used when building level `i + 2` from level `i + 1`.
    pub scales: Vec<Rational>,
}

impl AmplifiedSet {
    pub fn base_n(&self) -> usize {
        self.base_points.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Group indices from the top level down.
    pub fn group_path(&self, idx: usize) -> Vec<usize> {
        let n = self.base_n();
        let mut digits = Vec::with_capacity(self.k as usize);
        let mut t = idx;
        for _ in 0..self.k {
            digits.push(t % n);
            t /= n;
        }
        digits.reverse();
        digits
    }

    /// `((n - 1) / n)^k`: the largest fraction of points a copy-free subset
    /// can keep.
    pub fn implied_alpha(&self) -> Rational {
        let n = self.base_n() as i64;
        num_traits::pow(Rational::new((n - 1).into(), n.into()), self.k as usize)
    }

    /// Subsets strictly larger than this always contain a copy.
    pub fn density_threshold(&self) -> Rational {
        self.implied_alpha() * rat(self.len() as i64)
    }

    /// Copy-free subset of size `(n - 1)^k`: at every node of the group
    /// tree the last child is dropped.
    pub fn copy_free_subset(&self) -> Vec<usize> {
        let n = self.base_n();
        (0..self.len())
            .filter(|&t| self.group_path(t).iter().all(|&d| d != n - 1))
            .collect()
    }
}

fn bounding_center(ps: &[Point<Rational>]) -> (Point<Rational>, Rational) {
    let min_x = ps.iter().map(|p| &p.x).min().expect("nonempty").clone();
    let max_x = ps.iter().map(|p| &p.x).max().expect("nonempty").clone();
    let min_y = ps.iter().map(|p| &p.y).min().expect("nonempty").clone();
    let max_y = ps.iter().map(|p| &p.y).max().expect("nonempty").clone();
    let two = rat(2);
    let radius = std::cmp::max(&max_x - &min_x, &max_y - &min_y) / &two;
    (Point::new((min_x + max_x) / &two, (min_y + max_y) / two), radius)
}

/// Largest sup-norm displacement of each point that keeps every triple's
/// orientation. Moving each point by at most `r` changes `det(u, v)` by at
/// most `4 r D + 8 r^2` where `D` bounds the l1 length of differences, and
/// `r = min |det| / (12 D)` keeps that below `min |det|`.
fn safe_displacement(ps: &PointSet<Rational>) -> Rational {
    let pts = ps.points();
    let mut min_det: Option<Rational> = None;
    for (i, j, k) in colex_triples(pts.len()) {
        let (p, q, r) = (&pts[i], &pts[j], &pts[k]);
        let det = ((&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)).abs();
        if min_det.as_ref().is_none_or(|m| det < *m) {
            min_det = Some(det);
        }
    }
    let mut diam = Rational::zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l1 = (&pts[i].x - &pts[j].x).abs() + (&pts[i].y - &pts[j].y).abs();
            if l1 > diam {
                diam = l1;
            }
        }
    }
    min_det.expect("at least one triple") / (rat(12) * diam)
}

pub fn amplify(ps: &PointSet<Rational>, k: u32) -> Result<AmplifiedSet> {
    amplify_with_budget(ps, k, DEFAULT_AMPLIFY_BUDGET)
}

pub fn amplify_with_budget(ps: &PointSet<Rational>, k: u32, budget: usize) -> Result<AmplifiedSet> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::InvalidInput("amplification needs at least 3 seed points".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("depth k must be at least 1".into()));
    }
    let size = (n as u128).checked_pow(k).filter(|&s| s <= budget as u128);
    let Some(size) = size else {
        return Err(Error::TooLarge(format!("{n}^{k} points exceed the budget of {budget}")));
    };
    if let Some(t) = first_collinear(ps) {
        return Err(Error::NonGeneralPosition(t));
    }
    let r = safe_displacement(ps);
    let mut level: Vec<Point<Rational>> = ps.points().to_vec();
    let mut scales = Vec::new();
    for _ in 1..k {
        let (center, radius) = bounding_center(&level);
        let s = &r / &radius;
        let mut next = Vec::with_capacity(level.len() * n);
        for p in ps.points() {
            for q in &level {
                next.push(Point::new(
                    &p.x + &s * (&q.x - &center.x),
                    &p.y + &s * (&q.y - &center.y),
                ));
            }
        }
        scales.push(s);
        level = next;
    }
    debug_assert_eq!(level.len() as u128, size);
    let amp = AmplifiedSet {
        base_points: ps.clone(),
        base_map: order_type(ps),
        k,
        points: PointSet::new(level)?,
        scales,
    };
    if amp.len() <= EXHAUSTIVE_VERIFY_LIMIT {
        verify_transversals(&amp)?;
    }
    Ok(amp)
}

/// Every triple drawn from three distinct top-level groups has the
/// orientation of its three parents.
pub fn verify_transversals(amp: &AmplifiedSet) -> Result<()> {
    let ints = amp.points.to_scaled_integers();
    let group_size = amp.len() / amp.base_n();
    let bad = colex_triples(amp.len()).par_bridge().find_any(|&(i, j, k)| {
        let (gi, gj, gk) = (i / group_size, j / group_size, k / group_size);
        gi != gj && gj != gk && gi != gk && ints.orient(i, j, k) != amp.base_map.at(gi, gj, gk)
    });
    match bad {
        Some(t) => Err(Error::VerificationFailed(format!(
            "cross-group triple {t:?} lost its parent orientation"
        ))),
        None => Ok(()),
    }
}

/// What counts as a copy of the seed inside a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyMode {
    /// One point from each child group of a single node of the group tree,
    /// with the seed's order type under the inherited labeling.
    Structural,
    /// Any `n` points with the seed's order type up to relabeling.
    AnyOrderType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityOutcome {
    pub holds: bool,
    /// Lexicographically first subset without a copy.
    pub failing_subset: Option<Vec<usize>>,
    pub subsets_checked: u128,
}

struct CopyFinder<'a> {
    amp: &'a AmplifiedSet,
    orient: Box<dyn Fn(usize, usize, usize) -> Sign + Sync + 'a>,
    base_code: Option<crate::classify::CanonicalCode>,
}

impl CopyFinder<'_> {
    fn structural(&self, member: &[bool], start: usize, size: usize) -> bool {
        let n = self.amp.base_n();
        if size < n {
            return false;
        }
        let child = size / n;
        let groups: Vec<Vec<usize>> = (0..n)
            .map(|c| {
                (start + c * child..start + (c + 1) * child)
                    .filter(|&t| member[t])
                    .collect()
            })
            .collect();
        if groups.iter().all(|g| !g.is_empty()) {
            let mut pick = Vec::with_capacity(n);
            if self.transversal(&groups, &mut pick) {
                return true;
            }
        }
        (0..n).any(|c| !groups[c].is_empty() && self.structural(member, start + c * child, child))
    }

    /// Depth-first choice of one point per group, pruning on the first
    /// triple that disagrees with the seed.
    fn transversal(&self, groups: &[Vec<usize>], pick: &mut Vec<usize>) -> bool {
        let c = pick.len();
        if c == groups.len() {
            return true;
        }
        for &t in &groups[c] {
            let ok =
                (1..c).all(|j| (0..j).all(|i| (self.orient)(pick[i], pick[j], t) == self.amp.base_map.sorted(i, j, c)));
            if ok {
                pick.push(t);
                if self.transversal(groups, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }

    fn any_order_type(&self, subset: &[usize]) -> bool {
        let n = self.amp.base_n();
        let base = self.base_code.as_ref().expect("set for this mode");
        let mut c: Vec<usize> = (0..n).collect();
        loop {
            let chosen: Vec<usize> = c.iter().map(|&i| subset[i]).collect();
            let m = OrientationMap::from_fn(n, |i, j, k| (self.orient)(chosen[i], chosen[j], chosen[k]));
            if m.is_total() && canonical_form(&m, false).map(|x| x == *base).unwrap_or(false) {
                return true;
            }
            if !next_combination(&mut c, subset.len()) {
                return false;
            }
        }
    }

    fn has_copy(&self, subset: &[usize], mode: CopyMode) -> bool {
        match mode {
            CopyMode::Structural => {
                let mut member = vec![false; self.amp.len()];
                for &t in subset {
                    member[t] = true;
                }
                self.structural(&member, 0, self.amp.len())
            }
            CopyMode::AnyOrderType => self.any_order_type(subset),
        }
    }
}

/// Does every `subset_size`-subset of the amplified set contain a copy of
/// the seed? Brute force over all subsets in lexicographic order.
pub fn subset_density_check(amp: &AmplifiedSet, subset_size: usize, mode: CopyMode) -> Result<DensityOutcome> {
    subset_density_check_with_budget(amp, subset_size, mode, DEFAULT_DENSITY_BUDGET)
}

pub fn subset_density_check_with_budget(
    amp: &AmplifiedSet,
    subset_size: usize,
    mode: CopyMode,
    budget: u128,
) -> Result<DensityOutcome> {
    let total_points = amp.len();
    if subset_size > total_points {
        return Err(Error::InvalidInput(format!(
            "subset size {subset_size} exceeds the {total_points} available points"
        )));
    }
    let count = binomial(total_points, subset_size);
    if count > budget {
        return Err(Error::TooLarge(format!(
            "{count} subsets exceed the budget of {budget}"
        )));
    }
    if mode == CopyMode::AnyOrderType && total_points > EXHAUSTIVE_VERIFY_LIMIT {
        return Err(Error::TooLarge(format!(
            "order-type copy search needs at most {EXHAUSTIVE_VERIFY_LIMIT} points"
        )));
    }
    if subset_size == 0 {
        return Ok(DensityOutcome {
            holds: false,
            failing_subset: Some(vec![]),
            subsets_checked: 1,
        });
    }

    let ints = amp.points.to_scaled_integers();
    let orient_fn: Box<dyn Fn(usize, usize, usize) -> Sign + Sync> = if total_points <= EXHAUSTIVE_VERIFY_LIMIT {
        let full = order_type(&ints);
        Box::new(move |a, b, c| full.at(a, b, c))
    } else {
        Box::new(move |a, b, c| ints.orient(a, b, c))
    };
    let finder = CopyFinder {
        amp,
        orient: orient_fn,
        base_code: match mode {
            CopyMode::AnyOrderType => Some(canonical_form(&amp.base_map, false)?),
            CopyMode::Structural => None,
        },
    };

    let failing = (0..=total_points - subset_size)
        .into_par_iter()
        .find_map_first(|first| {
            let rest_size = subset_size - 1;
            let pool = total_points - first - 1;
            let mut rest: Vec<usize> = (0..rest_size).collect();
            let mut subset = vec![0; subset_size];
            subset[0] = first;
            loop {
                for (slot, &r) in rest.iter().enumerate() {
                    subset[slot + 1] = first + 1 + r;
                }
                if !finder.has_copy(&subset, mode) {
                    return Some(subset.clone());
                }
                if rest_size == 0 || !next_combination(&mut rest, pool) {
                    return None;
                }
            }
        });
    Ok(DensityOutcome {
        holds: failing.is_none(),
        failing_subset: failing,
        subsets_checked: count,
    })
}

/// Whether one specific subset contains a copy of the seed.
pub fn contains_copy(amp: &AmplifiedSet, subset: &[usize], mode: CopyMode) -> Result<bool> {
    if subset.iter().any(|&t| t >= amp.len()) {
        return Err(Error::InvalidInput("subset index out of range".into()));
    }
    let ints = amp.points.to_scaled_integers();
    let finder = CopyFinder {
        amp,
        orient: Box::new(move |a, b, c| ints.orient(a, b, c)),
        base_code: match mode {
            CopyMode::AnyOrderType => Some(canonical_form(&amp.base_map, false)?),
            CopyMode::Structural => None,
        },
    };
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(finder.has_copy(&sorted, mode))
}
