//! Convex-position order types (equivalently, 3-orders of lines in
//! general position).

use crate::axioms::{in_conv_unchecked, satisfies_interiority};
use crate::error::{Error, Result};
use crate::orientation::{OrientationMap, Sign};

/// Some element lies in `conv` of three others; returns `(d, a, b, c)`.
pub fn first_interior_element(map: &OrientationMap) -> Option<(usize, usize, usize, usize)> {
    let n = map.n();
    for d in 3..n {
        for c in 2..d {
            for b in 1..c {
                for a in 0..b {
                    let q = [a, b, c, d];
                    for apex in 0..4 {
                        let rest: Vec<usize> = (0..4).filter(|&i| i != apex).map(|i| q[i]).collect();
                        if in_conv_unchecked(map, q[apex], rest[0], rest[1], rest[2]) {
                            return Some((q[apex], rest[0], rest[1], rest[2]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `Some(cyclic order)` iff the map is the order type of points in convex
/// position. The cyclic order starts at element 0, lists the rest as
/// element 0 sees them, and is checked to make every cyclically increasing
/// triple positive.
pub fn is_convex_position_type(map: &OrientationMap) -> Result<Option<Vec<usize>>> {
    if !map.is_total() {
        return Err(Error::NotTotal);
    }
    let n = map.n();
    if n == 0 {
        return Ok(Some(vec![]));
    }
    if !satisfies_interiority(map) || first_interior_element(map).is_some() {
        return Ok(None);
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut wins = vec![0usize; n];
    for &a in &rest {
        for &b in &rest {
            if a != b && map.at(0, a, b) == Sign::Positive {
                wins[a] += 1;
            }
        }
    }
    rest.sort_by(|&a, &b| wins[b].cmp(&wins[a]).then(a.cmp(&b)));
    let mut cyclic = vec![0];
    cyclic.extend(rest);
    for k in 2..n {
        for j in 1..k {
            for i in 0..j {
                if map.at(cyclic[i], cyclic[j], cyclic[k]) != Sign::Positive {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(cyclic))
}
