//! Exact planar points and the orientation predicate.
//!
//! Everything here is generic over a [`Scalar`]. Integer types and
//! rationals give exact answers; floating point types compile but give no
//! exactness guarantee and are not used anywhere in the crate.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{OrientationMap, Sign};
use crate::Rational;

/// Ring element usable as a coordinate.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Signed {}

impl<T: Clone + Debug + PartialEq + PartialOrd + Signed> Scalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Point<U> {
        Point {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

fn sign_of<T: Scalar>(v: &T) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Sign of `det(q - p, r - p)`: `+1` counterclockwise, `-1` clockwise,
/// `0` collinear (including coincident points).
pub fn orient<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> Sign {
    let det = (q.x.clone() - p.x.clone()) * (r.y.clone() - p.y.clone())
        - (q.y.clone() - p.y.clone()) * (r.x.clone() - p.x.clone());
    sign_of(&det)
}

/// Allocation-free orientation for small integer coordinates.
#[inline]
pub fn orient_i64(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> Sign {
    let det = (q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
    Sign::from_ordering(det.cmp(&0))
}

/// Ordered list of pairwise distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSet<T> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self> {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    /// Sub-set in the listed order.
    pub fn select(&self, idx: &[usize]) -> PointSet<T> {
        PointSet {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn orient(&self, a: usize, b: usize, c: usize) -> Sign {
        orient(&self.points[a], &self.points[b], &self.points[c])
    }
}

impl PointSet<i64> {
    pub fn from_integer_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        PointSet::new(pairs.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn to_rational(&self) -> PointSet<Rational> {
        PointSet {
            points: self
                .points
                .iter()
                .map(|p| p.map(|&v| Rational::from_integer(BigInt::from(v))))
                .collect(),
        }
    }
}

impl PointSet<Rational> {
    /// Same set scaled by the lcm of all denominators, as integers. The
    /// scale factor is positive so every orientation is unchanged.
    pub fn to_scaled_integers(&self) -> PointSet<BigInt> {
        let mut l = BigInt::one();
        for p in &self.points {
            l = l.lcm(p.x.denom());
            l = l.lcm(p.y.denom());
        }
        let lr = Rational::from_integer(l);
        PointSet {
            points: self.points.iter().map(|p| p.map(|v| (v * &lr).to_integer())).collect(),
        }
    }
}

/// Order type: `values[(i,j,k)] = orient(p_i, p_j, p_k)`.
pub fn order_type<T: Scalar>(ps: &PointSet<T>) -> OrientationMap {
    OrientationMap::from_fn(ps.len(), |i, j, k| ps.orient(i, j, k))
}

/// Validating variant for raw point lists.
pub fn order_type_of<T: Scalar>(points: Vec<Point<T>>) -> Result<OrientationMap> {
    Ok(order_type(&PointSet::new(points)?))
}

/// First collinear triple in colex order, if any.
pub fn first_collinear<T: Scalar>(ps: &PointSet<T>) -> Option<(usize, usize, usize)> {
    crate::orientation::colex_triples(ps.len()).find(|&(i, j, k)| ps.orient(i, j, k).is_zero())
}

pub fn is_general_position<T: Scalar>(ps: &PointSet<T>) -> bool {
    first_collinear(ps).is_none()
}

/// `x -> M x + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap<T> {
    pub matrix: [[T; 2]; 2],
    pub translation: [T; 2],
}

impl<T: Scalar> AffineMap<T> {
    pub fn identity() -> Self {
        AffineMap {
            matrix: [[T::one(), T::zero()], [T::zero(), T::one()]],
            translation: [T::zero(), T::zero()],
        }
    }

    pub fn linear(a: T, b: T, c: T, d: T) -> Self {
        AffineMap {
            matrix: [[a, b], [c, d]],
            translation: [T::zero(), T::zero()],
        }
    }

    pub fn determinant(&self) -> T {
        let m = &self.matrix;
        m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
    }

    /// `+1` if the map preserves orientation, `-1` if it mirrors.
    pub fn orientation_sign(&self) -> Sign {
        sign_of(&self.determinant())
    }

    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        let m = &self.matrix;
        Point {
            x: m[0][0].clone() * p.x.clone() + m[0][1].clone() * p.y.clone() + self.translation[0].clone(),
            y: m[1][0].clone() * p.x.clone() + m[1][1].clone() * p.y.clone() + self.translation[1].clone(),
        }
    }
}

pub fn apply_affine<T: Scalar>(ps: &PointSet<T>, m: &AffineMap<T>) -> Result<PointSet<T>> {
    if m.determinant().is_zero() {
        return Err(Error::SingularMap);
    }
    // a nonsingular map is injective, so distinctness carries over
    Ok(PointSet {
        points: ps.points.iter().map(|p| m.apply(p)).collect(),
    })
}

/// Vertical compression `(x, y) -> (x, eps * y)` after which the anchors
/// `(0, -h)` and `(0, h)` lie strictly on opposite sides of every line
/// through two of the compressed points.
pub fn flatten_between(ps: &PointSet<Rational>, h: &Rational) -> Result<AffineMap<Rational>> {
    if !h.is_positive() {
        return Err(Error::InvalidInput("anchor height must be positive".into()));
    }
    if let Some(t) = first_collinear(ps) {
        return Err(Error::NonGeneralPosition(t));
    }
    let pts = ps.points();
    let half = Rational::new(1.into(), 2.into());
    let mut bound = Rational::one();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (p, q) = (&pts[i], &pts[j]);
            let dx = &q.x - &p.x;
            if dx.is_zero() {
                return Err(Error::VerticalPairUnresolvable(i, j));
            }
            let dy = &q.y - &p.y;
            // the line through p and q meets x = 0 at (p.y*dx - p.x*dy) / dx
            let cross = (&p.y * &dx - &p.x * &dy).abs();
            if !cross.is_zero() {
                let pair_bound = h * dx.abs() / cross;
                if pair_bound < bound {
                    bound = pair_bound;
                }
            }
        }
    }
    let eps = bound * half;
    let map = AffineMap::linear(Rational::one(), Rational::zero(), Rational::zero(), eps);
    let image = apply_affine(ps, &map)?;
    let below = Point::new(Rational::zero(), -h.clone());
    let above = Point::new(Rational::zero(), h.clone());
    let ipts = image.points();
    for i in 0..ipts.len() {
        for j in i + 1..ipts.len() {
            let s1 = orient(&ipts[i], &ipts[j], &below);
            let s2 = orient(&ipts[i], &ipts[j], &above);
            if s1.is_zero() || s2.is_zero() || s1 == s2 {
                return Err(Error::VerificationFailed(format!(
                    "anchors not separated by the line through points {i} and {j}"
                )));
            }
        }
    }
    Ok(map)
}

/// Compression factor of a map returned by [`flatten_between`].
pub fn flatten_factor(m: &AffineMap<Rational>) -> &Rational {
    &m.matrix[1][1]
}
