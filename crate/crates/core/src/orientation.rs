//! Triple orientation maps.
//!
//! An [`OrientationMap`] assigns a [`Sign`] to every unordered triple of the
//! elements `0..n`. The value of an *ordered* triple is the stored value of
//! its sorted form times the parity of the sorting permutation, so
//! `o(a,b,c) = o(c,a,b) = o(b,c,a) = -o(a,c,b)` holds by construction.
//!
//! Storage is two bits per sorted triple in colexicographic order. The colex
//! index of `i < j < k` is `C(k,3) + C(j,2) + i`, so the map restricted to
//! `0..m` is a prefix of the map on `0..n`.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense element index in `0..n`.
pub type ElementId = usize;

/// Orientation value of a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            -1 => Ok(Sign::Negative),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Positive),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_ordering(ord: std::cmp::Ordering) -> Sign {
        match ord {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// Two-bit storage code. The order `Zero < Positive < Negative` of these
    /// codes is the order canonical codes are minimized in.
    pub(crate) fn code(self) -> u8 {
        match self {
            Sign::Zero => 0,
            Sign::Positive => 1,
            Sign::Negative => 2,
        }
    }

    pub(crate) fn from_code(c: u8) -> Sign {
        match c {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_ordering((self.to_i8() * rhs.to_i8()).cmp(&0))
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;
    fn try_from(v: i8) -> Result<Sign> {
        Sign::from_i64(v as i64)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Negative => write!(f, "-1"),
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "+1"),
        }
    }
}

/// A triple in sorted form plus the sign of the permutation that sorts the
/// original ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedTriple {
    pub sorted: (ElementId, ElementId, ElementId),
    pub parity: Sign,
}

impl SignedTriple {
    pub fn new(a: ElementId, b: ElementId, c: ElementId) -> Result<SignedTriple> {
        if a == b || b == c || a == c {
            return Err(Error::DuplicateElement(vec![a, b, c]));
        }
        let mut v = [a, b, c];
        let mut parity = Sign::Positive;
        // three-element bubble sort, one sign flip per swap
        for (x, y) in [(0, 1), (1, 2), (0, 1)] {
            if v[x] > v[y] {
                v.swap(x, y);
                parity = -parity;
            }
        }
        Ok(SignedTriple {
            sorted: (v[0], v[1], v[2]),
            parity,
        })
    }

    pub fn colex_index(&self) -> usize {
        colex_index(self.sorted.0, self.sorted.1, self.sorted.2)
    }
}

pub fn make_signed_triple(a: ElementId, b: ElementId, c: ElementId) -> Result<SignedTriple> {
    SignedTriple::new(a, b, c)
}

#[inline]
pub(crate) fn binom2(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

#[inline]
pub(crate) fn binom3(m: usize) -> usize {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// Colex rank of `i < j < k`.
#[inline]
pub fn colex_index(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    binom3(k) + binom2(j) + i
}

/// Number of sorted triples over `n` elements.
pub fn triple_count(n: usize) -> usize {
    binom3(n)
}

/// Iterates sorted triples of `0..n` in colex order.
pub fn colex_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (2..n).flat_map(|k| (1..k).flat_map(move |j| (0..j).map(move |i| (i, j, k))))
}

const PER_WORD: usize = 32;

/// Orientation values for all sorted triples of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationMap {
    n: usize,
    words: Vec<u64>,
}

impl OrientationMap {
    /// Map with every triple set to `fill`.
    pub fn filled(n: usize, fill: Sign) -> OrientationMap {
        let len = triple_count(n);
        let mut m = OrientationMap {
            n,
            words: vec![0; len.div_ceil(PER_WORD)],
        };
        if fill != Sign::Zero {
            for idx in 0..len {
                m.set_index(idx, fill);
            }
        }
        m
    }

    /// Builds a map from values listed in colex order.
    pub fn from_colex_values(n: usize, values: &[Sign]) -> Result<OrientationMap> {
        if values.len() != triple_count(n) {
            return Err(Error::InvalidInput(format!(
                "expected {} triple values for n = {n}, got {}",
                triple_count(n),
                values.len()
            )));
        }
        let mut m = OrientationMap::filled(n, Sign::Zero);
        for (idx, &v) in values.iter().enumerate() {
            m.set_index(idx, v);
        }
        Ok(m)
    }

    /// Builds a map by evaluating `f` on every sorted triple.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Sign) -> OrientationMap {
        let mut m = OrientationMap::filled(n, Sign::Zero);
        for (idx, (i, j, k)) in colex_triples(n).enumerate() {
            m.set_index(idx, f(i, j, k));
        }
        m
    }

    /// Validating constructor from arbitrary ordered triples. Redundant
    /// entries are allowed as long as they agree after parity adjustment.
    pub fn from_triples(
        n: usize,
        entries: impl IntoIterator<Item = ((ElementId, ElementId, ElementId), Sign)>,
    ) -> Result<OrientationMap> {
        let len = triple_count(n);
        let mut seen: Vec<Option<Sign>> = vec![None; len];
        for ((a, b, c), v) in entries {
            for id in [a, b, c] {
                if id >= n {
                    return Err(Error::OutOfRange { id, n });
                }
            }
            let t = SignedTriple::new(a, b, c)?;
            let stored = v * t.parity;
            let idx = t.colex_index();
            match seen[idx] {
                Some(prev) if prev != stored => return Err(Error::InconsistentEntry(t.sorted)),
                _ => seen[idx] = Some(stored),
            }
        }
        let mut m = OrientationMap::filled(n, Sign::Zero);
        for (idx, t) in colex_triples(n).enumerate() {
            match seen[idx] {
                Some(v) => m.set_index(idx, v),
                None => return Err(Error::IncompleteMap(t)),
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get_index(&self, idx: usize) -> Sign {
        let w = self.words[idx / PER_WORD];
        Sign::from_code(((w >> (2 * (idx % PER_WORD))) & 3) as u8)
    }

    #[inline]
    pub(crate) fn set_index(&mut self, idx: usize, v: Sign) {
        let shift = 2 * (idx % PER_WORD);
        let w = &mut self.words[idx / PER_WORD];
        *w = (*w & !(3u64 << shift)) | ((v.code() as u64) << shift);
    }

    /// Value of the sorted triple `i < j < k`.
    #[inline]
    pub fn sorted(&self, i: usize, j: usize, k: usize) -> Sign {
        self.get_index(colex_index(i, j, k))
    }

    /// Value of an ordered triple; unchecked apart from debug assertions.
    #[inline]
    pub fn at(&self, a: usize, b: usize, c: usize) -> Sign {
        let (mut x, mut y, mut z) = (a, b, c);
        let mut flip = false;
        if x > y {
            std::mem::swap(&mut x, &mut y);
            flip = !flip;
        }
        if y > z {
            std::mem::swap(&mut y, &mut z);
            flip = !flip;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
            flip = !flip;
        }
        let v = self.sorted(x, y, z);
        if flip {
            -v
        } else {
            v
        }
    }

    /// Checked value of an ordered triple.
    pub fn get(&self, a: ElementId, b: ElementId, c: ElementId) -> Result<Sign> {
        for id in [a, b, c] {
            if id >= self.n {
                return Err(Error::OutOfRange { id, n: self.n });
            }
        }
        let t = SignedTriple::new(a, b, c)?;
        Ok(self.get_index(t.colex_index()) * t.parity)
    }

    /// Values in colex order.
    pub fn values(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..triple_count(self.n)).map(|idx| self.get_index(idx))
    }

    /// `(sorted triple, value)` pairs in colex order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), Sign)> + '_ {
        colex_triples(self.n).zip(self.values())
    }

    pub fn is_total(&self) -> bool {
        self.values().all(|v| !v.is_zero())
    }

    pub fn zero_triples(&self) -> Vec<(usize, usize, usize)> {
        self.entries().filter(|(_, v)| v.is_zero()).map(|(t, _)| t).collect()
    }

    /// Globally sign-flipped map (the mirror image).
    pub fn negated(&self) -> OrientationMap {
        let mut m = self.clone();
        for idx in 0..triple_count(self.n) {
            m.set_index(idx, -self.get_index(idx));
        }
        m
    }

    /// The map `m'` with `m'(perm[a], perm[b], perm[c]) = m(a, b, c)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<OrientationMap> {
        if perm.len() != self.n || !crate::perm::is_permutation(perm) {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        let mut inv = vec![0; self.n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        Ok(OrientationMap::from_fn(self.n, |i, j, k| {
            self.at(inv[i], inv[j], inv[k])
        }))
    }

    /// Restriction to the listed elements, relabeled `0..sub.len()` in the
    /// listed order.
    pub fn restrict(&self, sub: &[usize]) -> OrientationMap {
        OrientationMap::from_fn(sub.len(), |i, j, k| self.at(sub[i], sub[j], sub[k]))
    }

    /// Packed two-bit string, first triple in the high bits of the first
    /// byte. Byte order equals colex-lexicographic order of the values.
    pub fn packed_bytes(&self) -> Vec<u8> {
        let len = triple_count(self.n);
        let mut out = vec![0u8; len.div_ceil(4)];
        for idx in 0..len {
            out[idx / 4] |= self.get_index(idx).code() << (6 - 2 * (idx % 4));
        }
        out
    }

    pub fn from_packed_bytes(n: usize, bytes: &[u8]) -> Result<OrientationMap> {
        let len = triple_count(n);
        if bytes.len() != len.div_ceil(4) {
            return Err(Error::InvalidInput("packed length does not match n".into()));
        }
        let mut m = OrientationMap::filled(n, Sign::Zero);
        for idx in 0..len {
            let c = (bytes[idx / 4] >> (6 - 2 * (idx % 4))) & 3;
            if c == 3 {
                return Err(Error::InvalidInput("invalid trit code 3".into()));
            }
            m.set_index(idx, Sign::from_code(c));
        }
        Ok(m)
    }

    /// Compact key for hashing small maps (`n <= 8`).
    pub fn key128(&self) -> Option<u128> {
        if triple_count(self.n) > 64 {
            return None;
        }
        let mut key = 0u128;
        for (w, &word) in self.words.iter().enumerate() {
            key |= (word as u128) << (64 * w);
        }
        Some(key)
    }
}

impl fmt::Debug for OrientationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientationMap(n={}, [", self.n)?;
        for (i, v) in self.values().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}",
                match v {
                    Sign::Negative => '-',
                    Sign::Zero => '0',
                    Sign::Positive => '+',
                }
            )?;
        }
        write!(f, "])")
    }
}

pub fn omap_get(map: &OrientationMap, a: ElementId, b: ElementId, c: ElementId) -> Result<Sign> {
    map.get(a, b, c)
}

pub fn omap_from_triples(
    n: usize,
    entries: impl IntoIterator<Item = ((ElementId, ElementId, ElementId), Sign)>,
) -> Result<OrientationMap> {
    OrientationMap::from_triples(n, entries)
}

pub fn is_total(map: &OrientationMap) -> bool {
    map.is_total()
}
