//! JSON file formats.
//!
//! * points: `{"n": 3, "points": [[xn, xd, yn, yd], ...]}`; the integer
//!   shorthand `[[x, y], ...]` is accepted on input. Integers that do not
//!   fit in 64 bits are written as decimal strings, and strings are
//!   accepted anywhere an integer is.
//! * maps: `{"n": 3, "triples": [[i, j, k, v], ...]}` with an optional
//!   `"labels"` array.
//! * reports: a [`ClassificationReport`] with `"schema": 1`, witnesses
//!   1-based and canonical codes as lowercase hex.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::axioms::InteriorityCounterexample;
use crate::classify::fast::FastGrowingWitness;
use crate::classify::report::ClassificationReport;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::orientation::{OrientationMap, Sign};
use crate::Rational;

pub const REPORT_SCHEMA: u32 = 1;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => Value::String(v.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_err(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("{s:?} is not an integer"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

fn ratio(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(parse_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn points_to_value(ps: &PointSet<Rational>) -> Value {
    let pts: Vec<Value> = ps
        .points()
        .iter()
        .map(|p| {
            Value::Array(vec![
                int_to_json(p.x.numer()),
                int_to_json(p.x.denom()),
                int_to_json(p.y.numer()),
                int_to_json(p.y.denom()),
            ])
        })
        .collect();
    json!({ "n": ps.len(), "points": pts })
}

pub fn points_to_json(ps: &PointSet<Rational>) -> String {
    pretty(&points_to_value(ps))
}

/// Syntax and shape problems are [`Error::Parse`]; repeated points are
/// [`Error::DuplicatePoint`].
pub fn points_from_json(text: &str) -> Result<PointSet<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let arr = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"points\" array"))?;
    let mut points = Vec::with_capacity(arr.len());
    for (idx, entry) in arr.iter().enumerate() {
        let parts = entry
            .as_array()
            .ok_or_else(|| parse_err(format!("point {idx} is not an array")))?;
        let ints = parts.iter().map(int_from_json).collect::<Result<Vec<_>>>()?;
        let p = match <[BigInt; 4]>::try_from(ints) {
            Ok([xn, xd, yn, yd]) => Point::new(ratio(xn, xd)?, ratio(yn, yd)?),
            Err(ints) => match <[BigInt; 2]>::try_from(ints) {
                Ok([x, y]) => Point::new(Rational::from_integer(x), Rational::from_integer(y)),
                Err(_) => return Err(parse_err(format!("point {idx} must have 2 or 4 integers"))),
            },
        };
        points.push(p);
    }
    if let Some(n) = v.get("n") {
        if n.as_u64() != Some(points.len() as u64) {
            return Err(parse_err(format!(
                "\"n\" is {n} but {} points are listed",
                points.len()
            )));
        }
    }
    PointSet::new(points)
}

pub fn map_to_value(map: &OrientationMap, labels: Option<&[String]>) -> Value {
    let triples: Vec<Value> = map
        .entries()
        .map(|((i, j, k), v)| json!([i, j, k, v.to_i8()]))
        .collect();
    let mut obj = json!({ "n": map.n(), "triples": triples });
    if let Some(l) = labels {
        obj["labels"] = json!(l);
    }
    obj
}

pub fn map_to_json(map: &OrientationMap, labels: Option<&[String]>) -> String {
    pretty(&map_to_value(map, labels))
}

#[derive(Debug, Deserialize)]
struct RawMapFile {
    n: usize,
    triples: Vec<Vec<i64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// Any failure here means the file is malformed, including incomplete or
/// inconsistent triple lists.
pub fn map_from_json(text: &str) -> Result<(OrientationMap, Option<Vec<String>>)> {
    let raw: RawMapFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let mut entries = Vec::with_capacity(raw.triples.len());
    for t in &raw.triples {
        let [i, j, k, v] = <[i64; 4]>::try_from(t.as_slice())
            .map_err(|_| parse_err(format!("triple entry {t:?} must have four integers")))?;
        if i < 0 || j < 0 || k < 0 {
            return Err(parse_err(format!("negative element id in {t:?}")));
        }
        let s = Sign::from_i64(v).map_err(|e| parse_err(e.to_string()))?;
        entries.push(((i as usize, j as usize, k as usize), s));
    }
    if let Some(l) = &raw.labels {
        if l.len() != raw.n {
            return Err(parse_err(format!("{} labels for n = {}", l.len(), raw.n)));
        }
    }
    let map = OrientationMap::from_triples(raw.n, entries).map_err(|e| parse_err(e.to_string()))?;
    Ok((map, raw.labels))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    /// `sigma[element] = position`, positions 1-based.
    pub sigma: Vec<usize>,
    /// `pi[position - 1] = height`, heights 1-based.
    pub pi: Vec<usize>,
}

impl From<&FastGrowingWitness> for WitnessJson {
    fn from(w: &FastGrowingWitness) -> Self {
        WitnessJson {
            sigma: w.sigma.iter().map(|x| x + 1).collect(),
            pi: w.pi.iter().map(|x| x + 1).collect(),
        }
    }
}

impl WitnessJson {
    pub fn to_witness(&self) -> Result<FastGrowingWitness> {
        let dec = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&x| x.checked_sub(1).ok_or_else(|| parse_err("witness entries are 1-based")))
                .collect()
        };
        FastGrowingWitness::new(dec(&self.sigma)?, dec(&self.pi)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub n: usize,
    pub is_total: bool,
    pub is_p3o: bool,
    pub is_t3o: bool,
    pub interiority_counterexample: Option<InteriorityCounterexample>,
    pub is_convex_type: bool,
    pub convex_order: Option<Vec<usize>>,
    pub is_fast_growing: bool,
    pub fast_growing_witness: Option<WitnessJson>,
    pub sees: Option<Vec<Vec<usize>>>,
    pub canonical: String,
    pub canonical_chiral: String,
}

impl From<&ClassificationReport> for ReportJson {
    fn from(r: &ClassificationReport) -> Self {
        ReportJson {
            schema: REPORT_SCHEMA,
            n: r.n,
            is_total: r.is_total,
            is_p3o: r.is_p3o,
            is_t3o: r.is_t3o,
            interiority_counterexample: r.interiority_counterexample,
            is_convex_type: r.is_convex_type,
            convex_order: r.convex_order.clone(),
            is_fast_growing: r.is_fast_growing,
            fast_growing_witness: r.fast_growing_witness.as_ref().map(WitnessJson::from),
            sees: r.sees.clone(),
            canonical: r.canonical.hex(),
            canonical_chiral: r.canonical_chiral.hex(),
        }
    }
}

pub fn report_to_json(r: &ClassificationReport) -> String {
    pretty(&serde_json::to_value(ReportJson::from(r)).expect("report serializes"))
}

pub fn report_from_json(text: &str) -> Result<ReportJson> {
    let r: ReportJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    if r.schema != REPORT_SCHEMA {
        return Err(parse_err(format!("unsupported report schema {}", r.schema)));
    }
    Ok(r)
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::geometry::order_type;

    #[test]
    fn points_shorthand_and_full_form() {
        let a = points_from_json(r#"{"n": 3, "points": [[0, 0], [1, 0], [0, 1]]}"#).unwrap();
        let b = points_from_json(r#"{"points": [[0, 1, 0, 1], [2, 2, 0, 5], ["0", "1", "3", "3"]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(points_from_json(&points_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn huge_integers_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let ps = PointSet::new(vec![
            Point::new(Rational::from_integer(big.clone()), Rational::new(1.into(), 3.into())),
            Point::new(
                Rational::from_integer(BigInt::from(0)),
                Rational::from_integer(BigInt::from(0)),
            ),
        ])
        .unwrap();
        let text = points_to_json(&ps);
        assert!(text.contains("\"123456789012345678901234567890\""));
        assert_eq!(points_from_json(&text).unwrap(), ps);
    }

    #[test]
    fn points_errors() {
        assert!(matches!(points_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            points_from_json(r#"{"points": [[1, 2, 3]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            points_from_json(r#"{"points": [[1, 0, 3, 1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            points_from_json(r#"{"n": 5, "points": [[1, 2]]}"#),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            points_from_json(r#"{"points": [[1, 2], [3, 4], [1, 2]]}"#),
            Err(Error::DuplicatePoint(0, 2))
        );
    }

    #[test]
    fn map_round_trip_with_labels() {
        let m = order_type(&PointSet::from_integer_pairs(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]).unwrap());
        let labels: Vec<String> = "ABCDE".chars().map(String::from).collect();
        let text = map_to_json(&m, Some(&labels));
        let (back, l) = map_from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(l.unwrap(), labels);
    }

    #[test]
    fn map_errors() {
        assert!(matches!(
            map_from_json(r#"{"n": 3, "triples": [[0, 1, 2, 2]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            map_from_json(r#"{"n": 4, "triples": [[0, 1, 2, 1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            map_from_json(r#"{"n": 3, "triples": [[0, 1, 2, 1], [0, 2, 1, 1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(map_from_json(r#"{"n": 3, "triples": [[2, 1, 0, -1]]}"#).is_ok());
    }

    #[test]
    fn report_round_trip() {
        let m = order_type(&PointSet::from_integer_pairs(&[(0, 0), (5, 1), (2, 7), (3, 3)]).unwrap());
        let r = classify(&m).unwrap();
        let back = report_from_json(&report_to_json(&r)).unwrap();
        assert_eq!(back, ReportJson::from(&r));
        let w = back.fast_growing_witness.unwrap().to_witness().unwrap();
        assert_eq!(Some(w), r.fast_growing_witness);
    }
}
