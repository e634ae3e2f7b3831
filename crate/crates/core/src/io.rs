//! JSON documents for networks.
//!
//! ```json
//! { "kind": "theta",
//!   "angles": [a1, a2, a3],
//!   "curves": [ { "points": [[x, y], ...] }, ... ],
//!   "junctions": [ { "position": [x, y], "frame_angle": f }, ... ] }
//! ```
//!
//! `angles` appears only for generalized networks. Closed curves list each
//! point once; the closing edge is implicit.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{DiscreteCurve, Point2};
use crate::network::{Junction, Network, NetworkKind};

pub fn to_value(network: &Network) -> Value {
    let curves: Vec<Value> = network
        .curves()
        .iter()
        .map(|c| {
            let pts: Vec<Value> = c.points().iter().map(|p| json!([p.x, p.y])).collect();
            json!({ "points": pts })
        })
        .collect();
    let junctions: Vec<Value> = network
        .junctions()
        .iter()
        .map(|j| json!({ "position": [j.position.x, j.position.y], "frame_angle": j.frame_angle }))
        .collect();
    let mut doc = Map::new();
    doc.insert("kind".into(), json!(network.kind().as_str()));
    if let Some(a) = network.angles() {
        doc.insert("angles".into(), json!(a));
    }
    doc.insert("curves".into(), Value::Array(curves));
    doc.insert("junctions".into(), Value::Array(junctions));
    Value::Object(doc)
}

pub fn to_json(network: &Network) -> String {
    serde_json::to_string_pretty(&to_value(network)).expect("network values are finite")
}

pub fn from_json(text: &str) -> Result<Network> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse("", format!("malformed JSON: {e}")))?;
    from_value(&value)
}

/// Parses a document and checks its structure (curve and junction counts,
/// prescribed angles). Geometric tolerances are left to `validate`.
pub fn from_value(value: &Value) -> Result<Network> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("", "expected an object"))?;
    let kind_str = obj
        .get("kind")
        .ok_or_else(|| Error::parse("/kind", "missing field"))?
        .as_str()
        .ok_or_else(|| Error::parse("/kind", "expected a string"))?;
    let kind: NetworkKind = kind_str
        .parse()
        .map_err(|_| Error::parse("/kind", format!("unknown kind {kind_str:?}")))?;

    let angles = match obj.get("angles") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let arr = array(v, "/angles")?;
            if arr.len() != 3 {
                return Err(Error::parse("/angles", "expected three angles"));
            }
            let mut a = [0.0; 3];
            for (i, x) in arr.iter().enumerate() {
                a[i] = number(x, &format!("/angles/{i}"))?;
            }
            Some(a)
        }
    };

    let curves_v = array(
        obj.get("curves").ok_or_else(|| Error::parse("/curves", "missing field"))?,
        "/curves",
    )?;
    let mut curves = Vec::with_capacity(curves_v.len());
    for (i, c) in curves_v.iter().enumerate() {
        let path = format!("/curves/{i}/points");
        let pts_v = c
            .get("points")
            .ok_or_else(|| Error::parse(&path, "missing field"))?;
        let pts = array(pts_v, &path)?
            .iter()
            .enumerate()
            .map(|(k, p)| point(p, &format!("{path}/{k}")))
            .collect::<Result<Vec<_>>>()?;
        let curve = DiscreteCurve::new(pts, kind == NetworkKind::Closed)
            .map_err(|e| Error::parse(&path, e.to_string()))?;
        curves.push(curve);
    }

    let junctions = match obj.get("junctions") {
        None => Vec::new(),
        Some(v) => array(v, "/junctions")?
            .iter()
            .enumerate()
            .map(|(i, j)| {
                let base = format!("/junctions/{i}");
                let position = point(
                    j.get("position")
                        .ok_or_else(|| Error::parse(format!("{base}/position"), "missing field"))?,
                    &format!("{base}/position"),
                )?;
                let frame_angle = number(
                    j.get("frame_angle").ok_or_else(|| {
                        Error::parse(format!("{base}/frame_angle"), "missing field")
                    })?,
                    &format!("{base}/frame_angle"),
                )?;
                Ok(Junction {
                    position,
                    frame_angle,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let network = Network::from_parts(kind, curves, junctions, angles);
    network.check_structure()?;
    Ok(network)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::parse(path, "expected a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::parse(path, "non-finite number"))
    }
}

fn point(v: &Value, path: &str) -> Result<Point2> {
    let arr = array(v, path)?;
    if arr.len() != 2 {
        return Err(Error::parse(path, "expected [x, y]"));
    }
    Ok(Point2::new(
        number(&arr[0], &format!("{path}/0"))?,
        number(&arr[1], &format!("{path}/1"))?,
    ))
}
