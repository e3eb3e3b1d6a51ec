//! JSON documents: parsing into library types and canonical emission.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise; both forms are accepted on input. Keys come out sorted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use qtoric::charmap::{CharacteristicMap, IsotropyMap, Mod2Map};
use qtoric::cobord4::Polygon4;
use qtoric::{CombPolytope, IntVec, SignVec};
use serde_json::{json, Map, Value};

/// A document that failed to parse, or parsed into an invalid object.
#[derive(Debug)]
pub enum DocError {
    /// Not JSON, wrong shape, or an unknown kind.
    Parse(String),
    /// Well-formed, but the library rejected the object.
    Invalid(String),
}

#[derive(Debug)]
pub enum Document {
    Polytope(CombPolytope),
    Isotropy(IsotropyMap),
    Characteristic(CharacteristicMap),
    Mod2(Mod2Map),
    Polygon4(Polygon4),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Polytope(_) => "polytope",
            Document::Isotropy(_) => "isotropy",
            Document::Characteristic(_) => "characteristic",
            Document::Mod2(_) => "mod2",
            Document::Polygon4(_) => "polygon4",
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Polytope(p) => polytope_value(p),
            Document::Isotropy(m) => map_value("isotropy", m.polytope(), m.assign()),
            Document::Characteristic(c) => map_value("characteristic", c.polytope(), c.assign()),
            Document::Mod2(m) => mod2_value(m),
            Document::Polygon4(p) => polygon_value(p),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> DocError {
    DocError::Parse(msg.into())
}

fn invalid(e: impl std::fmt::Display) -> DocError {
    DocError::Invalid(e.to_string())
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("not JSON: {e}")))?;
    document_from_value(&v)
}

pub fn document_from_value(v: &Value) -> Result<Document, DocError> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("document must be an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing string field \"kind\""))?;
    match kind {
        "polytope" => Ok(Document::Polytope(parse_polytope(obj)?)),
        "isotropy" => {
            let (p, assign) = parse_assigned(obj)?;
            IsotropyMap::from_ids(p, &assign)
                .map(Document::Isotropy)
                .map_err(invalid)
        }
        "characteristic" => {
            let (p, assign) = parse_assigned(obj)?;
            CharacteristicMap::from_ids(p, &assign)
                .map(Document::Characteristic)
                .map_err(invalid)
        }
        "mod2" => parse_mod2(obj).map(Document::Mod2),
        "polygon4" => parse_polygon(obj).map(Document::Polygon4),
        other => Err(parse_err(format!("unknown kind {other:?}"))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, DocError> {
    obj.get(name)
        .ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn parse_int(v: &Value) -> Result<BigInt, DocError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(parse_err(format!("not an integer: {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("not an integer: {s:?}"))),
        other => Err(parse_err(format!("not an integer: {other}"))),
    }
}

fn parse_int_list(v: &Value) -> Result<Vec<BigInt>, DocError> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("expected an integer list, found {v}")))?
        .iter()
        .map(parse_int)
        .collect()
}

fn parse_sign_vec(v: &Value) -> Result<SignVec, DocError> {
    SignVec::new(IntVec::new(parse_int_list(v)?)).map_err(invalid)
}

fn parse_string_list(v: &Value) -> Result<Vec<String>, DocError> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("expected a list of ids, found {v}")))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err(format!("ids must be strings, found {x}")))
        })
        .collect()
}

fn parse_polytope(obj: &Map<String, Value>) -> Result<CombPolytope, DocError> {
    let dim = field(obj, "dim")?
        .as_u64()
        .ok_or_else(|| parse_err("\"dim\" must be a nonnegative integer"))? as usize;
    let vertices = parse_string_list(field(obj, "vertices")?)?;
    let facets = field(obj, "facets")?
        .as_object()
        .ok_or_else(|| parse_err("\"facets\" must map facet ids to vertex lists"))?
        .iter()
        .map(|(k, v)| Ok((k.clone(), parse_string_list(v)?)))
        .collect::<Result<Vec<_>, DocError>>()?;
    let coords = match obj.get("coords") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let c = c
                .as_object()
                .ok_or_else(|| parse_err("\"coords\" must map vertex ids to coordinates"))?;
            let mut out = Vec::with_capacity(vertices.len());
            for id in &vertices {
                let list = c
                    .get(id)
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err(format!("no coordinates for vertex {id:?}")))?;
                let point = list
                    .iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(point);
            }
            if let Some(extra) = c.keys().find(|k| !vertices.contains(k)) {
                return Err(parse_err(format!(
                    "coordinates for unknown vertex {extra:?}"
                )));
            }
            Some(out)
        }
    };
    CombPolytope::new(dim, vertices, facets, coords).map_err(invalid)
}

fn parse_rational(v: &Value) -> Result<BigRational, DocError> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("not a rational: {s:?}"))),
        Value::Number(_) => Ok(BigRational::from_integer(parse_int(v)?)),
        other => Err(parse_err(format!("not a rational: {other}"))),
    }
}

fn nested_polytope(obj: &Map<String, Value>) -> Result<CombPolytope, DocError> {
    let p = field(obj, "polytope")?
        .as_object()
        .ok_or_else(|| parse_err("\"polytope\" must be a polytope document"))?;
    match p.get("kind").and_then(Value::as_str) {
        None | Some("polytope") => parse_polytope(p),
        Some(k) => Err(parse_err(format!(
            "nested document has kind {k:?}, expected \"polytope\""
        ))),
    }
}

fn parse_assigned(
    obj: &Map<String, Value>,
) -> Result<(CombPolytope, BTreeMap<String, SignVec>), DocError> {
    let p = nested_polytope(obj)?;
    let assign = field(obj, "assign")?
        .as_object()
        .ok_or_else(|| parse_err("\"assign\" must map facet ids to vectors"))?
        .iter()
        .map(|(k, v)| Ok((k.clone(), parse_sign_vec(v)?)))
        .collect::<Result<_, DocError>>()?;
    Ok((p, assign))
}

fn parse_mod2(obj: &Map<String, Value>) -> Result<Mod2Map, DocError> {
    let p = nested_polytope(obj)?;
    let by_id: BTreeMap<String, Vec<bool>> = field(obj, "assign")?
        .as_object()
        .ok_or_else(|| parse_err("\"assign\" must map facet ids to bit lists"))?
        .iter()
        .map(|(k, v)| {
            let bits = v
                .as_array()
                .ok_or_else(|| parse_err(format!("expected a bit list for {k:?}")))?
                .iter()
                .map(|b| match b.as_u64() {
                    Some(0) => Ok(false),
                    Some(1) => Ok(true),
                    _ => Err(parse_err(format!("bits must be 0 or 1, found {b}"))),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            Ok((k.clone(), bits))
        })
        .collect::<Result<_, DocError>>()?;
    let width = by_id.values().next().map_or(0, Vec::len);
    if width == p.dim() {
        let mut assign = Vec::with_capacity(p.facet_count());
        for f in p.facet_ids() {
            assign.push(
                by_id
                    .get(f)
                    .cloned()
                    .ok_or_else(|| DocError::Invalid(format!("no value for facet {f:?}")))?,
            );
        }
        if let Some(extra) = by_id.keys().find(|k| p.facet_index(k).is_none()) {
            return Err(DocError::Invalid(format!(
                "value given for unknown facet {extra:?}"
            )));
        }
        Mod2Map::characteristic(p, assign).map_err(invalid)
    } else {
        Mod2Map::from_ids(p, &by_id).map_err(invalid)
    }
}

fn parse_polygon(obj: &Map<String, Value>) -> Result<Polygon4, DocError> {
    let vecs = field(obj, "vecs")?
        .as_array()
        .ok_or_else(|| parse_err("\"vecs\" must be a list of integer pairs"))?
        .iter()
        .map(parse_sign_vec)
        .collect::<Result<Vec<_>, _>>()?;
    Polygon4::new(vecs).map_err(invalid)
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn vec_value(v: &IntVec) -> Value {
    Value::Array(v.entries().iter().map(int_value).collect())
}

pub fn polytope_value(p: &CombPolytope) -> Value {
    let facets: Map<String, Value> = (0..p.facet_count())
        .map(|f| {
            let ids = p.facet(f).iter().map(|&v| json!(p.vertex_id(v))).collect();
            (p.facet_id(f).to_string(), Value::Array(ids))
        })
        .collect();
    let mut out = json!({
        "kind": "polytope",
        "dim": p.dim(),
        "vertices": p.vertex_ids(),
        "facets": facets,
    });
    if let Some(coords) = p.coords() {
        let c: Map<String, Value> = coords
            .iter()
            .enumerate()
            .map(|(v, x)| {
                let entries = x.iter().map(|r| json!(r.to_string())).collect();
                (p.vertex_id(v).to_string(), Value::Array(entries))
            })
            .collect();
        out["coords"] = Value::Object(c);
    }
    out
}

fn map_value(kind: &str, p: &CombPolytope, assign: &[SignVec]) -> Value {
    let a: Map<String, Value> = assign
        .iter()
        .enumerate()
        .map(|(f, v)| (p.facet_id(f).to_string(), vec_value(v.rep())))
        .collect();
    json!({ "kind": kind, "polytope": polytope_value(p), "assign": a })
}

fn mod2_value(m: &Mod2Map) -> Value {
    let p = m.polytope();
    let a: Map<String, Value> = m
        .assign()
        .iter()
        .enumerate()
        .map(|(f, bits)| {
            let b = bits.iter().map(|&x| json!(u8::from(x))).collect();
            (p.facet_id(f).to_string(), Value::Array(b))
        })
        .collect();
    json!({ "kind": "mod2", "polytope": polytope_value(p), "assign": a })
}

pub fn polygon_value(p: &Polygon4) -> Value {
    json!({
        "kind": "polygon4",
        "vecs": p.vecs().iter().map(|v| vec_value(v.rep())).collect::<Vec<_>>(),
    })
}

/// Canonical text of a document: sorted keys, two-space indentation.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_as_numbers_or_strings() {
        assert_eq!(parse_int(&json!(-7)).unwrap(), BigInt::from(-7));
        assert_eq!(parse_int(&json!(" 42 ")).unwrap(), BigInt::from(42));
        assert!(parse_int(&json!(1.5)).is_err());
        assert!(parse_int(&json!("x")).is_err());
        let big: BigInt = "98765432109876543210".parse().unwrap();
        assert_eq!(int_value(&big), json!("98765432109876543210"));
        assert_eq!(parse_int(&int_value(&big)).unwrap(), big);
    }

    #[test]
    fn rationals() {
        let r = parse_rational(&json!("-3/6")).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(parse_rational(&json!(4)).unwrap().to_string(), "4");
    }

    #[test]
    fn unknown_kind_and_non_objects_are_parse_errors() {
        assert!(matches!(parse_document("[]"), Err(DocError::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"kind": "torus"}"#),
            Err(DocError::Parse(_))
        ));
    }

    #[test]
    fn polygon_round_trip_normalizes_signs() {
        let d = parse_document(r#"{"kind": "polygon4", "vecs": [[0,1],[-1,0],[1,1]]}"#).unwrap();
        let v = d.to_value();
        assert_eq!(v["vecs"], json!([[0, 1], [1, 0], [1, 1]]));
        let again = document_from_value(&v).unwrap();
        assert_eq!(again.to_value(), v);
    }

    #[test]
    fn collinear_polygon_is_invalid_not_parse() {
        let r = parse_document(r#"{"kind": "polygon4", "vecs": [[1,0],[1,0]]}"#);
        assert!(matches!(r, Err(DocError::Invalid(_))));
    }
}
