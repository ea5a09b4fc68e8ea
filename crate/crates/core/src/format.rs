//! JSON template files.
//!
//! ```json
//! {
//!   "dimension": 1,
//!   "polytopes": [{"id": "I", "halfspaces": [{"normal": [-1], "offset": 0},
//!                                             {"normal": [1], "offset": "1/2"}]}],
//!   "vertices": [{"id": "N", "polytope": "I"}, {"id": "S", "polytope": "I"}],
//!   "edges": [{"id": "fold", "ends": ["N", "S"], "facets": [1, 1]}]
//! }
//! ```
//!
//! A halfspace is `⟨normal, x⟩ ≤ offset`. Offsets are integers or `"p/q"` strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::{format_rational, parse_rational, LatticeVector, Rational};
use crate::error::{Error, Result};
use crate::polytope::{HalfSpace, Polytope};
use crate::template::{OrigamiTemplate, PolytopeDef, TemplateEdge, TemplateVertex};

fn err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(path, "expected a string"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn integer(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| err(path, format!("`{n}` is not an integer"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| err(path, format!("`{s}` is not an integer"))),
        _ => Err(err(path, "expected an integer")),
    }
}

fn rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| err(path, format!("bad rational literal `{s}`"))),
        _ => integer(v, path).map(Rational::from_integer),
    }
}

fn pair<'a>(v: &'a Value, path: &str) -> Result<[&'a Value; 2]> {
    match array(v, path)?.as_slice() {
        [a, b] => Ok([a, b]),
        other => Err(err(path, format!("expected 2 entries, found {}", other.len()))),
    }
}

fn parse_polytope(v: &Value, path: &str, dim: usize) -> Result<(String, Polytope)> {
    let obj = object(v, path)?;
    let id = string(field(obj, path, "id")?, &format!("{path}.id"))?.to_string();
    let hs_path = format!("{path}.halfspaces");
    let mut halfspaces = Vec::new();
    for (j, h) in array(field(obj, path, "halfspaces")?, &hs_path)?.iter().enumerate() {
        let hp = format!("{hs_path}[{j}]");
        let ho = object(h, &hp)?;
        let np = format!("{hp}.normal");
        let normal = array(field(ho, &hp, "normal")?, &np)?
            .iter()
            .enumerate()
            .map(|(k, c)| integer(c, &format!("{np}[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        if normal.len() != dim {
            return Err(err(np, format!("normal has {} entries, dimension is {dim}", normal.len())));
        }
        let offset = rational(field(ho, &hp, "offset")?, &format!("{hp}.offset"))?;
        let h = HalfSpace::new(LatticeVector(normal), offset).map_err(|e| err(&hp, e.to_string()))?;
        halfspaces.push(h);
    }
    let p = Polytope::new(dim, halfspaces).map_err(|e| err(path, e.to_string()))?;
    Ok((id, p))
}

/// Reads a template from JSON text.
pub fn parse(text: &str) -> Result<OrigamiTemplate> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let obj = object(&root, "$")?;
    let dim = index(field(obj, "$", "dimension")?, "dimension")?;

    let mut polytopes = Vec::new();
    let mut polytope_ids = BTreeMap::new();
    for (i, v) in array(field(obj, "$", "polytopes")?, "polytopes")?.iter().enumerate() {
        let path = format!("polytopes[{i}]");
        let (id, polytope) = parse_polytope(v, &path, dim)?;
        if polytope_ids.insert(id.clone(), i).is_some() {
            return Err(err(format!("{path}.id"), format!("duplicate polytope id `{id}`")));
        }
        polytopes.push(PolytopeDef { id, polytope });
    }

    let mut vertices = Vec::new();
    let mut vertex_ids = BTreeMap::new();
    for (i, v) in array(field(obj, "$", "vertices")?, "vertices")?.iter().enumerate() {
        let path = format!("vertices[{i}]");
        let vo = object(v, &path)?;
        let id = string(field(vo, &path, "id")?, &format!("{path}.id"))?.to_string();
        let pp = format!("{path}.polytope");
        let pid = string(field(vo, &path, "polytope")?, &pp)?;
        let &polytope = polytope_ids
            .get(pid)
            .ok_or_else(|| err(&pp, format!("unknown polytope `{pid}`")))?;
        if vertex_ids.insert(id.clone(), i).is_some() {
            return Err(err(format!("{path}.id"), format!("duplicate vertex id `{id}`")));
        }
        vertices.push(TemplateVertex { id, polytope });
    }

    let mut edges = Vec::new();
    let edge_list = match obj.get("edges") {
        Some(v) => array(v, "edges")?.as_slice(),
        None => &[],
    };
    for (i, v) in edge_list.iter().enumerate() {
        let path = format!("edges[{i}]");
        let eo = object(v, &path)?;
        let id = string(field(eo, &path, "id")?, &format!("{path}.id"))?.to_string();
        let ep = format!("{path}.ends");
        let mut ends = [0; 2];
        for (k, e) in pair(field(eo, &path, "ends")?, &ep)?.into_iter().enumerate() {
            let kp = format!("{ep}[{k}]");
            let vid = string(e, &kp)?;
            ends[k] = *vertex_ids
                .get(vid)
                .ok_or_else(|| err(&kp, format!("unknown vertex `{vid}`")))?;
        }
        let fp = format!("{path}.facets");
        let mut facets = [0; 2];
        for (k, f) in pair(field(eo, &path, "facets")?, &fp)?.into_iter().enumerate() {
            let kp = format!("{fp}[{k}]");
            facets[k] = index(f, &kp)?;
            let def = &polytopes[vertices[ends[k]].polytope];
            if facets[k] >= def.polytope.num_facets() {
                return Err(err(
                    kp,
                    format!(
                        "facet index {} out of range for polytope `{}` ({} facets)",
                        facets[k],
                        def.id,
                        def.polytope.num_facets()
                    ),
                ));
            }
        }
        if edges.iter().any(|e: &TemplateEdge| e.id == id) {
            return Err(err(format!("{path}.id"), format!("duplicate edge id `{id}`")));
        }
        edges.push(TemplateEdge { id, ends, facets });
    }

    OrigamiTemplate::new(dim, polytopes, vertices, edges).map_err(|e| err("$", e.to_string()))
}

fn offset_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(r.numer()) {
            return json!(v);
        }
    }
    json!(format_rational(r))
}

fn integer_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => json!(v.to_string()),
    }
}

pub fn to_json(t: &OrigamiTemplate) -> Value {
    let polytopes: Vec<Value> = t
        .polytopes()
        .iter()
        .map(|d| {
            let hs: Vec<Value> = d
                .polytope
                .halfspaces()
                .iter()
                .map(|h| {
                    json!({
                        "normal": h.normal().iter().map(integer_value).collect::<Vec<_>>(),
                        "offset": offset_value(h.offset()),
                    })
                })
                .collect();
            json!({"id": d.id, "halfspaces": hs})
        })
        .collect();
    let vertices: Vec<Value> = t
        .vertices()
        .iter()
        .map(|v| json!({"id": v.id, "polytope": t.polytopes()[v.polytope].id}))
        .collect();
    let edges: Vec<Value> = t
        .edges()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "ends": [t.vertices()[e.ends[0]].id, t.vertices()[e.ends[1]].id],
                "facets": e.facets,
            })
        })
        .collect();
    json!({
        "dimension": t.dim(),
        "polytopes": polytopes,
        "vertices": vertices,
        "edges": edges,
    })
}

/// Writes a template as pretty-printed JSON.
pub fn serialize(t: &OrigamiTemplate) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(t)).expect("JSON values always serialize");
    s.push('\n');
    s
}
