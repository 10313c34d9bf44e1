//! The JSON file format for presheaves and maps.
//!
//! A presheaf is an object with `kind`, `truncation`, `cells` (dimension to
//! identifier list) and `actions` (records `{op, dim, index, sign?, map}`).
//! A map is `{source, target, components}` with `components` sending each
//! dimension to an identifier table. Output is byte-stable: object keys are
//! sorted, dimensions ascend, and cell lists keep their stored order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::presheaf::{action_dims, Presheaf, PresheafMap};
use crate::site::{Flavor, Generator, Op};

fn object(mut entries: Vec<(String, Value)>) -> Value {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Value::Object(entries.into_iter().collect())
}

/// Dimension-keyed objects keep numeric order, which differs from string
/// order past dimension 9.
fn by_dimension(entries: Vec<Value>) -> Value {
    Value::Object(entries.into_iter().enumerate().map(|(d, v)| (d.to_string(), v)).collect())
}

fn presheaf_value(x: &Presheaf) -> Value {
    let cells = by_dimension(
        (0..=x.truncation()).map(|d| Value::Array(x.names(d).iter().cloned().map(Value::String).collect())).collect(),
    );
    let actions = x
        .actions()
        .iter()
        .map(|(g, table)| {
            let (from, to) = action_dims(g);
            let map = object(
                table.iter().enumerate().map(|(c, &t)| (x.name(from, c).to_string(), Value::from(x.name(to, t)))).collect(),
            );
            let mut fields = vec![
                ("op".to_string(), Value::from(g.op.name())),
                ("dim".to_string(), Value::from(g.dim)),
                ("index".to_string(), Value::from(g.index)),
                ("map".to_string(), map),
            ];
            if let Some(s) = g.sign {
                fields.push(("sign".to_string(), Value::from(s)));
            }
            object(fields)
        })
        .collect();
    object(vec![
        ("kind".into(), Value::from(x.flavor().name())),
        ("truncation".into(), Value::from(x.truncation())),
        ("cells".into(), cells),
        ("actions".into(), Value::Array(actions)),
    ])
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn serialize_presheaf(x: &Presheaf) -> String {
    render(&presheaf_value(x))
}

pub fn serialize_map(f: &PresheafMap) -> String {
    let (x, y) = (f.source(), f.target());
    let components = by_dimension(
        f.components()
            .iter()
            .enumerate()
            .map(|(d, comp)| {
                object(comp.iter().enumerate().map(|(c, &t)| (x.name(d, c).to_string(), Value::from(y.name(d, t)))).collect())
            })
            .collect(),
    );
    render(&object(vec![
        ("source".into(), presheaf_value(x)),
        ("target".into(), presheaf_value(y)),
        ("components".into(), components),
    ]))
}

fn syntax(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

fn field<'v>(obj: &'v Map<String, Value>, at: &str, key: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| Error::parse(at, format!("missing field `{key}`")))
}

fn as_object<'v>(v: &'v Value, at: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(at, "expected an object"))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| Error::parse(at, "expected a nonnegative integer"))
}

fn as_str<'v>(v: &'v Value, at: &str) -> Result<&'v str> {
    v.as_str().ok_or_else(|| Error::parse(at, "expected a string"))
}

/// Reads one identifier table against known cells, requiring an entry for
/// every cell of the source dimension.
fn table(
    v: &Value,
    at: &str,
    what: &str,
    from: &[String],
    to_lookup: &dyn Fn(&str) -> Option<usize>,
) -> Result<Vec<usize>> {
    let obj = as_object(v, at)?;
    let mut out = Vec::with_capacity(from.len());
    for name in from {
        let t = obj.get(name).ok_or_else(|| Error::parse(at, format!("{what} has no entry for cell `{name}`")))?;
        let t = as_str(t, &format!("{at}.{name}"))?;
        out.push(to_lookup(t).ok_or_else(|| Error::parse(format!("{at}.{name}"), format!("unknown target cell `{t}`")))?);
    }
    if obj.len() != from.len() {
        let extra = obj.keys().find(|k| !from.contains(k)).expect("some key is not a cell");
        return Err(Error::parse(at, format!("{what} names unknown cell `{extra}`")));
    }
    Ok(out)
}

fn presheaf_from(v: &Value, at: &str) -> Result<Presheaf> {
    let root = as_object(v, at)?;
    let kind_at = format!("{at}kind");
    let flavor = match as_str(field(root, at, "kind")?, &kind_at)? {
        "cubical" => Flavor::Cubical,
        "simplicial" => Flavor::Simplicial,
        other => return Err(Error::parse(kind_at, format!("unknown kind `{other}`"))),
    };
    let truncation = as_usize(field(root, at, "truncation")?, &format!("{at}truncation"))?;
    let cells_at = format!("{at}cells");
    let cells = as_object(field(root, at, "cells")?, &cells_at)?;
    let mut names = Vec::with_capacity(truncation + 1);
    for d in 0..=truncation {
        let here = format!("{cells_at}.{d}");
        let list = cells.get(&d.to_string()).ok_or_else(|| Error::parse(&cells_at, format!("no cells listed for dimension {d}")))?;
        let list = list.as_array().ok_or_else(|| Error::parse(&here, "expected a list"))?;
        names.push(list.iter().enumerate().map(|(i, n)| as_str(n, &format!("{here}[{i}]")).map(String::from)).collect::<Result<Vec<_>>>()?);
    }
    if let Some(extra) = cells.keys().find(|k| k.parse::<usize>().map_or(true, |d| d > truncation)) {
        return Err(Error::parse(cells_at, format!("unexpected dimension `{extra}`")));
    }
    let lookups: Vec<BTreeMap<&str, usize>> =
        names.iter().map(|ns| ns.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()).collect();

    let actions_at = format!("{at}actions");
    let records = field(root, at, "actions")?.as_array().ok_or_else(|| Error::parse(&actions_at, "expected a list"))?;
    let mut actions = BTreeMap::new();
    for (k, rec) in records.iter().enumerate() {
        let here = format!("{actions_at}[{k}]");
        let r = as_object(rec, &here)?;
        let op_name = as_str(field(r, &here, "op")?, &format!("{here}.op"))?;
        let op = Op::parse(op_name).ok_or_else(|| Error::parse(format!("{here}.op"), format!("unknown op `{op_name}`")))?;
        let dim = as_usize(field(r, &here, "dim")?, &format!("{here}.dim"))?;
        let index = as_usize(field(r, &here, "index")?, &format!("{here}.index"))?;
        let sign = match (op, r.get("sign")) {
            (Op::Face, Some(s)) if flavor == Flavor::Cubical => {
                let s = as_usize(s, &format!("{here}.sign"))?;
                Some(u8::try_from(s).ok().filter(|&s| s <= 1).ok_or_else(|| Error::parse(format!("{here}.sign"), "sign must be 0 or 1"))?)
            }
            (Op::Face, None) if flavor == Flavor::Cubical => return Err(Error::parse(&here, "face records need a `sign`")),
            (_, Some(_)) => return Err(Error::parse(format!("{here}.sign"), "only cubical faces carry a sign")),
            (_, None) => None,
        };
        let g = Generator { op, dim, index, sign };
        g.check(flavor).map_err(|e| Error::parse(&here, e.to_string()))?;
        if dim == 0 || dim > truncation {
            return Err(Error::parse(&here, format!("dimension {dim} outside 1..={truncation}")));
        }
        let (from, to) = action_dims(&g);
        let lookup = |n: &str| lookups[to].get(n).copied();
        let t = table(field(r, &here, "map")?, &format!("{here}.map"), &g.to_string(), &names[from], &lookup)?;
        if actions.insert(g, t).is_some() {
            return Err(Error::parse(&here, format!("second table for {g}")));
        }
    }
    if let Some(g) = flavor.generators_upto(truncation).into_iter().find(|g| !actions.contains_key(g)) {
        return Err(Error::parse(actions_at, format!("no table for {g} at dimension {}", g.dim)));
    }
    Presheaf::new(flavor, truncation, names, actions)
}

/// Parses a presheaf document; identities are validated.
pub fn parse_presheaf(text: &str) -> Result<Presheaf> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    presheaf_from(&v, "")
}

/// Parses a map document, checking naturality.
pub fn parse_map(text: &str) -> Result<PresheafMap> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    let root = as_object(&v, "map")?;
    let x = Arc::new(presheaf_from(field(root, "", "source")?, "source.")?);
    let y = Arc::new(presheaf_from(field(root, "", "target")?, "target.")?);
    let comps_v = as_object(field(root, "", "components")?, "components")?;
    let mut comps = Vec::with_capacity(x.truncation() + 1);
    for d in 0..=x.truncation() {
        let here = format!("components.{d}");
        let v = comps_v.get(&d.to_string()).ok_or_else(|| Error::parse("components", format!("no component in dimension {d}")))?;
        let lookup = |n: &str| y.index_of(d, n);
        comps.push(table(v, &here, "component", x.names(d), &lookup)?);
    }
    PresheafMap::new(x, y, comps)
}
