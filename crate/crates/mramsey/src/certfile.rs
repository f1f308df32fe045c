//! The `mramsey-cert-v1` JSON certificate format.
//!
//! Writing is hand-formatted (one edge per line, fixed key order) so that a
//! given certificate always produces the same bytes. Reading goes through
//! `serde_json::Value` and reports the first violation with its field path.

use std::fmt::{self, Write as _};

use mramsey_core::{Certificate, ColoringProblem, EdgeColoring, PartitionShape, TargetPattern};
use serde_json::{Map, Value};

pub const FORMAT: &str = "mramsey-cert-v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertFileError {
    /// Field path such as `edges[3]`, or `$` for the whole document.
    pub path: String,
    /// Set for JSON syntax errors.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for CertFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for CertFileError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> CertFileError {
    CertFileError {
        path: path.into(),
        line: None,
        message: message.into(),
    }
}

pub fn to_json(cert: &Certificate) -> String {
    let p = cert.problem();
    let shape = p.shape();
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"format\": \"{FORMAT}\",");
    let _ = writeln!(s, "  \"j\": {},", shape.parts());
    let _ = writeln!(s, "  \"t\": {},", shape.class_size());
    let _ = writeln!(s, "  \"colors\": {},", p.colors());
    let targets: Vec<String> = p
        .targets()
        .iter()
        .map(|t| format!("{{\"kind\": \"{}\", \"param\": {}}}", t.kind(), t.param()))
        .collect();
    let _ = writeln!(s, "  \"targets\": [{}],", targets.join(", "));
    if shape.edge_count() == 0 {
        s.push_str("  \"edges\": [],\n");
    } else {
        s.push_str("  \"edges\": [\n");
        let colors = cert.coloring().as_slice();
        for (e, u, v) in shape.edges() {
            let sep = if e + 1 == shape.edge_count() { "" } else { "," };
            let _ = writeln!(s, "    [{u}, {v}, {}]{sep}", colors[e]);
        }
        s.push_str("  ],\n");
    }
    let _ = writeln!(
        s,
        "  \"provenance\": {}",
        serde_json::to_string(cert.provenance()).expect("strings serialize")
    );
    s.push_str("}\n");
    s
}

fn uint(obj: &Map<String, Value>, key: &str) -> Result<u64, CertFileError> {
    let v = obj.get(key).ok_or_else(|| err(key, "missing field"))?;
    v.as_u64().ok_or_else(|| err(key, format!("expected a non-negative integer, got {v}")))
}

fn parse_target(i: usize, v: &Value) -> Result<TargetPattern, CertFileError> {
    let path = format!("targets[{i}]");
    let obj = v.as_object().ok_or_else(|| err(&path, "expected an object"))?;
    for k in obj.keys() {
        if k != "kind" && k != "param" {
            return Err(err(format!("{path}.{k}"), "unknown field"));
        }
    }
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err(format!("{path}.kind"), "expected a string"))?;
    let param = obj
        .get("param")
        .and_then(Value::as_u64)
        .ok_or_else(|| err(format!("{path}.param"), "expected a non-negative integer"))?;
    TargetPattern::from_kind(kind, param as usize).map_err(|e| err(&path, e.to_string()))
}

pub fn from_json(text: &str) -> Result<Certificate, CertFileError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CertFileError {
        path: "$".into(),
        line: Some(e.line()),
        message: e.to_string(),
    })?;
    let obj = doc.as_object().ok_or_else(|| err("$", "expected an object"))?;
    const KEYS: [&str; 7] = ["format", "j", "t", "colors", "targets", "edges", "provenance"];
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(err(k.as_str(), "unknown field"));
    }
    match obj.get("format") {
        Some(Value::String(f)) if f == FORMAT => {}
        Some(other) => return Err(err("format", format!("expected \"{FORMAT}\", got {other}"))),
        None => return Err(err("format", "missing field")),
    }
    let j = uint(obj, "j")?;
    let t = uint(obj, "t")?;
    let colors = uint(obj, "colors")?;
    let shape = PartitionShape::new(j as usize, t as usize).map_err(|e| err("j", e.to_string()))?;
    let targets = obj
        .get("targets")
        .ok_or_else(|| err("targets", "missing field"))?
        .as_array()
        .ok_or_else(|| err("targets", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_target(i, v))
        .collect::<Result<Vec<_>, _>>()?;
    if targets.len() as u64 != colors {
        return Err(err(
            "targets",
            format!("{} targets for {colors} colors", targets.len()),
        ));
    }
    let provenance = obj
        .get("provenance")
        .ok_or_else(|| err("provenance", "missing field"))?
        .as_str()
        .ok_or_else(|| err("provenance", "expected a string"))?
        .to_owned();
    let edges = obj
        .get("edges")
        .ok_or_else(|| err("edges", "missing field"))?
        .as_array()
        .ok_or_else(|| err("edges", "expected an array"))?;

    let n = shape.vertex_count() as u64;
    let m = shape.edge_count();
    let mut assigned: Vec<Option<u8>> = vec![None; m];
    let mut last: Option<usize> = None;
    for (i, item) in edges.iter().enumerate() {
        let path = format!("edges[{i}]");
        let triple = item
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| err(&path, "expected [u, v, c]"))?;
        let nums: Vec<u64> = triple
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| err(&path, format!("expected non-negative integers, got {x}"))))
            .collect::<Result<_, _>>()?;
        let (u, v, c) = (nums[0], nums[1], nums[2]);
        if u >= n || v >= n {
            return Err(err(&path, format!("vertex out of range 0..{n}")));
        }
        if u >= v {
            return Err(err(&path, format!("expected u < v, got ({u}, {v})")));
        }
        let Some(id) = shape.id_of(u as usize, v as usize) else {
            return Err(err(&path, format!("within-part edge ({u}, {v})")));
        };
        if c >= colors {
            return Err(err(&path, format!("bad color index {c} (colors = {colors})")));
        }
        if assigned[id].is_some() {
            return Err(err(&path, format!("duplicate edge ({u}, {v})")));
        }
        if last.is_some_and(|l| id < l) {
            return Err(err(&path, format!("edge ({u}, {v}) out of canonical order")));
        }
        assigned[id] = Some(c as u8);
        last = Some(id);
    }
    if let Some(missing) = assigned.iter().position(Option::is_none) {
        let (u, v) = shape.endpoints(missing);
        return Err(err(
            "edges",
            format!(
                "incomplete coloring: {} of {m} edges, first missing ({u}, {v})",
                assigned.iter().flatten().count()
            ),
        ));
    }
    let problem = ColoringProblem::new(shape, targets).map_err(|e| err("targets", e.to_string()))?;
    let coloring = EdgeColoring::from_colors(assigned.into_iter().flatten().collect());
    Certificate::new(problem, coloring, provenance).map_err(|e| err("edges", e.to_string()))
}
