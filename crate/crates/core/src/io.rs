//! JSON Lines interchange for complexes: one
//! `{"d": .., "vertices": .., "facets": [[..], ..]}` object per line.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::construction::{Attachment, LocalConstruction, TreeOfSimplices};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub d: isize,
    pub vertices: usize,
    pub facets: Vec<Vec<u32>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(k: &SimplicialComplex) -> Self {
        let k = k.normalized();
        ComplexJson {
            d: k.dim(),
            vertices: k.num_vertices(),
            facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }
}

/// Input problem with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex, String> {
        let mut faces = Vec::with_capacity(self.facets.len());
        for (i, f) in self.facets.iter().enumerate() {
            if let Some(v) = f.iter().find(|&&v| v as usize >= self.vertices) {
                return Err(format!("facet {i} uses vertex {v} but only {} vertices are declared", self.vertices));
            }
            faces.push(Face::new(f.iter().copied()).map_err(|e| format!("facet {i}: {e}"))?);
        }
        let k = SimplicialComplex::from_facets(faces);
        if k.num_facets() != self.facets.len() {
            return Err("facets repeat or contain one another".into());
        }
        if k.num_vertices() != self.vertices {
            return Err(format!("{} vertices declared but {} used", self.vertices, k.num_vertices()));
        }
        if k.dim() != self.d {
            return Err(format!("declared d = {} but the facets have dimension {}", self.d, k.dim()));
        }
        Ok(k)
    }
}

pub fn parse_complex_line(line: &str, lineno: usize) -> Result<SimplicialComplex, InputError> {
    let j: ComplexJson = serde_json::from_str(line).map_err(|e| InputError {
        line: lineno,
        column: e.column(),
        message: e.to_string(),
    })?;
    j.to_complex().map_err(|message| InputError { line: lineno, column: 1, message })
}

/// Reads every non-blank line; stops at the first malformed one.
pub fn read_complexes<R: BufRead>(r: R) -> Result<Vec<SimplicialComplex>, InputError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| InputError { line: i + 1, column: 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_complex_line(&line, i + 1)?);
    }
    Ok(out)
}

pub fn complex_line(k: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexJson::from(k)).expect("serializable")
}

/// One tree per line: `{"d": .., "attachments": [{"parent": .., "opposite": ..}, ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeRecord {
    pub d: usize,
    pub attachments: Vec<Attachment>,
}

impl From<&TreeOfSimplices> for TreeRecord {
    fn from(t: &TreeOfSimplices) -> Self {
        TreeRecord { d: t.dim(), attachments: t.attachments().to_vec() }
    }
}

pub fn tree_line(t: &TreeOfSimplices) -> String {
    serde_json::to_string(&TreeRecord::from(t)).expect("serializable")
}

pub fn read_trees<R: BufRead>(r: R) -> Result<Vec<TreeOfSimplices>, InputError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| InputError { line: i + 1, column: 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let j: TreeRecord = serde_json::from_str(&line)
            .map_err(|e| InputError { line: i + 1, column: e.column(), message: e.to_string() })?;
        let t = TreeOfSimplices::new(j.d, j.attachments)
            .map_err(|e| InputError { line: i + 1, column: 1, message: e.to_string() })?;
        out.push(t);
    }
    Ok(out)
}

/// Local constructions from a JSON document: a construction itself, an
/// object with a `witness` field, or one with `results` whose entries carry
/// witnesses (entries without one are skipped).
pub fn read_constructions(text: &str) -> Result<Vec<LocalConstruction>, InputError> {
    let err = |e: serde_json::Error| InputError { line: e.line(), column: e.column(), message: e.to_string() };
    let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
    let mut found = Vec::new();
    if let Some(rs) = v.get("results").and_then(|r| r.as_array()) {
        found.extend(rs.iter().filter_map(|r| r.get("witness")).filter(|w| !w.is_null()).cloned());
    } else if let Some(w) = v.get("witness") {
        found.push(w.clone());
    } else {
        found.push(v);
    }
    found
        .into_iter()
        .map(|w| serde_json::from_value(w).map_err(|e| InputError { line: 1, column: 1, message: e.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let k = SimplicialComplex::boundary_of_simplex(2);
        let line = complex_line(&k);
        assert_eq!(line, r#"{"d":2,"vertices":4,"facets":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#);
        assert_eq!(parse_complex_line(&line, 1).unwrap(), k);
    }

    #[test]
    fn diagnostics() {
        let e = read_complexes("\n{\"d\":1,\"vertices\":2,\"facets\":[[0,1]]}\n{\"d\":1,\"vertices\":2,\"facets\":[[0,5]]}\n".as_bytes())
            .unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_complex_line("{\"d\":1, \"vertices\":", 7).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(e.column > 1);
    }

    #[test]
    fn trees_and_constructions() {
        let t = TreeOfSimplices::path(3, 3);
        let back = read_trees(format!("{}\n\n", tree_line(&t)).as_bytes()).unwrap();
        assert_eq!(back, vec![t.clone()]);
        let bad = read_trees("{\"d\": 2, \"attachments\": [{\"parent\": 4, \"opposite\": 0}]}\n".as_bytes());
        assert_eq!(bad.unwrap_err().line, 1);
        let lc = LocalConstruction::new(1, t, Vec::new());
        let j = serde_json::to_string(&lc).unwrap();
        for doc in [j.clone(), format!("{{\"witness\": {j}}}"), format!("{{\"results\": [{{\"witness\": null}}, {{\"witness\": {j}}}]}}")] {
            assert_eq!(read_constructions(&doc).unwrap(), vec![lc.clone()]);
        }
        assert!(read_constructions("{\"t\": 1").is_err());
    }
}
