//! One-graph-per-line JSON interchange.
//!
//! A line carries the full expanded connection set, so consumers never
//! have to re-derive negations or the involution. Readers reject
//! anything that is not already in normal form: zero or out-of-range
//! generators, duplicates, and undirected sets that are not symmetric.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::cyclic::{normalize, CirculantGraph};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphLine {
    pub n: u128,
    pub directed: bool,
    pub generators: Vec<u128>,
}

impl From<&CirculantGraph> for GraphLine {
    fn from(g: &CirculantGraph) -> Self {
        GraphLine {
            n: g.n(),
            directed: g.directed(),
            generators: g.elements().to_vec(),
        }
    }
}

impl GraphLine {
    /// Validate and convert; the generator list must already be the
    /// normalized expanded set.
    pub fn into_graph(self) -> Result<CirculantGraph> {
        let set = normalize(self.n, &self.generators, self.directed)?;
        if set.elems() != self.generators.as_slice() {
            return Err(Error::GraphFormat(
                "generators not in normal form (sorted, reduced, symmetric when undirected)"
                    .into(),
            ));
        }
        Ok(CirculantGraph::new(set))
    }
}

/// Serialize one graph as a single JSON line (no trailing newline).
pub fn to_line(g: &CirculantGraph) -> Result<String> {
    Ok(serde_json::to_string(&GraphLine::from(g))?)
}

/// Parse one JSON line into a validated graph.
pub fn from_line(line: &str) -> Result<CirculantGraph> {
    let parsed: GraphLine = serde_json::from_str(line)?;
    parsed.into_graph()
}

/// Write graphs line by line.
pub fn write_jsonl(mut w: impl Write, graphs: &[CirculantGraph]) -> Result<()> {
    for g in graphs {
        writeln!(w, "{}", to_line(g)?).map_err(|e| Error::GraphFormat(e.to_string()))?;
    }
    Ok(())
}

/// Read graphs line by line, skipping blank lines.
pub fn read_jsonl(r: impl BufRead) -> Result<Vec<CirculantGraph>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line.map_err(|e| Error::GraphFormat(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(from_line(&line)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_undirected() {
        let g = CirculantGraph::new(normalize(21, &[1, 2, 8], false).unwrap());
        let line = to_line(&g).unwrap();
        assert_eq!(
            line,
            r#"{"n":21,"directed":false,"generators":[1,2,8,13,19,20]}"#
        );
        let back = from_line(&line).unwrap();
        assert_eq!(back.elements(), g.elements());
        assert!(!back.directed());
    }

    #[test]
    fn roundtrip_many() {
        let graphs = vec![
            CirculantGraph::new(normalize(13, &[1, 5], false).unwrap()),
            CirculantGraph::new(normalize(6, &[1], true).unwrap()),
        ];
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &graphs).unwrap();
        let back = read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].elements(), &[1, 5, 8, 12]);
        assert!(back[1].directed());
    }

    #[test]
    fn reader_rejects_unnormalized_input() {
        // undirected but missing negations
        let err = from_line(r#"{"n":21,"directed":false,"generators":[1,2,8]}"#);
        assert!(matches!(err, Err(Error::GraphFormat(_))));
        // zero generator
        assert!(from_line(r#"{"n":8,"directed":true,"generators":[0,1]}"#).is_err());
        // out of range
        assert!(from_line(r#"{"n":8,"directed":true,"generators":[1,9]}"#).is_err());
        // duplicate
        assert!(from_line(r#"{"n":8,"directed":true,"generators":[1,1,3]}"#).is_err());
        // unsorted
        assert!(from_line(r#"{"n":8,"directed":true,"generators":[3,1]}"#).is_err());
        // not JSON at all
        assert!(matches!(from_line("degree 4"), Err(Error::Json(_))));
    }

    #[test]
    fn blank_lines_are_skipped() {
        let text = "\n{\"n\":6,\"directed\":true,\"generators\":[1]}\n\n";
        let graphs = read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(graphs.len(), 1);
    }
}
