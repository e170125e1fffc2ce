use crate::error::{Error, Result};
use crate::library;
use crate::polytope::SimplePolytopeCombinatorics;
use crate::vertex_set::VertexSet;

/// In-memory form of the line-oriented polytope text format.
///
/// The wire format is one header line `polytope <name> n=<n> m=<m>` followed
/// by one `v <i1> ... <in>` line per vertex; `#` starts a comment and blank
/// lines are ignored. `facet_names` is optional in-memory metadata with no
/// wire representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeDocument {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub vertices: Vec<Vec<usize>>,
    pub facet_names: Option<Vec<String>>,
}

impl PolytopeDocument {
    /// Captures a validated polytope as a document.
    pub fn from_polytope(name: &str, p: &SimplePolytopeCombinatorics) -> Self {
        PolytopeDocument {
            name: name.to_string(),
            n: p.dim(),
            m: p.num_facets(),
            vertices: p.vertices().iter().map(|v| v.labels()).collect(),
            facet_names: None,
        }
    }

    /// Validates the documented combinatorics.
    pub fn to_polytope(&self) -> Result<SimplePolytopeCombinatorics> {
        let vertices: Vec<VertexSet> = self
            .vertices
            .iter()
            .map(|labels| VertexSet::from_labels(labels.iter().copied()))
            .collect::<Result<_>>()?;
        SimplePolytopeCombinatorics::new(self.n, self.m, vertices)
    }

    /// Canonical text form: vertices with ascending labels, sorted by their
    /// bit masks. Parsing the result reproduces the canonicalized document.
    pub fn serialize(&self) -> String {
        let mut vertices: Vec<VertexSet> = self
            .vertices
            .iter()
            .filter_map(|labels| VertexSet::from_labels(labels.iter().copied()).ok())
            .collect();
        vertices.sort();
        let mut out = format!("polytope {} n={} m={}\n", self.name, self.n, self.m);
        for vertex in vertices {
            let labels: Vec<String> = vertex.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!("v {}\n", labels.join(" ")));
        }
        out
    }
}

/// Parses the polytope text format with line-level diagnostics. The
/// combinatorics are not validated here; `to_polytope` does that.
pub fn parse_document(text: &str) -> Result<PolytopeDocument> {
    let mut doc: Option<PolytopeDocument> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match (&mut doc, tokens[0]) {
            (None, "polytope") => {
                if tokens.len() != 4 {
                    return Err(Error::Parse {
                        line,
                        message: "header must be `polytope <name> n=<n> m=<m>`".to_string(),
                    });
                }
                let n = parse_keyed(tokens[2], "n", line)?;
                let m = parse_keyed(tokens[3], "m", line)?;
                doc = Some(PolytopeDocument {
                    name: tokens[1].to_string(),
                    n,
                    m,
                    vertices: Vec::new(),
                    facet_names: None,
                });
            }
            (None, other) => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected the `polytope` header, found {other:?}"),
                });
            }
            (Some(doc), "v") => {
                let labels: Vec<usize> = tokens[1..]
                    .iter()
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            line,
                            message: format!("bad facet index {t:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                if labels.len() != doc.n {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "vertex lies on {} facets, but a simple {}-polytope needs exactly {}",
                            labels.len(),
                            doc.n,
                            doc.n
                        ),
                    });
                }
                doc.vertices.push(labels);
            }
            (Some(_), other) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown directive {other:?}, expected `v`"),
                });
            }
        }
    }
    doc.ok_or(Error::Parse {
        line: 0,
        message: "document has no `polytope` header".to_string(),
    })
}

fn parse_keyed(token: &str, key: &str, line: usize) -> Result<usize> {
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `{key}=<integer>`, found {token:?}"),
        })
}

/// Interprets the input as a built-in polytope spec (`prism`, `cube:3`,
/// `cyclic:4:7`, ...) and otherwise as document text.
pub fn parse_polytope(input: &str) -> Result<SimplePolytopeCombinatorics> {
    if let Some(result) = library::builtin(input.trim()) {
        return result;
    }
    parse_document(input)?.to_polytope()
}
