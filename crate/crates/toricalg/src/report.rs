use serde_json::{Map, Value};

use crate::charfun::{is_characteristic, CharMatrix};
use crate::coloring::{coloring_to_lambdas, ColoringCertificate};
use crate::complex::Orientation;
use crate::error::{Error, Result};
use crate::exterior::{oriented_sigma_n, wedge_linear_forms};
use crate::face_ring::{sigma, verify_symmetric_identity, SquareFreePolynomial};
use crate::polytope::SimplePolytopeCombinatorics;
use crate::ring::Ring;

/// An ordered collection of `[section] key = value` entries.
///
/// Insertion order is preserved in both renderings, so output is stable for
/// golden tests. The JSON form carries exactly the same data as the text
/// form.
#[derive(Debug, Clone, Default)]
pub struct Report {
    sections: Vec<(String, Map<String, Value>)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Appends a key to a section, creating the section on first use.
    pub fn push(&mut self, section: &str, key: &str, value: impl Into<Value>) {
        let entry = match self.sections.iter_mut().find(|(name, _)| name == section) {
            Some((_, map)) => map,
            None => {
                self.sections.push((section.to_string(), Map::new()));
                &mut self.sections.last_mut().expect("just pushed").1
            }
        };
        entry.insert(key.to_string(), value.into());
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        for (name, entries) in &self.sections {
            root.insert(name.clone(), Value::Object(entries.clone()));
        }
        Value::Object(root)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (name, entries)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{name}]\n"));
            for (key, value) in entries {
                out.push_str(&format!("{key} = {}\n", render_value(value)));
            }
        }
        out
    }
}

fn render_value(value: &Value) -> String {
    match value {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Standard opening section shared by the CLI subcommands.
pub fn polytope_section(report: &mut Report, name: &str, p: &SimplePolytopeCombinatorics) {
    report.push("polytope", "name", name);
    report.push("polytope", "dimension", p.dim() as u64);
    report.push("polytope", "facets", p.num_facets() as u64);
    report.push("polytope", "vertices", p.num_vertices() as u64);
}

/// Re-derives the identities a coloring certificate claims before it may be
/// reported: properness, surjectivity, the symmetric-function identity at
/// the top degree, and for colorings with exactly n classes the full
/// factorization of the top form.
pub fn reverify_coloring(p: &SimplePolytopeCombinatorics, cert: &ColoringCertificate) -> Result<()> {
    cert.verify(p)?;
    let k = p.boundary_complex();
    let n = p.dim();
    let lambdas = coloring_to_lambdas(cert, Ring::Int);
    let identities = verify_symmetric_identity(&k, &lambdas, n)?;
    if identities.last() != Some(&true) {
        return Err(Error::Internal(
            "coloring certificate fails the top symmetric identity".to_string(),
        ));
    }
    if cert.num_colors() == n {
        let mut product = SquareFreePolynomial::constant(Ring::Int, p.num_facets(), 1);
        for lambda in &lambdas {
            product = product.multiply_mod_ideal(&lambda.as_polynomial(), &k)?;
        }
        if product != sigma(&k, n, Ring::Int)? {
            return Err(Error::Internal(
                "n-coloring certificate fails to factor the top form".to_string(),
            ));
        }
    }
    Ok(())
}

/// Confirms the basis condition before a matrix certificate may be reported.
pub fn reverify_matrix(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<()> {
    let check = is_characteristic(p, l)?;
    if !check.ok {
        return Err(Error::Internal(
            "matrix certificate fails the vertex basis condition".to_string(),
        ));
    }
    Ok(())
}

/// Confirms that an orientation extracted from an integer matrix satisfies
/// the defining identity: the top symmetric form in that orientation equals
/// the wedge of the matrix rows.
pub fn reverify_orientation(
    p: &SimplePolytopeCombinatorics,
    l: &CharMatrix,
    orientation: &Orientation,
) -> Result<()> {
    let k = p.boundary_complex();
    let oriented = oriented_sigma_n(&k, orientation, Ring::Int)?;
    let wedge = wedge_linear_forms(&l.row_forms(), &k)?;
    if oriented != wedge {
        return Err(Error::Internal(
            "orientation certificate does not reproduce the wedge of the matrix rows".to_string(),
        ));
    }
    Ok(())
}
