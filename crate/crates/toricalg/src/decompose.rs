use std::collections::HashSet;

use crate::complex::{Relabeled, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face_ring::SquareFreePolynomial;
use crate::polytope::SimplePolytopeCombinatorics;
use crate::ring::Ring;
use crate::vertex_set::VertexSet;

/// All inclusion-minimal non-faces of a complex, in mask order.
///
/// Enumerates faces level by level; a candidate set whose proper subsets are
/// all faces is either a face of the next level or a minimal non-face, so
/// the work is proportional to the face numbers rather than to 2^m.
pub fn minimal_nonfaces(k: &SimplicialComplex) -> Vec<VertexSet> {
    let mut nonfaces = Vec::new();
    // Level 1: every singleton is a face (no ghost vertices).
    let mut level: HashSet<VertexSet> = (1..=k.num_vertices())
        .map(|v| VertexSet::singleton(v).expect("vertex count is validated"))
        .collect();
    let mut size = 1;
    while !level.is_empty() {
        size += 1;
        let mut next: HashSet<VertexSet> = HashSet::new();
        for &face in &level {
            let start = face.max_label().expect("faces at this level are nonempty") + 1;
            for v in start..=k.num_vertices() {
                let candidate = face.insert(v).expect("v <= num_vertices <= 64");
                if candidate
                    .subsets_of_size(size - 1)
                    .iter()
                    .all(|sub| level.contains(sub))
                {
                    if k.is_face(candidate) {
                        next.insert(candidate);
                    } else {
                        nonfaces.push(candidate);
                    }
                }
            }
        }
        level = next;
    }
    nonfaces.sort();
    nonfaces
}

/// One factor of a join decomposition: the original vertex labels it spans
/// and the restricted complex relabeled onto `1..=|vertices|`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub vertices: VertexSet,
    pub complex: Relabeled,
}

impl Factor {
    /// The factor's generating polynomial written in the original labels,
    /// embedded into a polynomial on all `num_vars` variables.
    pub fn polynomial_in_original_labels(&self, num_vars: usize, ring: Ring) -> SquareFreePolynomial {
        SquareFreePolynomial::from_terms(
            ring,
            num_vars,
            self.complex
                .complex
                .maximal_faces()
                .iter()
                .map(|&f| (self.complex.original_face(f), 1)),
        )
        .expect("original labels fit the ambient variable count")
    }
}

/// The finest decomposition of a complex as a join, found by grouping
/// vertices that share a minimal non-face.
///
/// A partition of the vertices splits the complex as a join exactly when no
/// minimal non-face crosses it, so the connected components of the
/// co-occurrence relation give the finest possible split. Factors are listed
/// by their smallest original vertex label.
pub fn join_factors(k: &SimplicialComplex) -> Result<Vec<Factor>> {
    let m = k.num_vertices();
    let nonfaces = minimal_nonfaces(k);
    let mut component = vec![0usize; m + 1];
    for v in 1..=m {
        component[v] = v;
    }
    fn root(component: &mut Vec<usize>, v: usize) -> usize {
        let mut r = v;
        while component[r] != r {
            r = component[r];
        }
        let mut cur = v;
        while component[cur] != r {
            let next = component[cur];
            component[cur] = r;
            cur = next;
        }
        r
    }
    for nonface in &nonfaces {
        let first = nonface.min_label().expect("non-faces are nonempty");
        let anchor = root(&mut component, first);
        for v in nonface.iter().skip(1) {
            let r = root(&mut component, v);
            component[r] = anchor;
        }
    }
    let mut groups: Vec<VertexSet> = Vec::new();
    let mut group_of_root = vec![usize::MAX; m + 1];
    for v in 1..=m {
        let r = root(&mut component, v);
        if group_of_root[r] == usize::MAX {
            group_of_root[r] = groups.len();
            groups.push(VertexSet::EMPTY);
        }
        let g = group_of_root[r];
        groups[g] = groups[g].insert(v)?;
    }
    let factors: Vec<Factor> = groups
        .into_iter()
        .map(|vertices| {
            Ok(Factor {
                vertices,
                complex: k.restrict(vertices)?,
            })
        })
        .collect::<Result<_>>()?;

    // The partition must reconstruct the complex: every maximal face is a
    // union of one maximal face per factor, and conversely.
    let mut expected: Vec<VertexSet> = vec![VertexSet::EMPTY];
    for factor in &factors {
        let mut grown = Vec::with_capacity(expected.len() * factor.complex.complex.maximal_faces().len());
        for &partial in &expected {
            for &piece in factor.complex.complex.maximal_faces() {
                grown.push(partial.union(factor.complex.original_face(piece)));
            }
        }
        expected = grown;
    }
    expected.sort();
    expected.dedup();
    if expected != k.maximal_faces() {
        return Err(Error::Internal(
            "join factors failed to reconstruct the complex".to_string(),
        ));
    }
    Ok(factors)
}

/// Decides whether the polytope is combinatorially a product, by testing
/// whether its boundary complex splits as a join.
pub struct ProductDecision {
    pub is_product: bool,
    pub factors: Vec<Factor>,
}

pub fn is_product_polytope(p: &SimplePolytopeCombinatorics) -> Result<ProductDecision> {
    let factors = join_factors(&p.boundary_complex())?;
    Ok(ProductDecision { is_product: factors.len() > 1, factors })
}

/// Renders a factor list like `{1,5} | {2,3,4}`.
pub fn format_factor_partition(factors: &[Factor]) -> String {
    factors
        .iter()
        .map(|f| f.vertices.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Renders the reconstructed product, one parenthesized generating
/// polynomial per factor in original labels.
pub fn format_factor_product(factors: &[Factor], num_vars: usize, ring: Ring) -> String {
    factors
        .iter()
        .map(|f| format!("({})", f.polynomial_in_original_labels(num_vars, ring)))
        .collect::<Vec<_>>()
        .join("")
}

/// The product of the factors' generating polynomials, expanded over the
/// full simplex so only repeated variables are dropped (factor supports are
/// disjoint, so nothing is). Used to confirm factorizations.
pub fn factor_product_polynomial(factors: &[Factor], num_vars: usize, ring: Ring) -> Result<SquareFreePolynomial> {
    let free = SimplicialComplex::simplex(num_vars)?;
    let mut product = SquareFreePolynomial::constant(ring, num_vars, 1);
    for factor in factors {
        product = product.multiply_mod_ideal(&factor.polynomial_in_original_labels(num_vars, ring), &free)?;
    }
    Ok(product)
}
