use std::collections::HashMap;
use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// One reason a combinatorial polytope description was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The dimension must be at least 1.
    DimensionZero,
    /// There must be at least one facet.
    NoFacets,
    /// More facets than the 64-bit set representation supports.
    TooManyFacets(usize),
    /// A vertex of a simple n-polytope lies on exactly n facets.
    WrongVertexSize { vertex: VertexSet, expected: usize },
    /// A facet label outside `1..=m`.
    FacetOutOfRange { vertex: VertexSet, max_allowed: usize },
    /// The same vertex listed twice.
    DuplicateVertex(VertexSet),
    /// A facet that contains no vertex at all.
    UncoveredFacet(usize),
    /// In the vertex--facet structure of a simple polytope, every set of
    /// n-1 facets with a common vertex is shared by exactly two vertices.
    RidgeCount { ridge: VertexSet, count: usize },
    /// The graph on vertices, adjacent when they share n-1 facets, must be
    /// connected.
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionZero => write!(f, "dimension must be positive"),
            Violation::NoFacets => write!(f, "facet count must be positive"),
            Violation::TooManyFacets(m) => {
                write!(f, "{m} facets exceed the supported maximum of {MAX_VERTICES}")
            }
            Violation::WrongVertexSize { vertex, expected } => {
                write!(f, "vertex {vertex} does not lie on exactly {expected} facets")
            }
            Violation::FacetOutOfRange { vertex, max_allowed } => {
                write!(f, "vertex {vertex} uses a facet label above {max_allowed}")
            }
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} is listed twice"),
            Violation::UncoveredFacet(i) => write!(f, "facet {i} contains no vertex"),
            Violation::RidgeCount { ridge, count } => {
                write!(f, "facet set {ridge} is shared by {count} vertices instead of 2")
            }
            Violation::Disconnected => write!(f, "vertex adjacency graph is disconnected"),
        }
    }
}

/// The combinatorics of a simple n-dimensional polytope with m facets,
/// recorded as the list of vertices, each one the set of the n facets it
/// lies on.
///
/// Construction validates the full incidence structure (see
/// [`validate_parts`]); the other operations of the crate may assume a value
/// of this type is well-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytopeCombinatorics {
    n: usize,
    m: usize,
    vertices: Vec<VertexSet>,
}

impl SimplePolytopeCombinatorics {
    pub fn new(n: usize, m: usize, vertices: Vec<VertexSet>) -> Result<Self> {
        let violations = validate_parts(n, m, &vertices);
        if !violations.is_empty() {
            return Err(Error::InvalidPolytope(violations));
        }
        let mut vertices = vertices;
        vertices.sort();
        Ok(SimplePolytopeCombinatorics { n, m, vertices })
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of facets.
    pub fn num_facets(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices as facet sets, in mask order.
    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    /// The vertex that comes first in label order; used as the anchor for
    /// gauge fixing and orientation conventions.
    pub fn first_vertex(&self) -> VertexSet {
        *self
            .vertices
            .iter()
            .min_by(|a, b| a.cmp_labels(**b))
            .expect("a valid polytope has vertices")
    }

    /// The simplicial complex dual to the boundary: one vertex per facet,
    /// one maximal face per polytope vertex.
    pub fn boundary_complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.m, self.vertices.iter().copied())
            .expect("validated polytopes give valid complexes")
    }
}

/// Checks a raw polytope description and reports everything wrong with it.
///
/// An empty report means [`SimplePolytopeCombinatorics::new`] accepts the
/// input. Cheap shape checks come first; the ridge and connectivity checks
/// only run when each vertex individually is well-formed.
pub fn validate_parts(n: usize, m: usize, vertices: &[VertexSet]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(Violation::DimensionZero);
    }
    if m == 0 {
        violations.push(Violation::NoFacets);
    }
    if m > MAX_VERTICES {
        violations.push(Violation::TooManyFacets(m));
    }
    if !violations.is_empty() {
        return violations;
    }
    let allowed = VertexSet::full(m).expect("m <= 64 checked above");
    let mut shape_ok = true;
    for &vertex in vertices {
        if vertex.len() != n {
            violations.push(Violation::WrongVertexSize { vertex, expected: n });
            shape_ok = false;
        }
        if !vertex.is_subset_of(allowed) {
            violations.push(Violation::FacetOutOfRange { vertex, max_allowed: m });
            shape_ok = false;
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &vertex in vertices {
        if !seen.insert(vertex) {
            violations.push(Violation::DuplicateVertex(vertex));
            shape_ok = false;
        }
    }
    let mut covered = VertexSet::EMPTY;
    for &vertex in vertices {
        covered = covered.union(vertex.intersection(allowed));
    }
    for facet in 1..=m {
        if !covered.contains(facet) {
            violations.push(Violation::UncoveredFacet(facet));
            shape_ok = false;
        }
    }
    if !shape_ok || vertices.is_empty() {
        if vertices.is_empty() {
            violations.push(Violation::RidgeCount { ridge: VertexSet::EMPTY, count: 0 });
        }
        return violations;
    }

    // Edges of the polytope: n-1 common facets shared by exactly two vertices.
    let mut ridge_members: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (i, &vertex) in vertices.iter().enumerate() {
        for ridge in vertex.subsets_of_size(n - 1) {
            ridge_members.entry(ridge).or_default().push(i);
        }
    }
    let mut ridges: Vec<(&VertexSet, &Vec<usize>)> = ridge_members.iter().collect();
    ridges.sort_by_key(|(ridge, _)| **ridge);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    let mut ridges_ok = true;
    for (&ridge, members) in ridges {
        if members.len() != 2 {
            violations.push(Violation::RidgeCount { ridge, count: members.len() });
            ridges_ok = false;
        } else {
            adjacency[members[0]].push(members[1]);
            adjacency[members[1]].push(members[0]);
        }
    }
    if ridges_ok {
        let mut reached = vec![false; vertices.len()];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !reached[j] {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            violations.push(Violation::Disconnected);
        }
    }
    violations
}
