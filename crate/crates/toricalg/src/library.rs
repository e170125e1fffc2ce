use crate::cyclic::cyclic_dual_polytope;
use crate::error::{Error, Result};
use crate::polytope::SimplePolytopeCombinatorics;
use crate::vertex_set::VertexSet;

/// Built-in polytope name forms understood by [`builtin`].
pub const BUILTIN_FORMS: &str =
    "square, prism, cutprism, simplex:<n>, cube:<n>, polygon:<m>, cyclic:<n>:<m>";

/// The square: 2-dimensional, facets numbered around the boundary.
pub fn square() -> SimplePolytopeCombinatorics {
    polygon(4).expect("the square is valid")
}

/// The m-gon with facets numbered cyclically.
pub fn polygon(m: usize) -> Result<SimplePolytopeCombinatorics> {
    if m < 3 {
        return Err(Error::BadSearchParameter(format!("a polygon needs at least 3 edges, got {m}")));
    }
    let mut vertices = Vec::with_capacity(m);
    for i in 1..m {
        vertices.push(VertexSet::from_labels([i, i + 1])?);
    }
    vertices.push(VertexSet::from_labels([1, m])?);
    SimplePolytopeCombinatorics::new(2, m, vertices)
}

/// The n-simplex: n+1 facets, any n of which meet in a vertex.
pub fn simplex(n: usize) -> Result<SimplePolytopeCombinatorics> {
    if n == 0 {
        return Err(Error::BadSearchParameter("a simplex needs positive dimension".to_string()));
    }
    let all = VertexSet::full(n + 1)?;
    let vertices: Vec<VertexSet> = (1..=n + 1).map(|skip| all.remove(skip)).collect();
    SimplePolytopeCombinatorics::new(n, n + 1, vertices)
}

/// The n-cube with facet i opposite facet i+n; each vertex picks one facet
/// from every opposite pair.
pub fn cube(n: usize) -> Result<SimplePolytopeCombinatorics> {
    if n == 0 {
        return Err(Error::BadSearchParameter("a cube needs positive dimension".to_string()));
    }
    if 2 * n > 64 {
        return Err(Error::TooManyVertices(2 * n));
    }
    let mut vertices = Vec::with_capacity(1 << n);
    for choice in 0u64..(1 << n) {
        let labels = (1..=n).map(|axis| if choice & (1 << (axis - 1)) == 0 { axis } else { axis + n });
        vertices.push(VertexSet::from_labels(labels)?);
    }
    SimplePolytopeCombinatorics::new(n, 2 * n, vertices)
}

/// The triangular prism. Facets 1 and 5 are the triangles, 2, 3, 4 the
/// quadrilateral sides.
pub fn prism() -> SimplePolytopeCombinatorics {
    let vertices = [
        [1, 2, 3], [1, 2, 4], [1, 3, 4],
        [2, 3, 5], [2, 4, 5], [3, 4, 5],
    ];
    SimplePolytopeCombinatorics::new(
        3,
        5,
        vertices.iter().map(|v| VertexSet::from_labels(v.iter().copied()).unwrap()).collect(),
    )
    .expect("the prism is valid")
}

/// The prism with the vertex on facets 1, 3, 4 cut off; the cut introduces
/// the triangular facet 6.
pub fn cut_prism() -> SimplePolytopeCombinatorics {
    let vertices = [
        [1, 2, 3], [1, 2, 4], [1, 3, 6], [1, 4, 6],
        [3, 4, 6], [2, 3, 5], [2, 4, 5], [3, 4, 5],
    ];
    SimplePolytopeCombinatorics::new(
        3,
        6,
        vertices.iter().map(|v| VertexSet::from_labels(v.iter().copied()).unwrap()).collect(),
    )
    .expect("the cut prism is valid")
}

/// Resolves a built-in polytope spec such as `prism` or `cyclic:4:7`.
///
/// Returns `None` when the string names no built-in family at all, so the
/// caller can fall back to reading a file; returns an error for a known
/// family with bad parameters.
pub fn builtin(spec: &str) -> Option<Result<SimplePolytopeCombinatorics>> {
    match spec {
        "square" => return Some(Ok(square())),
        "prism" => return Some(Ok(prism())),
        "cutprism" => return Some(Ok(cut_prism())),
        _ => {}
    }
    let mut parts = spec.split(':');
    let family = parts.next()?;
    let args: Vec<&str> = parts.collect();
    let parse = |s: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("bad parameter {s:?} in polytope spec {spec:?}"),
        })
    };
    match (family, args.as_slice()) {
        ("simplex", [n]) => Some(parse(n).and_then(simplex)),
        ("cube", [n]) => Some(parse(n).and_then(cube)),
        ("polygon", [m]) => Some(parse(m).and_then(polygon)),
        ("cyclic", [n, m]) => Some(parse(n).and_then(|n| parse(m).and_then(|m| cyclic_dual_polytope(n, m)))),
        ("simplex" | "cube" | "polygon" | "cyclic", _) => Some(Err(Error::Parse {
            line: 0,
            message: format!("wrong number of parameters in polytope spec {spec:?}"),
        })),
        _ => None,
    }
}
