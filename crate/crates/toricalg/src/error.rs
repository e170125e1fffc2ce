use thiserror::Error;

use crate::polytope::Violation;

/// Errors shared by every module of the crate.
///
/// Computation never panics on malformed input: parsers and constructors
/// return one of these variants instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// More vertices than the 64-bit set representation supports.
    #[error("vertex index {0} exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    /// A vertex index outside `1..=num_vertices`.
    #[error("vertex index {index} out of range 1..={num_vertices}")]
    IndexOutOfRange { index: usize, num_vertices: usize },

    /// Complex construction saw a vertex that belongs to no maximal face.
    #[error("vertex {0} appears in no maximal face")]
    GhostVertex(usize),

    /// Complex construction saw a maximal-face list that is not an antichain.
    #[error("face {smaller} is contained in face {larger}; maximal faces must form an antichain")]
    NotAnAntichain { smaller: String, larger: String },

    /// Complex construction needs at least one nonempty face.
    #[error("a simplicial complex needs at least one nonempty maximal face")]
    EmptyComplex,

    /// Polytope input rejected by `validate_polytope`.
    #[error("invalid polytope: {}", format_violations(.0))]
    InvalidPolytope(Vec<Violation>),

    /// Operands built over different coefficient rings.
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(&'static str, &'static str),

    /// Operands built over different variable counts.
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),

    /// An integer coefficient left the `i64` range.
    #[error("integer coefficient overflow")]
    CoefficientOverflow,

    /// Degree argument outside the meaningful range for the operation.
    #[error("degree {degree} out of range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },

    /// The requested vertex is not a face of the complex.
    #[error("{{{0}}} is not a face of the complex")]
    NotAFace(usize),

    /// Ridge-propagation of signs needs every ridge in exactly two maximal faces.
    #[error("not a pseudomanifold: ridge {ridge} lies in {count} maximal faces")]
    NotPseudomanifold { ridge: String, count: usize },

    /// Sign propagation around a ridge cycle came back inconsistent.
    #[error("the complex admits no coherent orientation")]
    NotOrientable,

    /// The dual graph on maximal faces is disconnected.
    #[error("dual graph is disconnected")]
    DualGraphDisconnected,

    /// A polynomial fails one of the conditions for encoding a complex.
    #[error("polynomial is not nice: {0}")]
    NotNice(String),

    /// Fewer colors than the dimension forces a clash at some vertex.
    #[error("{requested} colors cannot properly color {dimension} mutually adjacent facets at a vertex")]
    TooFewColors { requested: usize, dimension: usize },

    /// More colors than facets cannot all be used.
    #[error("{requested} colors exceed the number of facets {num_facets}")]
    TooManyColors { requested: usize, num_facets: usize },

    /// Matrix shape incompatible with the polytope.
    #[error("matrix shape {rows}x{cols} does not fit: {reason}")]
    MatrixShape { rows: usize, cols: usize, reason: String },

    /// A matrix column that is identically zero.
    #[error("column {0} of the matrix is zero")]
    ZeroColumn(usize),

    /// The matrix fails the basis condition at some vertex, so operations
    /// that require a characteristic matrix cannot proceed.
    #[error("matrix is not characteristic: basis condition fails at {0}")]
    NotCharacteristic(String),

    /// Entry outside the ring it claims to live in.
    #[error("entry {value} at row {row}, column {col} is not valid over {ring}")]
    BadMatrixEntry { value: i64, row: usize, col: usize, ring: &'static str },

    /// Operation defined only for a specific ring or shape.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A search parameter that would make the search degenerate or unbounded.
    #[error("invalid search parameter: {0}")]
    BadSearchParameter(String),

    /// Text input (polytope document, matrix file, CLI value) failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
