//! Combinatorial analysis of simple polytopes through their face rings.
//!
//! The crate works with a simple n-polytope P purely combinatorially: each
//! vertex is recorded as the set of the n facets containing it. From that
//! data it computes:
//!
//! - elementary symmetric polynomials of the Stanley--Reisner face ring of
//!   the boundary complex, and products of linear forms modulo the face
//!   ideal ([`face_ring`]);
//! - join decompositions, which detect when P is a product of lower
//!   dimensional polytopes ([`decompose`]);
//! - proper facet colorings and the symmetric-polynomial factorization
//!   certificates they induce ([`coloring`]);
//! - characteristic matrices over the integers and over GF(2), their wedge
//!   products in the exterior face algebra, and the resulting decisions
//!   about Buchstaber numbers and almost complex structures ([`charfun`],
//!   [`exterior`]);
//! - duals of cyclic polytopes via Gale's evenness condition ([`cyclic`]).
//!
//! The `toricalg` binary exposes the same analyses as subcommands; see the
//! repository README for the document and matrix file formats.

pub mod charfun;
pub mod coloring;
pub mod complex;
pub mod cyclic;
pub mod decompose;
pub mod document;
pub mod error;
pub mod exterior;
pub mod face_ring;
pub mod library;
mod linalg;
pub mod polytope;
pub mod report;
pub mod ring;
pub mod vertex_set;

pub use complex::{Orientation, Relabeled, SimplicialComplex};
pub use error::{Error, Result};
pub use face_ring::{LinearForm, SquareFreePolynomial};
pub use polytope::{SimplePolytopeCombinatorics, Violation};
pub use ring::Ring;
pub use vertex_set::VertexSet;
