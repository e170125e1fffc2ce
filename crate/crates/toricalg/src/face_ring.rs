use std::collections::BTreeMap;
use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::vertex_set::VertexSet;

/// A polynomial in which no variable appears twice in a term, stored as a
/// map from term support to nonzero coefficient.
///
/// These are the residues of face-ring elements: multiplication drops any
/// product term with a repeated variable along with the non-face supports,
/// which keeps every intermediate value square-free.
///
/// Terms are kept in mask order of their supports, which is the canonical
/// order for display and comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreePolynomial {
    ring: Ring,
    num_vars: usize,
    terms: BTreeMap<VertexSet, i64>,
}

impl SquareFreePolynomial {
    pub fn zero(ring: Ring, num_vars: usize) -> Self {
        SquareFreePolynomial { ring, num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, num_vars: usize, value: i64) -> Self {
        let mut p = Self::zero(ring, num_vars);
        let value = ring.normalize(value);
        if value != 0 {
            p.terms.insert(VertexSet::EMPTY, value);
        }
        p
    }

    pub fn variable(ring: Ring, num_vars: usize, index: usize) -> Result<Self> {
        Self::from_terms(ring, num_vars, [(VertexSet::singleton(index)?, 1)])
    }

    /// Collects terms, merging duplicate supports and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (VertexSet, i64)>>(ring: Ring, num_vars: usize, terms: I) -> Result<Self> {
        let allowed = VertexSet::full(num_vars)?;
        let mut map: BTreeMap<VertexSet, i64> = BTreeMap::new();
        for (support, coeff) in terms {
            if !support.is_subset_of(allowed) {
                return Err(Error::IndexOutOfRange {
                    index: support.max_label().unwrap_or(0),
                    num_vertices: num_vars,
                });
            }
            let coeff = ring.normalize(coeff);
            let entry = map.entry(support).or_insert(0);
            *entry = ring.add(*entry, coeff)?;
            if *entry == 0 {
                map.remove(&support);
            }
        }
        Ok(SquareFreePolynomial { ring, num_vars, terms: map })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, support: VertexSet) -> i64 {
        self.terms.get(&support).copied().unwrap_or(0)
    }

    /// Terms in mask order of their supports.
    pub fn terms(&self) -> impl Iterator<Item = (VertexSet, i64)> + '_ {
        self.terms.iter().map(|(&s, &c)| (s, c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.ring.require_same(other.ring)?;
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch(self.num_vars, other.num_vars));
        }
        Self::from_terms(ring, self.num_vars, self.terms().chain(other.terms()))
    }

    /// Deletes every term whose support is not a face of `k`.
    ///
    /// This is the residue map onto the face ring: square-free monomials on
    /// non-faces span the defining ideal, so on square-free polynomials the
    /// reduction is exactly this deletion. Linear and idempotent.
    pub fn reduce_mod_ideal(&self, k: &SimplicialComplex) -> Result<Self> {
        if self.num_vars != k.num_vertices() {
            return Err(Error::VariableCountMismatch(self.num_vars, k.num_vertices()));
        }
        Ok(SquareFreePolynomial {
            ring: self.ring,
            num_vars: self.num_vars,
            terms: self.terms().filter(|(s, _)| k.is_face(*s)).collect(),
        })
    }

    /// Product in the face ring of `k`, projected onto square-free terms.
    ///
    /// Distributes fully; a product term is dropped when the two supports
    /// meet (a repeated variable) or when the union is not a face of `k`.
    pub fn multiply_mod_ideal(&self, other: &Self, k: &SimplicialComplex) -> Result<Self> {
        let ring = self.ring.require_same(other.ring)?;
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch(self.num_vars, other.num_vars));
        }
        if self.num_vars != k.num_vertices() {
            return Err(Error::VariableCountMismatch(self.num_vars, k.num_vertices()));
        }
        let mut map: BTreeMap<VertexSet, i64> = BTreeMap::new();
        for (s, c) in self.terms() {
            for (t, d) in other.terms() {
                if s.intersects(t) {
                    continue;
                }
                let union = s.union(t);
                if !k.is_face(union) {
                    continue;
                }
                let product = ring.mul(c, d)?;
                let entry = map.entry(union).or_insert(0);
                *entry = ring.add(*entry, product)?;
                if *entry == 0 {
                    map.remove(&union);
                }
            }
        }
        Ok(SquareFreePolynomial { ring, num_vars: self.num_vars, terms: map })
    }
}

impl fmt::Display for SquareFreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms())
    }
}

/// Writes terms in the shared text form: mask order, `+`/`-` separators,
/// coefficients of absolute value one left implicit, `x<i>` factors ascending.
pub(crate) fn format_terms<'a, I: Iterator<Item = (VertexSet, i64)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (support, coeff) in terms {
        any = true;
        if coeff < 0 {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        let magnitude = coeff.unsigned_abs();
        if magnitude != 1 || support.is_empty() {
            write!(f, "{magnitude}")?;
        }
        for v in support.iter() {
            write!(f, "x{v}")?;
        }
        first = false;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// A degree-one polynomial recorded by its dense coefficient vector, one
/// entry per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    ring: Ring,
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(ring: Ring, coeffs: Vec<i64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| ring.normalize(c)).collect();
        LinearForm { ring, coeffs }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of the 1-based variable `index`.
    pub fn coefficient(&self, index: usize) -> i64 {
        self.coeffs.get(index - 1).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn as_polynomial(&self) -> SquareFreePolynomial {
        SquareFreePolynomial::from_terms(
            self.ring,
            self.coeffs.len(),
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
                (VertexSet::singleton(i + 1).expect("index within vector length"), c)
            }),
        )
        .expect("linear form coefficients are already normalized")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.as_polynomial().terms())
    }
}

/// The degree-`i` elementary symmetric polynomial of the face ring: the sum
/// of the monomials of the faces with exactly `i` vertices.
///
/// Degrees run from 1 to the largest face cardinality.
pub fn sigma(k: &SimplicialComplex, degree: usize, ring: Ring) -> Result<SquareFreePolynomial> {
    let max = k.dim() + 1;
    if degree == 0 || degree > max {
        return Err(Error::DegreeOutOfRange { degree, min: 1, max });
    }
    SquareFreePolynomial::from_terms(
        ring,
        k.num_vertices(),
        k.faces_of_size(degree).into_iter().map(|s| (s, 1)),
    )
}

/// The generating polynomial of a complex: one coefficient-1 term per
/// maximal face. For the boundary complex of a simple n-polytope this equals
/// `sigma(k, n, ring)`.
pub fn polynomial_of_complex(k: &SimplicialComplex, ring: Ring) -> SquareFreePolynomial {
    SquareFreePolynomial::from_terms(ring, k.num_vertices(), k.maximal_faces().iter().map(|&s| (s, 1)))
        .expect("maximal faces are valid supports")
}

/// Inverse of [`polynomial_of_complex`]: reads a complex off a polynomial.
///
/// The polynomial must be "nice": every coefficient 1 and no term support
/// contained in another. Each variable must appear in some term, since the
/// resulting complex admits no unused vertices.
pub fn complex_of_nice_polynomial(f: &SquareFreePolynomial) -> Result<SimplicialComplex> {
    if f.is_zero() {
        return Err(Error::NotNice("the zero polynomial encodes no complex".to_string()));
    }
    for (support, coeff) in f.terms() {
        if coeff != 1 {
            return Err(Error::NotNice(format!(
                "term on {support} has coefficient {coeff}, expected 1"
            )));
        }
    }
    let supports: Vec<VertexSet> = f.terms().map(|(s, _)| s).collect();
    for &a in &supports {
        for &b in &supports {
            if a != b && a.is_subset_of(b) {
                return Err(Error::NotNice(format!(
                    "support {a} is contained in support {b}; supports must form an antichain"
                )));
            }
        }
    }
    SimplicialComplex::new(f.num_vars(), supports)
}

/// Compares the elementary symmetric polynomials of the given linear forms
/// against those of the complex, degree by degree.
///
/// Returns one boolean per degree `1..=up_to`; entry `i - 1` records whether
/// the degree-`i` elementary symmetric polynomial of `forms`, expanded in
/// the face ring of `k`, equals `sigma(k, i, ring)`.
pub fn verify_symmetric_identity(k: &SimplicialComplex, forms: &[LinearForm], up_to: usize) -> Result<Vec<bool>> {
    let max = k.dim() + 1;
    if up_to == 0 || up_to > max {
        return Err(Error::DegreeOutOfRange { degree: up_to, min: 1, max });
    }
    let ring = forms
        .first()
        .map(|f| f.ring())
        .ok_or_else(|| Error::Unsupported("need at least one linear form".to_string()))?;
    for form in forms {
        ring.require_same(form.ring())?;
        if form.num_vars() != k.num_vertices() {
            return Err(Error::VariableCountMismatch(form.num_vars(), k.num_vertices()));
        }
    }
    // elementary[i] accumulates the degree-i elementary symmetric polynomial
    // of the forms seen so far, already reduced into the face ring.
    let mut elementary: Vec<SquareFreePolynomial> = Vec::with_capacity(up_to + 1);
    elementary.push(SquareFreePolynomial::constant(ring, k.num_vertices(), 1));
    for _ in 1..=up_to {
        elementary.push(SquareFreePolynomial::zero(ring, k.num_vertices()));
    }
    for form in forms {
        let poly = form.as_polynomial().reduce_mod_ideal(k)?;
        for i in (1..=up_to).rev() {
            let bump = elementary[i - 1].multiply_mod_ideal(&poly, k)?;
            elementary[i] = elementary[i].add(&bump)?;
        }
    }
    let mut verdicts = Vec::with_capacity(up_to);
    for (i, elem) in elementary.iter().enumerate().skip(1) {
        verdicts.push(*elem == sigma(k, i, ring)?);
    }
    Ok(verdicts)
}
