use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{Orientation, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face_ring::{format_terms, LinearForm};
use crate::linalg::det_exact;
use crate::ring::Ring;
use crate::vertex_set::VertexSet;

/// An element of the exterior algebra on `x1, ..., xm`, over the integers or
/// GF(2).
///
/// Each term is stored on its ascending-ordered monomial: the coefficient
/// recorded for support `{i1 < ... < ir}` multiplies `xi1 ^ ... ^ xir`.
/// Reordering signs are folded into coefficients on the way in, so equality
/// is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    ring: Ring,
    num_vars: usize,
    terms: BTreeMap<VertexSet, i64>,
}

impl ExteriorElement {
    pub fn zero(ring: Ring, num_vars: usize) -> Self {
        ExteriorElement { ring, num_vars, terms: BTreeMap::new() }
    }

    /// Collects terms given on ascending-ordered monomials.
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
        Ok(ExteriorElement { ring, num_vars, terms: map })
    }

    pub fn from_linear_form(form: &LinearForm) -> Self {
        ExteriorElement::from_terms(
            form.ring(),
            form.num_vars(),
            (1..=form.num_vars())
                .filter(|&i| form.coefficient(i) != 0)
                .map(|i| (VertexSet::singleton(i).expect("index within form"), form.coefficient(i))),
        )
        .expect("linear form coefficients are already normalized")
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

    /// Supports of all terms, useful for degree checks.
    pub fn is_homogeneous_of_degree(&self, degree: usize) -> bool {
        self.terms.keys().all(|s| s.len() == degree)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ring = self.ring.require_same(other.ring)?;
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch(self.num_vars, other.num_vars));
        }
        Self::from_terms(ring, self.num_vars, self.terms().chain(other.terms()))
    }

    /// Exterior product. With a complex supplied, every product term whose
    /// support is not a face is dropped as it appears, which computes in the
    /// quotient by the face ideal.
    pub fn wedge(&self, other: &Self, complex: Option<&SimplicialComplex>) -> Result<Self> {
        let ring = self.ring.require_same(other.ring)?;
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch(self.num_vars, other.num_vars));
        }
        if let Some(k) = complex {
            if k.num_vertices() != self.num_vars {
                return Err(Error::VariableCountMismatch(self.num_vars, k.num_vertices()));
            }
        }
        let mut map: BTreeMap<VertexSet, i64> = BTreeMap::new();
        for (s, c) in self.terms() {
            for (t, d) in other.terms() {
                if s.intersects(t) {
                    continue;
                }
                let union = s.union(t);
                if let Some(k) = complex {
                    if !k.is_face(union) {
                        continue;
                    }
                }
                let mut coeff = ring.mul(c, d)?;
                if merge_parity(s, t) {
                    coeff = ring.neg(coeff)?;
                }
                let entry = map.entry(union).or_insert(0);
                *entry = ring.add(*entry, coeff)?;
                if *entry == 0 {
                    map.remove(&union);
                }
            }
        }
        Ok(ExteriorElement { ring, num_vars: self.num_vars, terms: map })
    }

    /// The boundary operator: on an ascending monomial it deletes each
    /// variable in turn with alternating signs, starting positive, so
    /// `x1 ^ x2` maps to `x2 - x1`. A single variable maps to the constant 1.
    pub fn boundary(&self) -> Result<Self> {
        let mut map: BTreeMap<VertexSet, i64> = BTreeMap::new();
        for (support, coeff) in self.terms() {
            for (position, v) in support.iter().enumerate() {
                let signed = if position % 2 == 0 { coeff } else { self.ring.neg(coeff)? };
                let face = support.remove(v);
                let entry = map.entry(face).or_insert(0);
                *entry = self.ring.add(*entry, signed)?;
                if *entry == 0 {
                    map.remove(&face);
                }
            }
        }
        Ok(ExteriorElement { ring: self.ring, num_vars: self.num_vars, terms: map })
    }

    pub fn is_cycle(&self) -> Result<bool> {
        Ok(self.boundary()?.is_zero())
    }

    /// Rewrites the element on the oriented monomials of `orientation`:
    /// the returned coefficient for a face is the stored one multiplied by
    /// the face's sign. Every term support must be one of the oriented faces.
    pub fn in_orientation_basis(&self, orientation: &Orientation) -> Result<Vec<(VertexSet, i64)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (support, coeff) in self.terms() {
            let sign = orientation
                .sign(support)
                .ok_or_else(|| Error::Unsupported(format!("{support} is not an oriented face")))?;
            out.push((support, self.ring.mul(coeff, sign as i64)?));
        }
        Ok(out)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms())
    }
}

/// Whether merging the ascending lists `s` then `t` into one ascending list
/// needs an odd permutation: counts pairs out of order across the two sets.
fn merge_parity(s: VertexSet, t: VertexSet) -> bool {
    let mut inversions = 0u32;
    for v in t.iter() {
        // labels in s strictly greater than v (bits v.. of the mask)
        let up_to_v = if v >= 64 { u64::MAX } else { (1u64 << v) - 1 };
        inversions += (s.mask() & !up_to_v).count_ones();
    }
    inversions % 2 == 1
}

/// The signed top-degree face sum of a pure complex: each maximal face
/// contributes its monomial with the sign the orientation assigns it.
pub fn oriented_sigma_n(k: &SimplicialComplex, orientation: &Orientation, ring: Ring) -> Result<ExteriorElement> {
    if !k.is_pure() {
        return Err(Error::Unsupported("oriented face sum needs a pure complex".to_string()));
    }
    if !orientation.matches(k) {
        return Err(Error::Unsupported(
            "orientation domain must be exactly the maximal faces".to_string(),
        ));
    }
    ExteriorElement::from_terms(
        ring,
        k.num_vertices(),
        k.maximal_faces().iter().map(|&f| {
            (f, orientation.sign(f).expect("orientation covers all maximal faces") as i64)
        }),
    )
}

/// Wedges the given linear forms together in the exterior face algebra of
/// `k`, dropping non-face supports eagerly.
pub fn wedge_linear_forms(forms: &[LinearForm], k: &SimplicialComplex) -> Result<ExteriorElement> {
    let first = forms
        .first()
        .ok_or_else(|| Error::Unsupported("need at least one linear form".to_string()))?;
    let ring = first.ring();
    let mut product = ExteriorElement::from_linear_form(first);
    product = reduce_exterior(&product, k)?;
    for form in &forms[1..] {
        ring.require_same(form.ring())?;
        let factor = ExteriorElement::from_linear_form(form);
        product = product.wedge(&factor, Some(k))?;
    }
    Ok(product)
}

fn reduce_exterior(e: &ExteriorElement, k: &SimplicialComplex) -> Result<ExteriorElement> {
    if e.num_vars() != k.num_vertices() {
        return Err(Error::VariableCountMismatch(e.num_vars(), k.num_vertices()));
    }
    ExteriorElement::from_terms(e.ring(), e.num_vars(), e.terms().filter(|(s, _)| k.is_face(*s)))
}

/// Same value as [`wedge_linear_forms`] for a full set of forms on a pure
/// complex, computed independently: the coefficient on each maximal face is
/// the determinant of the forms' coefficients at that face's vertices.
///
/// Kept as a cross-check against the wedge expansion; the two paths must
/// agree.
pub fn wedge_by_determinants(forms: &[LinearForm], k: &SimplicialComplex) -> Result<ExteriorElement> {
    if !k.is_pure() {
        return Err(Error::Unsupported("determinant expansion needs a pure complex".to_string()));
    }
    let top = k.dim() + 1;
    if forms.len() != top {
        return Err(Error::Unsupported(format!(
            "determinant expansion needs exactly {top} forms, got {}",
            forms.len()
        )));
    }
    let ring = forms[0].ring();
    for form in forms {
        ring.require_same(form.ring())?;
        if form.num_vars() != k.num_vertices() {
            return Err(Error::VariableCountMismatch(form.num_vars(), k.num_vertices()));
        }
    }
    let mut terms = Vec::new();
    for &face in k.maximal_faces() {
        let matrix: Vec<Vec<i64>> = forms
            .iter()
            .map(|form| face.iter().map(|v| form.coefficient(v)).collect())
            .collect();
        let det = match ring {
            Ring::Int => det_exact(&matrix)?,
            Ring::Gf2 => det_exact(&matrix)?.rem_euclid(2),
        };
        terms.push((face, det));
    }
    ExteriorElement::from_terms(ring, k.num_vertices(), terms)
}
