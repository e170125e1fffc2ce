use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An abstract simplicial complex given by its maximal faces.
///
/// Invariants enforced at construction:
/// - `1 <= num_vertices <= 64`,
/// - every maximal face is a nonempty subset of `{1, ..., num_vertices}`,
/// - no vertex is unused (no ghost vertices),
/// - the maximal faces form an antichain, stored sorted by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    maximal_faces: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds a complex from faces that must already be maximal.
    ///
    /// Rejects the input if one listed face contains another; use
    /// [`SimplicialComplex::from_faces`] to reduce an arbitrary face list
    /// instead.
    pub fn new<I: IntoIterator<Item = VertexSet>>(num_vertices: usize, maximal_faces: I) -> Result<Self> {
        let mut faces: Vec<VertexSet> = maximal_faces.into_iter().collect();
        faces.sort();
        faces.dedup();
        for (i, &a) in faces.iter().enumerate() {
            for &b in faces.iter().skip(i + 1) {
                if a.is_subset_of(b) {
                    return Err(Error::NotAnAntichain {
                        smaller: a.to_string(),
                        larger: b.to_string(),
                    });
                }
                if b.is_subset_of(a) {
                    return Err(Error::NotAnAntichain {
                        smaller: b.to_string(),
                        larger: a.to_string(),
                    });
                }
            }
        }
        Self::from_sorted_antichain(num_vertices, faces)
    }

    /// Builds a complex from an arbitrary list of faces, keeping the
    /// inclusion-maximal ones.
    pub fn from_faces<I: IntoIterator<Item = VertexSet>>(num_vertices: usize, faces: I) -> Result<Self> {
        let mut candidates: Vec<VertexSet> = faces.into_iter().collect();
        candidates.sort();
        candidates.dedup();
        let maximal: Vec<VertexSet> = candidates
            .iter()
            .filter(|&&a| !candidates.iter().any(|&b| a != b && a.is_subset_of(b)))
            .copied()
            .collect();
        Self::from_sorted_antichain(num_vertices, maximal)
    }

    fn from_sorted_antichain(num_vertices: usize, faces: Vec<VertexSet>) -> Result<Self> {
        if num_vertices == 0 || faces.is_empty() || faces.iter().any(|f| f.is_empty()) {
            return Err(Error::EmptyComplex);
        }
        if num_vertices > MAX_VERTICES {
            return Err(Error::TooManyVertices(num_vertices));
        }
        let allowed = VertexSet::full(num_vertices)?;
        let mut used = VertexSet::EMPTY;
        for &face in &faces {
            if !face.is_subset_of(allowed) {
                return Err(Error::IndexOutOfRange {
                    index: face.max_label().unwrap_or(0),
                    num_vertices,
                });
            }
            used = used.union(face);
        }
        if used != allowed {
            let ghost = allowed.difference(used).min_label().unwrap_or(0);
            return Err(Error::GhostVertex(ghost));
        }
        Ok(SimplicialComplex { num_vertices, maximal_faces: faces })
    }

    /// The full simplex on `n` vertices (a single maximal face).
    pub fn simplex(n: usize) -> Result<Self> {
        Self::new(n, [VertexSet::full(n)?])
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Maximal faces in mask order.
    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.maximal_faces
    }

    /// Dimension: one less than the largest face cardinality.
    pub fn dim(&self) -> usize {
        self.maximal_faces.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_faces.iter().all(|f| f.len() == self.maximal_faces[0].len())
    }

    /// Whether `set` spans a face (the empty set always does).
    pub fn is_face(&self, set: VertexSet) -> bool {
        self.maximal_faces.iter().any(|&f| set.is_subset_of(f))
    }

    /// All faces with exactly `size` vertices, in mask order.
    pub fn faces_of_size(&self, size: usize) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for &face in &self.maximal_faces {
            for sub in face.subsets_of_size(size) {
                seen.insert(sub);
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Number of faces in every cardinality, `counts[r]` being the number of
    /// faces with `r` vertices (`counts[0] = 1` for the empty face).
    pub fn face_counts(&self) -> Vec<usize> {
        let top = self.maximal_faces.iter().map(|f| f.len()).max().unwrap_or(0);
        (0..=top).map(|r| self.faces_of_size(r).len()).collect()
    }

    /// Join of two complexes on disjoint vertex sets; the labels of `other`
    /// are shifted up by `self.num_vertices()`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let total = self.num_vertices + other.num_vertices;
        if total > MAX_VERTICES {
            return Err(Error::TooManyVertices(total));
        }
        let mut faces = Vec::with_capacity(self.maximal_faces.len() * other.maximal_faces.len());
        for &a in &self.maximal_faces {
            for &b in &other.maximal_faces {
                faces.push(a.union(b.shift(self.num_vertices)?));
            }
        }
        // Unions of maximal faces stay incomparable, so no reduction is needed.
        SimplicialComplex::new(total, faces)
    }

    /// Link of the vertex `v`: the faces `t` with `v not in t` and
    /// `t + {v}` a face, relabeled onto `1..=k`.
    ///
    /// `labels[i]` records the original label of new vertex `i + 1`; the
    /// original labels are exactly the neighbors of `v`.
    ///
    /// Errors when `{v}` is not a face, or when `v` is isolated so the link
    /// would be the empty complex.
    pub fn link(&self, v: usize) -> Result<Relabeled> {
        if !self.is_face(VertexSet::singleton(v)?) {
            return Err(Error::NotAFace(v));
        }
        let faces: Vec<VertexSet> = self
            .maximal_faces
            .iter()
            .filter(|f| f.contains(v))
            .map(|f| f.remove(v))
            .collect();
        // Distinct maximal faces through v stay incomparable after deleting v.
        let mut used = VertexSet::EMPTY;
        for &f in &faces {
            used = used.union(f);
        }
        Relabeled::build(used, faces)
    }

    /// Restriction to `verts`: keeps the parts of faces inside `verts` and
    /// relabels the result onto `1..=|verts|`.
    pub fn restrict(&self, verts: VertexSet) -> Result<Relabeled> {
        let faces: Vec<VertexSet> = self
            .maximal_faces
            .iter()
            .map(|f| f.intersection(verts))
            .filter(|f| !f.is_empty())
            .collect();
        Relabeled::build(verts, faces)
    }

    /// Maps each ridge (face with one vertex fewer than a maximal face) to the
    /// indices of the maximal faces containing it. Defined for pure complexes.
    pub fn ridge_incidence(&self) -> Result<HashMap<VertexSet, Vec<usize>>> {
        if !self.is_pure() {
            return Err(Error::Unsupported(
                "ridge incidence needs a pure complex".to_string(),
            ));
        }
        let top = self.maximal_faces[0].len();
        let mut incidence: HashMap<VertexSet, Vec<usize>> = HashMap::new();
        for (i, &face) in self.maximal_faces.iter().enumerate() {
            for ridge in face.subsets_of_size(top - 1) {
                incidence.entry(ridge).or_default().push(i);
            }
        }
        Ok(incidence)
    }

    /// Whether the graph on maximal faces, adjacent when they share a ridge,
    /// is connected.
    pub fn dual_graph_connected(&self) -> Result<bool> {
        let incidence = self.ridge_incidence()?;
        let count = self.maximal_faces.len();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); count];
        for members in incidence.values() {
            for &a in members {
                for &b in members {
                    if a != b {
                        adjacency[a].push(b);
                    }
                }
            }
        }
        let mut seen = vec![false; count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    /// Assigns a sign to every maximal face so that the signed boundaries
    /// cancel along every ridge, anchored at `+1` on the maximal face that is
    /// smallest in label order.
    ///
    /// Requires a pure complex in which every ridge lies in exactly two
    /// maximal faces and the dual graph is connected. Fails with
    /// [`Error::NotOrientable`] when sign propagation is inconsistent, as on
    /// one-sided pseudomanifolds.
    pub fn coherent_orientation(&self) -> Result<Orientation> {
        let incidence = self.ridge_incidence()?;
        for (ridge, members) in &incidence {
            if members.len() != 2 {
                return Err(Error::NotPseudomanifold {
                    ridge: ridge.to_string(),
                    count: members.len(),
                });
            }
        }
        let faces = &self.maximal_faces;
        let anchor = (0..faces.len())
            .min_by(|&a, &b| faces[a].cmp_labels(faces[b]))
            .expect("complex has at least one maximal face");

        let mut signs: Vec<Option<i8>> = vec![None; faces.len()];
        signs[anchor] = Some(1);
        let mut stack = vec![anchor];
        let mut adjacency: Vec<Vec<(usize, VertexSet)>> = vec![Vec::new(); faces.len()];
        for (&ridge, members) in &incidence {
            let (a, b) = (members[0], members[1]);
            adjacency[a].push((b, ridge));
            adjacency[b].push((a, ridge));
        }
        while let Some(a) = stack.pop() {
            let sign_a = signs[a].expect("popped faces are signed");
            for &(b, ridge) in &adjacency[a] {
                let induced = removal_parity(faces[a], ridge) * sign_a;
                let needed = -induced * removal_parity(faces[b], ridge);
                match signs[b] {
                    None => {
                        signs[b] = Some(needed);
                        stack.push(b);
                    }
                    Some(existing) if existing != needed => return Err(Error::NotOrientable),
                    Some(_) => {}
                }
            }
        }
        if signs.iter().any(|s| s.is_none()) {
            return Err(Error::DualGraphDisconnected);
        }
        let map: BTreeMap<VertexSet, i8> = faces
            .iter()
            .zip(signs)
            .map(|(&f, s)| (f, s.expect("all faces signed")))
            .collect();
        Orientation::new(map)
    }
}

/// Sign of the removed vertex's position when passing from `face` to `ridge`:
/// `(-1)^(j-1)` where the removed vertex is the `j`-th smallest in `face`.
fn removal_parity(face: VertexSet, ridge: VertexSet) -> i8 {
    let removed = face
        .difference(ridge)
        .min_label()
        .expect("ridge is a proper subset of face");
    let position = face.iter().position(|v| v == removed).expect("removed vertex is in face");
    if position % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A complex produced from another one together with the translation back to
/// the original vertex labels: new vertex `i + 1` was `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    pub labels: Vec<usize>,
}

impl Relabeled {
    fn build(used: VertexSet, faces: Vec<VertexSet>) -> Result<Self> {
        let labels = used.labels();
        if labels.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut position = [0usize; MAX_VERTICES + 1];
        for (i, &label) in labels.iter().enumerate() {
            position[label] = i + 1;
        }
        let relabel = |f: VertexSet| VertexSet::from_labels(f.iter().map(|v| position[v])).expect("labels stay in range");
        let complex = SimplicialComplex::from_faces(labels.len(), faces.into_iter().map(relabel))?;
        Ok(Relabeled { complex, labels })
    }

    /// Original labels of a face of the relabeled complex.
    pub fn original_face(&self, face: VertexSet) -> VertexSet {
        VertexSet::from_labels(face.iter().map(|v| self.labels[v - 1])).expect("original labels were valid")
    }
}

/// A choice of sign for every maximal face of a pure complex, stored relative
/// to listing each face's vertices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    signs: BTreeMap<VertexSet, i8>,
}

impl Orientation {
    /// Builds an orientation; all signs must be `+1` or `-1`.
    pub fn new(signs: BTreeMap<VertexSet, i8>) -> Result<Self> {
        if signs.values().any(|&s| s != 1 && s != -1) {
            return Err(Error::Internal("orientation signs must be +1 or -1".to_string()));
        }
        Ok(Orientation { signs })
    }

    pub fn from_pairs<I: IntoIterator<Item = (VertexSet, i8)>>(pairs: I) -> Result<Self> {
        Self::new(pairs.into_iter().collect())
    }

    /// Whether the domain is exactly the maximal face list of `complex`.
    pub fn matches(&self, complex: &SimplicialComplex) -> bool {
        self.signs.len() == complex.maximal_faces().len()
            && complex.maximal_faces().iter().all(|f| self.signs.contains_key(f))
    }

    pub fn sign(&self, face: VertexSet) -> Option<i8> {
        self.signs.get(&face).copied()
    }

    /// The reversed orientation; coherence is preserved under the flip.
    pub fn flipped(&self) -> Orientation {
        Orientation {
            signs: self.signs.iter().map(|(&f, &s)| (f, -s)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, i8)> + '_ {
        self.signs.iter().map(|(&f, &s)| (f, s))
    }
}
