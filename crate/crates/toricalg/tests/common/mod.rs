//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles deliberately reimplement, by brute force, what the library
//! computes by smarter means, so that both paths must agree.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toricalg::face_ring::SquareFreePolynomial;
use toricalg::library;
use toricalg::{Ring, SimplePolytopeCombinatorics, SimplicialComplex, VertexSet};

pub fn set(labels: &[usize]) -> VertexSet {
    VertexSet::from_labels(labels.iter().copied()).unwrap()
}

/// Every built-in polytope the suites exercise.
pub fn fixture_polytopes() -> Vec<(&'static str, SimplePolytopeCombinatorics)> {
    [
        "square", "prism", "cutprism", "simplex:2", "simplex:3", "simplex:4", "cube:2", "cube:3",
        "polygon:5", "polygon:6", "polygon:8", "cyclic:2:7", "cyclic:3:6", "cyclic:4:7",
        "cyclic:4:8", "cyclic:5:8",
    ]
    .into_iter()
    .map(|name| (name, library::builtin(name).expect("name is built in").expect("fixture is valid")))
    .collect()
}

/// A random complex on 3 to 10 vertices: a handful of random supports, with
/// singletons patched in so that no vertex is left uncovered.
pub fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let m = rng.random_range(3..=10usize);
    let num_faces = rng.random_range(1..=6usize);
    let mut faces = Vec::with_capacity(num_faces + m);
    for _ in 0..num_faces {
        let mask = rng.random_range(1..(1u64 << m));
        faces.push(VertexSet::from_mask(mask));
    }
    let mut covered = VertexSet::EMPTY;
    for &f in &faces {
        covered = covered.union(f);
    }
    for v in 1..=m {
        if !covered.contains(v) {
            faces.push(VertexSet::singleton(v).unwrap());
        }
    }
    SimplicialComplex::from_faces(m, faces).expect("every vertex is covered")
}

/// A random complex with at most `max_vertices` vertices, for join builders.
pub fn small_random_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> SimplicialComplex {
    loop {
        let k = random_complex(rng);
        if k.num_vertices() <= max_vertices {
            return k;
        }
    }
}

/// Brute-force join detector: tries every bipartition of the vertices and
/// tests whether the maximal faces factor through it as a cartesian product
/// of the two restrictions.
pub fn bipartition_oracle_decomposes(k: &SimplicialComplex) -> bool {
    let m = k.num_vertices();
    let full = VertexSet::full(m).unwrap().mask();
    let maximal: BTreeSet<u64> = k.maximal_faces().iter().map(|f| f.mask()).collect();
    // Fix vertex 1 on side A to enumerate unordered splits once each.
    for half in 0..(1u64 << (m - 1)) {
        let a = (half << 1) | 1;
        let b = full & !a;
        if b == 0 {
            continue;
        }
        let parts_a: BTreeSet<u64> = maximal.iter().map(|f| f & a).collect();
        let parts_b: BTreeSet<u64> = maximal.iter().map(|f| f & b).collect();
        if parts_a.contains(&0) || parts_b.contains(&0) {
            continue;
        }
        let product: BTreeSet<u64> = parts_a
            .iter()
            .flat_map(|fa| parts_b.iter().map(move |fb| fa | fb))
            .collect();
        if product == maximal {
            return true;
        }
    }
    false
}

/// Face test straight off the maximal-face list.
fn oracle_is_face(k: &SimplicialComplex, support: VertexSet) -> bool {
    k.maximal_faces().iter().any(|&f| support.is_subset_of(f))
}

/// Multiplication oracle: distribute over all term pairs, drop repeated
/// variables and non-face supports, and collect coefficients by hand.
pub fn multiply_oracle(
    a: &SquareFreePolynomial,
    b: &SquareFreePolynomial,
    k: &SimplicialComplex,
) -> SquareFreePolynomial {
    assert_eq!(a.ring(), b.ring());
    let ring = a.ring();
    let mut acc: std::collections::BTreeMap<VertexSet, i64> = std::collections::BTreeMap::new();
    for (s, c) in a.terms() {
        for (t, d) in b.terms() {
            if s.intersects(t) {
                continue;
            }
            let union = s.union(t);
            if !oracle_is_face(k, union) {
                continue;
            }
            *acc.entry(union).or_insert(0) += c * d;
        }
    }
    let normalized = acc.into_iter().map(|(support, coeff)| {
        let coeff = match ring {
            Ring::Int => coeff,
            Ring::Gf2 => coeff.rem_euclid(2),
        };
        (support, coeff)
    });
    SquareFreePolynomial::from_terms(ring, a.num_vars(), normalized).expect("oracle terms are in range")
}

/// Random square-free polynomial with supports inside `1..=num_vars` and
/// small coefficients.
pub fn random_polynomial(rng: &mut ChaCha8Rng, ring: Ring, num_vars: usize) -> SquareFreePolynomial {
    let terms = rng.random_range(0..=5usize);
    let raw: Vec<(VertexSet, i64)> = (0..terms)
        .map(|_| {
            let mask = rng.random_range(0..(1u64 << num_vars));
            (VertexSet::from_mask(mask), rng.random_range(-3..=3i64))
        })
        .collect();
    SquareFreePolynomial::from_terms(ring, num_vars, raw).expect("supports fit the variable count")
}

/// Determinant by cofactor expansion along the first row; exact for the
/// small matrices the suites feed it.
pub fn det_cofactor(mat: &[Vec<i64>]) -> i64 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return mat[0][0];
    }
    let mut total = 0;
    for (j, &pivot) in mat[0].iter().enumerate() {
        if pivot == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * pivot * det_cofactor(&minor);
    }
    total
}

/// Exhaustive coherence checker: counts sign assignments on the maximal
/// faces under which every ridge shared by two faces receives opposite
/// induced orientations. A pseudomanifold sphere must admit exactly two.
pub fn count_coherent_assignments(k: &SimplicialComplex) -> usize {
    let faces = k.maximal_faces();
    let ridge_pairs = shared_ridges(k);
    let mut count = 0;
    'outer: for assignment in 0..(1u64 << faces.len()) {
        for &(i, si, j, sj) in &ridge_pairs {
            let flip_i: i64 = if assignment >> i & 1 == 0 { 1 } else { -1 };
            let flip_j: i64 = if assignment >> j & 1 == 0 { 1 } else { -1 };
            if flip_i * si == flip_j * sj {
                continue 'outer;
            }
        }
        count += 1;
    }
    count
}

/// For every ridge lying in exactly two maximal faces, the face indices
/// paired with the deletion signs (-1)^position of the missing vertex.
fn shared_ridges(k: &SimplicialComplex) -> Vec<(usize, i64, usize, i64)> {
    use std::collections::HashMap;
    let faces = k.maximal_faces();
    let mut by_ridge: HashMap<VertexSet, Vec<(usize, i64)>> = HashMap::new();
    for (idx, &face) in faces.iter().enumerate() {
        for (pos, v) in face.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            by_ridge.entry(face.remove(v)).or_default().push((idx, sign));
        }
    }
    by_ridge
        .into_values()
        .filter(|cofaces| cofaces.len() == 2)
        .map(|cofaces| (cofaces[0].0, cofaces[0].1, cofaces[1].0, cofaces[1].1))
        .collect()
}

/// Relabels a complex through the permutation `perm` (1-based: old label `v`
/// becomes `perm[v - 1]`).
pub fn relabel(k: &SimplicialComplex, perm: &[usize]) -> SimplicialComplex {
    let faces: Vec<VertexSet> = k
        .maximal_faces()
        .iter()
        .map(|f| VertexSet::from_labels(f.iter().map(|v| perm[v - 1])).unwrap())
        .collect();
    SimplicialComplex::new(k.num_vertices(), faces).expect("permutation preserves validity")
}
