use crate::error::{Error, Result};
use crate::polytope::SimplePolytopeCombinatorics;
use crate::vertex_set::VertexSet;

/// Whether an n-subset of `{1, ..., m}` spans a facet of the cyclic polytope
/// on m moment-curve points, by Gale's evenness condition: between any two
/// labels outside the set there must be an even number of labels inside it.
pub fn is_gale_facet(n: usize, m: usize, set: VertexSet) -> bool {
    if set.len() != n || set.max_label().map_or(true, |v| v > m) {
        return false;
    }
    let outside: Vec<usize> = (1..=m).filter(|&v| !set.contains(v)).collect();
    for (a, &i) in outside.iter().enumerate() {
        for &j in &outside[a + 1..] {
            let between = set.iter().filter(|&v| i < v && v < j).count();
            if between % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// All Gale facets of the cyclic polytope with n-subsets of `{1, ..., m}`,
/// in mask order.
pub fn gale_facets(n: usize, m: usize) -> Result<Vec<VertexSet>> {
    check_parameters(n, m)?;
    let mut facets = Vec::new();
    let mut current = Vec::with_capacity(n);
    enumerate_subsets(n, m, 1, &mut current, &mut |subset| {
        if is_gale_facet(n, m, subset) {
            facets.push(subset);
        }
    });
    facets.sort();
    Ok(facets)
}

fn enumerate_subsets(n: usize, m: usize, start: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(VertexSet)) {
    if current.len() == n {
        visit(VertexSet::from_labels(current.iter().copied()).expect("labels stay within 1..=m <= 64"));
        return;
    }
    let remaining = n - current.len();
    for v in start..=m.saturating_sub(remaining - 1) {
        current.push(v);
        enumerate_subsets(n, m, v + 1, current, visit);
        current.pop();
    }
}

fn check_parameters(n: usize, m: usize) -> Result<()> {
    if n < 2 || m <= n {
        return Err(Error::BadSearchParameter(format!(
            "cyclic polytope needs m > n >= 2, got n={n}, m={m}"
        )));
    }
    if m > 64 {
        return Err(Error::TooManyVertices(m));
    }
    // Keep the subset enumeration at desk scale.
    let mut count: u128 = 1;
    for i in 0..n.min(m - n) {
        count = count * (m - i) as u128 / (i + 1) as u128;
        if count > 2_000_000 {
            return Err(Error::BadSearchParameter(format!(
                "enumerating {n}-subsets of {m} labels is too large"
            )));
        }
    }
    Ok(())
}

/// The simple polytope dual to the cyclic polytope: n-dimensional, with one
/// facet per moment-curve point and one vertex per Gale facet.
pub fn cyclic_dual_polytope(n: usize, m: usize) -> Result<SimplePolytopeCombinatorics> {
    let facets = gale_facets(n, m)?;
    SimplePolytopeCombinatorics::new(n, m, facets)
}

/// The closed-form test for 3-dimensional faces of the cyclic polytope used
/// in dimension-4 arguments: an ascending quadruple `i1 < i2 < i3 < i4`
/// spans a 3-face when either
///
/// 1. `i1 = 1`, `i4 = m` and `i3 - i2 = 1` (both ends, a middle run), or
/// 2. `i2 - i1 = 1` and `i4 - i3 = 1` (two adjacent runs).
///
/// For n = 4 this matches the Gale facets exactly; in higher dimension it
/// still only names genuine 3-faces but no longer catches all of them (see
/// [`quad_is_three_face`] for the full test).
pub fn three_face_criterion(n: usize, m: usize, quad: [usize; 4]) -> Result<bool> {
    if n < 4 {
        return Err(Error::Unsupported(format!(
            "3-face criterion applies to dimension >= 4, got {n}"
        )));
    }
    check_parameters(n, m)?;
    let [i1, i2, i3, i4] = quad;
    if !(1 <= i1 && i1 < i2 && i2 < i3 && i3 < i4 && i4 <= m) {
        return Err(Error::BadSearchParameter(format!(
            "quad ({i1},{i2},{i3},{i4}) must be strictly increasing within 1..={m}"
        )));
    }
    let ends_with_middle_run = i1 == 1 && i4 == m && i3 - i2 == 1;
    let two_adjacent_runs = i2 - i1 == 1 && i4 - i3 == 1;
    Ok(ends_with_middle_run || two_adjacent_runs)
}

/// Whether the quadruple spans a 3-face of the cyclic polytope, decided from
/// first principles: a vertex set spans a face exactly when some Gale facet
/// contains it.
pub fn quad_is_three_face(n: usize, m: usize, quad: [usize; 4]) -> Result<bool> {
    check_parameters(n, m)?;
    let quad_set = VertexSet::from_labels(quad)?;
    if quad_set.len() != 4 || quad_set.max_label().map_or(true, |v| v > m) {
        return Err(Error::BadSearchParameter(format!(
            "quad {quad:?} must list four distinct labels within 1..={m}"
        )));
    }
    if n < 4 {
        return Ok(false);
    }
    let rest: Vec<usize> = (1..=m).filter(|&v| !quad_set.contains(v)).collect();
    let mut found = false;
    let mut current = Vec::with_capacity(n - 4);
    enumerate_from(&rest, n - 4, 0, &mut current, &mut |extension| {
        if found {
            return;
        }
        let mut candidate = quad_set;
        for &v in extension {
            candidate = candidate.insert(v).expect("labels stay within 1..=m");
        }
        if is_gale_facet(n, m, candidate) {
            found = true;
        }
    });
    Ok(found)
}

fn enumerate_from(pool: &[usize], size: usize, start: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if current.len() == size {
        visit(current);
        return;
    }
    for i in start..pool.len() {
        current.push(pool[i]);
        enumerate_from(pool, size, i + 1, current, visit);
        current.pop();
    }
}
