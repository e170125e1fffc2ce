use crate::error::{Error, Result};
use crate::face_ring::LinearForm;
use crate::polytope::SimplePolytopeCombinatorics;
use crate::ring::Ring;
use crate::vertex_set::VertexSet;

/// A proper coloring of the facets with colors `1..=num_colors`, every color
/// used at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCertificate {
    num_colors: usize,
    colors: Vec<usize>,
}

impl ColoringCertificate {
    pub fn new(num_colors: usize, colors: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; num_colors + 1];
        for (i, &c) in colors.iter().enumerate() {
            if c < 1 || c > num_colors {
                return Err(Error::Internal(format!(
                    "facet {} has color {} outside 1..={}",
                    i + 1,
                    c,
                    num_colors
                )));
            }
            seen[c] = true;
        }
        if seen.iter().skip(1).any(|&s| !s) {
            return Err(Error::Internal("coloring is not surjective".to_string()));
        }
        Ok(ColoringCertificate { num_colors, colors })
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color of the 1-based facet index.
    pub fn color_of(&self, facet: usize) -> usize {
        self.colors[facet - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// The color classes, indexed by color; `classes()[i]` holds the facets
    /// colored `i + 1`.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![VertexSet::EMPTY; self.num_colors];
        for (i, &c) in self.colors.iter().enumerate() {
            let facet = i + 1;
            classes[c - 1] = classes[c - 1]
                .insert(facet)
                .expect("facet counts are validated at construction");
        }
        classes
    }

    /// Re-checks the certificate against a polytope: right facet count,
    /// proper on the facet-adjacency graph, surjective (guaranteed by
    /// construction).
    pub fn verify(&self, p: &SimplePolytopeCombinatorics) -> Result<()> {
        if self.colors.len() != p.num_facets() {
            return Err(Error::Internal(format!(
                "certificate colors {} facets but the polytope has {}",
                self.colors.len(),
                p.num_facets()
            )));
        }
        for edge in facet_adjacency_edges(p) {
            let mut it = edge.iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            if self.color_of(a) == self.color_of(b) {
                return Err(Error::Internal(format!(
                    "adjacent facets {} and {} share color {}",
                    a,
                    b,
                    self.color_of(a)
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for ColoringCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let classes = self.classes();
        let rendered: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", rendered.join(" "))
    }
}

/// The edges of the facet-adjacency graph: pairs of facets whose
/// intersection is a ridge, i.e. the 1-faces of the boundary complex.
pub fn facet_adjacency_edges(p: &SimplePolytopeCombinatorics) -> Vec<VertexSet> {
    p.boundary_complex().faces_of_size(2)
}

fn adjacency_masks(p: &SimplePolytopeCombinatorics) -> Vec<VertexSet> {
    let mut adj = vec![VertexSet::EMPTY; p.num_facets() + 1];
    for edge in facet_adjacency_edges(p) {
        let mut it = edge.iter();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        adj[a] = adj[a].insert(b).expect("facet labels are in range");
        adj[b] = adj[b].insert(a).expect("facet labels are in range");
    }
    adj
}

/// Finds the lexicographically smallest proper coloring of the facets with
/// exactly `l` colors, or `None` when no proper coloring with at most `l`
/// colors exists (the search is exhaustive).
///
/// The backtracking assigns facets in index order and tries colors in
/// ascending order; new colors enter in increasing order, so the first
/// completed assignment is the lexicographic minimum. If it uses fewer than
/// `l` colors, classes are split deterministically until every color is
/// used: repeatedly take the largest class (ties to the smallest color) and
/// move its lowest-index facet into the next fresh color.
pub fn color(p: &SimplePolytopeCombinatorics, l: usize) -> Result<Option<ColoringCertificate>> {
    let n = p.dim();
    let m = p.num_facets();
    if l < n {
        return Err(Error::TooFewColors { requested: l, dimension: n });
    }
    if l > m {
        return Err(Error::TooManyColors { requested: l, num_facets: m });
    }
    let adj = adjacency_masks(p);
    let mut colors = vec![0usize; m + 1];
    if !assign(1, m, l, &adj, &mut colors) {
        return Ok(None);
    }
    let mut colors: Vec<usize> = colors[1..].to_vec();
    let mut used = *colors.iter().max().expect("at least one facet");
    while used < l {
        let mut class_sizes = vec![0usize; used + 1];
        for &c in &colors {
            class_sizes[c] += 1;
        }
        let largest = (1..=used)
            .max_by_key(|&c| (class_sizes[c], std::cmp::Reverse(c)))
            .expect("at least one color in use");
        let peeled = colors
            .iter()
            .position(|&c| c == largest)
            .expect("largest class is nonempty");
        used += 1;
        colors[peeled] = used;
    }
    Ok(Some(ColoringCertificate::new(l, colors)?))
}

fn assign(facet: usize, m: usize, l: usize, adj: &[VertexSet], colors: &mut [usize]) -> bool {
    if facet > m {
        return true;
    }
    let max_used = colors[1..facet].iter().copied().max().unwrap_or(0);
    let cap = l.min(max_used + 1);
    for c in 1..=cap {
        let clash = adj[facet].iter().any(|nb| nb < facet && colors[nb] == c);
        if !clash {
            colors[facet] = c;
            if assign(facet + 1, m, l, adj, colors) {
                return true;
            }
            colors[facet] = 0;
        }
    }
    false
}

/// One linear form per color class: the sum of the variables of the facets
/// in that class.
pub fn coloring_to_lambdas(cert: &ColoringCertificate, ring: Ring) -> Vec<LinearForm> {
    let m = cert.colors.len();
    cert.classes()
        .iter()
        .map(|class| {
            let coeffs = (1..=m).map(|f| i64::from(class.contains(f))).collect();
            LinearForm::new(ring, coeffs)
        })
        .collect()
}

/// Whether every 2-face of the polytope has an even number of edges.
///
/// The 2-faces are the intersections of `n - 2` facets that form a face of
/// the boundary complex and contain at least three polytope vertices; the
/// edge count of such a face equals the number of polytope vertices lying in
/// all of its facets. This parity test decides `n`-colorability.
pub fn joswig_check(p: &SimplePolytopeCombinatorics) -> Result<bool> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::Unsupported(
            "the even-edge test needs dimension at least 2".to_string(),
        ));
    }
    let k = p.boundary_complex();
    for s in k.faces_of_size(n - 2) {
        let count = p.vertices().iter().filter(|v| s.is_subset_of(**v)).count();
        if count >= 3 && count % 2 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face_ring::{sigma, verify_symmetric_identity, SquareFreePolynomial};
    use crate::library;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn cube_three_coloring_pairs_opposite_facets() {
        let cert = color(&library::cube(3).unwrap(), 3).unwrap().unwrap();
        assert_eq!(cert.classes(), vec![set(&[1, 4]), set(&[2, 5]), set(&[3, 6])]);
        assert_eq!(cert.to_string(), "{1,4} {2,5} {3,6}");
    }

    #[test]
    fn prism_is_not_three_colorable_but_four_works() {
        let p = library::prism();
        assert_eq!(color(&p, 3).unwrap(), None);
        let cert = color(&p, 4).unwrap().unwrap();
        assert_eq!(cert.classes(), vec![set(&[1, 5]), set(&[2]), set(&[3]), set(&[4])]);
        cert.verify(&p).unwrap();
    }

    #[test]
    fn square_two_coloring_gives_diagonal_classes() {
        let cert = color(&library::square(), 2).unwrap().unwrap();
        assert_eq!(cert.classes(), vec![set(&[1, 3]), set(&[2, 4])]);
        let lambdas = coloring_to_lambdas(&cert, Ring::Int);
        assert_eq!(lambdas[0].to_string(), "x1+x3");
        assert_eq!(lambdas[1].to_string(), "x2+x4");
    }

    #[test]
    fn color_count_bounds_are_checked() {
        let p = library::cube(3).unwrap();
        assert!(matches!(
            color(&p, 2),
            Err(Error::TooFewColors { requested: 2, dimension: 3 })
        ));
        assert!(matches!(
            color(&p, 7),
            Err(Error::TooManyColors { requested: 7, num_facets: 6 })
        ));
    }

    #[test]
    fn class_splitting_reaches_every_requested_count() {
        let p = library::cube(3).unwrap();
        for l in 3..=6 {
            let cert = color(&p, l).unwrap().unwrap();
            assert_eq!(cert.num_colors(), l);
            cert.verify(&p).unwrap();
        }
        // l=4 splits the largest class; all classes are pairs, so color 1
        // loses facet 1 to the new color 4.
        let cert = color(&p, 4).unwrap().unwrap();
        assert_eq!(cert.classes(), vec![set(&[4]), set(&[2, 5]), set(&[3, 6]), set(&[1])]);
    }

    #[test]
    fn singleton_classes_give_variable_lambdas() {
        let p = library::prism();
        let cert = color(&p, 5).unwrap().unwrap();
        assert_eq!(cert.num_colors(), 5);
        let lambdas = coloring_to_lambdas(&cert, Ring::Int);
        for lambda in &lambdas {
            assert_eq!(lambda.coefficients().iter().sum::<i64>(), 1);
        }
    }

    #[test]
    fn cube_lambdas_factor_the_top_symmetric_polynomial() {
        let p = library::cube(3).unwrap();
        let k = p.boundary_complex();
        let cert = color(&p, 3).unwrap().unwrap();
        let lambdas = coloring_to_lambdas(&cert, Ring::Int);
        let mut product = SquareFreePolynomial::constant(Ring::Int, 6, 1);
        for lambda in &lambdas {
            product = product.multiply_mod_ideal(&lambda.as_polynomial(), &k).unwrap();
        }
        assert_eq!(product, sigma(&k, 3, Ring::Int).unwrap());
        assert_eq!(verify_symmetric_identity(&k, &lambdas, 3).unwrap(), vec![true, true, true]);
    }

    #[test]
    fn prism_four_coloring_satisfies_the_symmetric_identity() {
        let p = library::prism();
        let k = p.boundary_complex();
        let cert = color(&p, 4).unwrap().unwrap();
        let lambdas = coloring_to_lambdas(&cert, Ring::Int);
        assert_eq!(verify_symmetric_identity(&k, &lambdas, 3).unwrap(), vec![true, true, true]);
    }

    #[test]
    fn even_edge_test_matches_colorability() {
        assert!(joswig_check(&library::cube(3).unwrap()).unwrap());
        assert!(joswig_check(&library::square()).unwrap());
        assert!(!joswig_check(&library::prism()).unwrap());
        assert!(!joswig_check(&library::cut_prism()).unwrap());
        assert!(!joswig_check(&library::polygon(5).unwrap()).unwrap());
        assert!(joswig_check(&library::polygon(6).unwrap()).unwrap());
        assert!(!joswig_check(&library::simplex(3).unwrap()).unwrap());
    }

    #[test]
    fn even_edge_test_needs_dimension_two() {
        let segment = crate::polytope::SimplePolytopeCombinatorics::new(
            1,
            2,
            vec![set(&[1]), set(&[2])],
        )
        .unwrap();
        assert!(matches!(joswig_check(&segment), Err(Error::Unsupported(_))));
    }
}
