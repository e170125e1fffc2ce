use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::complex::Orientation;
use crate::error::{Error, Result};
use crate::face_ring::{sigma, LinearForm};
use crate::exterior::wedge_linear_forms;
use crate::linalg;
use crate::polytope::SimplePolytopeCombinatorics;
use crate::ring::Ring;
use crate::vertex_set::VertexSet;

/// Default deepest entry bound for the integer search.
pub const DEFAULT_INT_BOUND: i64 = 3;

/// An exact matrix whose column `j` is the vector assigned to facet `j`.
///
/// Rows are indexed `1..=rows`, columns `1..=cols`. Over `f2` every entry is
/// 0 or 1; no column may be zero, since a zero column fails the basis
/// condition at every vertex it touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

impl CharMatrix {
    pub fn new(ring: Ring, entries: Vec<Vec<i64>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::MatrixShape {
                rows,
                cols,
                reason: "need at least one row and one column".to_string(),
            });
        }
        for (r, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::MatrixShape {
                    rows,
                    cols,
                    reason: format!("row {} has {} entries instead of {}", r + 1, row.len(), cols),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if !ring.admits(value) {
                    return Err(Error::BadMatrixEntry {
                        value,
                        row: r + 1,
                        col: c + 1,
                        ring: ring.name(),
                    });
                }
            }
        }
        for c in 0..cols {
            if entries.iter().all(|row| row[c] == 0) {
                return Err(Error::ZeroColumn(c + 1));
            }
        }
        Ok(CharMatrix { ring, rows, cols, entries })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based `row`, `col`.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row - 1][col - 1]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// The 1-based column as a vector.
    pub fn column(&self, col: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[col - 1]).collect()
    }

    /// The 1-based column packed into a word, row 1 being the most
    /// significant bit. Only meaningful over `f2`.
    pub fn column_code_gf2(&self, col: usize) -> u64 {
        self.entries
            .iter()
            .fold(0, |code, row| (code << 1) | (row[col - 1] as u64 & 1))
    }

    /// The 1-based row read as a linear form in the facet variables.
    pub fn row_form(&self, row: usize) -> LinearForm {
        LinearForm::new(self.ring, self.entries[row - 1].clone())
    }

    pub fn row_forms(&self) -> Vec<LinearForm> {
        (1..=self.rows).map(|r| self.row_form(r)).collect()
    }

    /// Entry-wise reduction modulo 2.
    pub fn mod2(&self) -> CharMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&e| e.rem_euclid(2)).collect())
            .collect();
        CharMatrix::new(Ring::Gf2, entries).expect("reduction preserves shape and nonzero columns never become all-even in a characteristic matrix; shape checks cannot fail")
    }

    /// Parses the plain-text format: a `ring rows cols` header line followed
    /// by one whitespace-separated line per row. Blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(Ring, usize, usize)> = None;
        let mut rows_data: Vec<Vec<i64>> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            last_line = line;
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 3 {
                        return Err(Error::Parse {
                            line,
                            message: "matrix header must be `ring rows cols`".to_string(),
                        });
                    }
                    let ring = Ring::parse(tokens[0]).map_err(|e| Error::Parse {
                        line,
                        message: e.to_string(),
                    })?;
                    let dims: Vec<usize> = tokens[1..]
                        .iter()
                        .map(|t| {
                            t.parse().map_err(|_| Error::Parse {
                                line,
                                message: format!("bad dimension {t:?} in matrix header"),
                            })
                        })
                        .collect::<Result<_>>()?;
                    header = Some((ring, dims[0], dims[1]));
                }
                Some(_) => {
                    let row: Vec<i64> = tokens
                        .iter()
                        .map(|t| {
                            t.parse().map_err(|_| Error::Parse {
                                line,
                                message: format!("bad matrix entry {t:?}"),
                            })
                        })
                        .collect::<Result<_>>()?;
                    rows_data.push(row);
                }
            }
        }
        let (ring, rows, cols) = header.ok_or(Error::Parse {
            line: 0,
            message: "matrix file has no header line".to_string(),
        })?;
        if rows_data.len() != rows {
            return Err(Error::Parse {
                line: last_line,
                message: format!("expected {} matrix rows, found {}", rows, rows_data.len()),
            });
        }
        if let Some(bad) = rows_data.iter().position(|row| row.len() != cols) {
            return Err(Error::Parse {
                line: 0,
                message: format!("matrix row {} has {} entries instead of {}", bad + 1, rows_data[bad].len(), cols),
            });
        }
        CharMatrix::new(ring, rows_data)
    }

    /// Canonical text form; `parse` of the result reproduces the matrix.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {} {}\n", self.ring.name(), self.rows, self.cols);
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Display for CharMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Result of checking the basis condition at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCheck {
    pub ok: bool,
    /// Vertices whose facet columns fail to form a basis.
    pub failures: Vec<VertexSet>,
}

fn vertex_det(l: &CharMatrix, n: usize, vertex: VertexSet) -> Result<i64> {
    let labels: Vec<usize> = vertex.iter().collect();
    let mat: Vec<Vec<i64>> = (1..=n)
        .map(|r| labels.iter().map(|&f| l.entry(r, f)).collect())
        .collect();
    linalg::det_exact(&mat)
}

fn vertex_rank_gf2(l: &CharMatrix, vertex: VertexSet) -> usize {
    let codes: Vec<u64> = vertex.iter().map(|f| l.column_code_gf2(f)).collect();
    linalg::gf2_rank(&codes)
}

/// Checks the basis condition at every polytope vertex: over the integers
/// the n columns must be unimodular (determinant plus or minus 1, defined
/// only for square matrices); over `f2` they must have rank n.
pub fn is_characteristic(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<CharCheck> {
    let n = p.dim();
    if l.cols() != p.num_facets() {
        return Err(Error::MatrixShape {
            rows: l.rows(),
            cols: l.cols(),
            reason: format!("need one column per facet ({})", p.num_facets()),
        });
    }
    if l.rows() < n {
        return Err(Error::MatrixShape {
            rows: l.rows(),
            cols: l.cols(),
            reason: format!("need at least {} rows for the vertex condition", n),
        });
    }
    if l.ring() == Ring::Int && l.rows() > n {
        return Err(Error::Unsupported(
            "integer vertex conditions are defined only for square matrices (rows = dimension)".to_string(),
        ));
    }
    let mut failures = Vec::new();
    for &vertex in p.vertices() {
        let ok = match l.ring() {
            Ring::Int => matches!(vertex_det(l, n, vertex)?, 1 | -1),
            Ring::Gf2 => vertex_rank_gf2(l, vertex) == n,
        };
        if !ok {
            failures.push(vertex);
        }
    }
    Ok(CharCheck { ok: failures.is_empty(), failures })
}

fn require_characteristic(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<()> {
    let check = is_characteristic(p, l)?;
    if !check.ok {
        let list: Vec<String> = check.failures.iter().map(VertexSet::to_string).collect();
        return Err(Error::NotCharacteristic(list.join(", ")));
    }
    Ok(())
}

/// Counters from a backtracking run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct SearchStats {
    /// Column assignments attempted.
    pub nodes: u64,
    /// Complete assignments that satisfied every vertex; the search stops at
    /// the first, so this is 0 or 1.
    pub leaves: u64,
    /// Size of the gauge-fixed assignment space, saturating at `u64::MAX`.
    pub space: u64,
}

/// Knobs shared by the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads for splitting the root branches. The certificate is
    /// the same for every value; only wall time changes.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

impl SearchOptions {
    /// Reads the worker cap from `TORICALG_THREADS`; unset means one worker.
    pub fn from_env() -> Result<Self> {
        match std::env::var("TORICALG_THREADS") {
            Err(_) => Ok(Self::default()),
            Ok(raw) => {
                let threads: usize = raw.trim().parse().map_err(|_| {
                    Error::BadSearchParameter(format!(
                        "TORICALG_THREADS must be a positive integer, got {raw:?}"
                    ))
                })?;
                if threads == 0 {
                    return Err(Error::BadSearchParameter(
                        "TORICALG_THREADS must be at least 1".to_string(),
                    ));
                }
                Ok(SearchOptions { threads })
            }
        }
    }
}

/// Which column each facet gets: a fixed standard basis vector (gauge) or
/// the candidate chosen at a search position.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Gauge(usize),
    Free(usize),
}

struct SearchProblem {
    /// Facet labels of the gauge vertex in ascending order; the i-th gets e_{i+1}.
    gauge: Vec<usize>,
    /// Remaining facet labels in ascending order, one search position each.
    unfixed: Vec<usize>,
    /// `slot[f]` for facet label f (index 0 unused).
    slot: Vec<Slot>,
    /// `triggers[pos]`: indices of the vertices whose columns are all known
    /// once position `pos` is assigned; checked exactly there.
    triggers: Vec<Vec<usize>>,
}

/// Gauge-fixes the lexicographically smallest vertex to the identity columns
/// and schedules each remaining vertex check at the moment its last free
/// facet gets a column.
fn search_problem(p: &SimplePolytopeCombinatorics) -> SearchProblem {
    let m = p.num_facets();
    let anchor = p.first_vertex();
    let gauge: Vec<usize> = anchor.iter().collect();
    let unfixed: Vec<usize> = (1..=m).filter(|&f| !anchor.contains(f)).collect();
    let mut slot = vec![Slot::Gauge(0); m + 1];
    for (i, &f) in gauge.iter().enumerate() {
        slot[f] = Slot::Gauge(i);
    }
    for (pos, &f) in unfixed.iter().enumerate() {
        slot[f] = Slot::Free(pos);
    }
    let mut triggers = vec![Vec::new(); unfixed.len()];
    for (vi, &vertex) in p.vertices().iter().enumerate() {
        let last = vertex
            .iter()
            .filter_map(|f| match slot[f] {
                Slot::Free(pos) => Some(pos),
                Slot::Gauge(_) => None,
            })
            .max();
        // `None` is the gauge vertex itself; identity columns always pass.
        if let Some(last) = last {
            triggers[last].push(vi);
        }
    }
    SearchProblem { gauge, unfixed, slot, triggers }
}

fn saturating_pow(base: u64, exp: usize) -> u64 {
    let mut out: u64 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    out
}

enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

fn dfs<F>(
    pos: usize,
    positions: usize,
    num_candidates: usize,
    assignment: &mut [usize],
    stats: &mut SearchStats,
    triggers: &[Vec<usize>],
    check: &F,
    cancel: &dyn Fn() -> bool,
) -> Outcome
where
    F: Fn(usize, &[usize]) -> bool + Sync,
{
    if cancel() {
        return Outcome::Aborted;
    }
    for cand in 0..num_candidates {
        assignment[pos] = cand;
        stats.nodes += 1;
        if triggers[pos].iter().all(|&vi| check(vi, assignment)) {
            if pos + 1 == positions {
                stats.leaves += 1;
                return Outcome::Found;
            }
            match dfs(pos + 1, positions, num_candidates, assignment, stats, triggers, check, cancel) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
    }
    Outcome::Exhausted
}

/// Backtracking over candidate indices per position, trying candidates in
/// ascending order so the first hit is the lexicographically smallest
/// solution. With several workers the root branches are split round-robin;
/// a shared low-water mark lets workers abandon branches that can no longer
/// beat an already-found solution, so the result is schedule-independent.
fn backtrack<F>(
    positions: usize,
    num_candidates: usize,
    triggers: &[Vec<usize>],
    check: &F,
    threads: usize,
) -> (Option<Vec<usize>>, SearchStats)
where
    F: Fn(usize, &[usize]) -> bool + Sync,
{
    let mut stats = SearchStats {
        space: saturating_pow(num_candidates as u64, positions),
        ..SearchStats::default()
    };
    if positions == 0 {
        stats.leaves = 1;
        return (Some(Vec::new()), stats);
    }
    let threads = threads.clamp(1, num_candidates.max(1));
    if threads == 1 {
        let mut assignment = vec![0usize; positions];
        let outcome = dfs(0, positions, num_candidates, &mut assignment, &mut stats, triggers, check, &|| false);
        let solution = matches!(outcome, Outcome::Found).then_some(assignment);
        return (solution, stats);
    }

    let best_root = AtomicUsize::new(usize::MAX);
    let worker_results: Vec<(Option<Vec<usize>>, SearchStats)> = std::thread::scope(|scope| {
        let best_root = &best_root;
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut local = SearchStats::default();
                    let mut found: Option<Vec<usize>> = None;
                    let mut root = t;
                    while root < num_candidates && root < best_root.load(Ordering::Acquire) {
                        let mut assignment = vec![0usize; positions];
                        assignment[0] = root;
                        local.nodes += 1;
                        if triggers[0].iter().all(|&vi| check(vi, &assignment)) {
                            let outcome = if positions == 1 {
                                local.leaves += 1;
                                Outcome::Found
                            } else {
                                let cancel = || best_root.load(Ordering::Acquire) < root;
                                dfs(1, positions, num_candidates, &mut assignment, &mut local, triggers, check, &cancel)
                            };
                            match outcome {
                                Outcome::Found => {
                                    best_root.fetch_min(root, Ordering::AcqRel);
                                    found = Some(assignment);
                                    break;
                                }
                                Outcome::Aborted => break,
                                Outcome::Exhausted => {}
                            }
                        }
                        root += threads;
                    }
                    (found, local)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut best: Option<Vec<usize>> = None;
    for (solution, local) in worker_results {
        stats.nodes += local.nodes;
        stats.leaves += local.leaves;
        if let Some(sol) = solution {
            let is_better = best.as_ref().map_or(true, |b| sol[0] < b[0]);
            if is_better {
                best = Some(sol);
            }
        }
    }
    (best, stats)
}

/// Exhaustive gauge-fixed search for a characteristic matrix over `f2` with
/// `k` rows. Returns the lexicographically smallest matrix (facets in
/// ascending order, candidate columns ordered by their packed code) or
/// `None` as an exhaustive certificate that no such matrix exists, which
/// decides whether the real Buchstaber invariant equals m - n when k = n.
pub fn find_char_gf2(
    p: &SimplePolytopeCombinatorics,
    k: usize,
    options: &SearchOptions,
) -> Result<(Option<CharMatrix>, SearchStats)> {
    let n = p.dim();
    let m = p.num_facets();
    if k < n {
        return Err(Error::MatrixShape {
            rows: k,
            cols: m,
            reason: format!("need at least {} rows for the vertex condition", n),
        });
    }
    if k > 20 {
        return Err(Error::BadSearchParameter(format!(
            "2^{k} - 1 candidate columns per facet is beyond the supported search size"
        )));
    }
    let problem = search_problem(p);
    let num_candidates = (1usize << k) - 1;
    let vertices = p.vertices();
    let slot = &problem.slot;
    let check = |vi: usize, assignment: &[usize]| -> bool {
        let vertex = vertices[vi];
        let mut codes = [0u64; 64];
        let mut len = 0;
        for f in vertex.iter() {
            codes[len] = match slot[f] {
                Slot::Gauge(i) => 1u64 << (k - 1 - i),
                Slot::Free(pos) => (assignment[pos] + 1) as u64,
            };
            len += 1;
        }
        linalg::gf2_rank(&codes[..len]) == n
    };
    let (solution, stats) = backtrack(problem.unfixed.len(), num_candidates, &problem.triggers, &check, options.threads);
    let matrix = solution.map(|assignment| {
        let mut entries = vec![vec![0i64; m]; k];
        for (i, &f) in problem.gauge.iter().enumerate() {
            entries[i][f - 1] = 1;
        }
        for (pos, &f) in problem.unfixed.iter().enumerate() {
            let code = (assignment[pos] + 1) as u64;
            for (r, row) in entries.iter_mut().enumerate() {
                row[f - 1] = ((code >> (k - 1 - r)) & 1) as i64;
            }
        }
        CharMatrix::new(Ring::Gf2, entries).expect("search columns are nonzero binary vectors")
    });
    Ok((matrix, stats))
}

/// Integer column candidates with entries in `[-bound, bound]`, excluding
/// the zero column, ordered positionwise with entries ranked by
/// (magnitude, sign): 0, -1, 1, -2, 2, ...
fn int_candidates(bound: i64, len: usize) -> Result<Vec<Vec<i64>>> {
    let per = (2 * bound + 1) as u64;
    let total = saturating_pow(per, len);
    if total > 2_000_000 {
        return Err(Error::BadSearchParameter(format!(
            "{total} candidate columns at bound {bound} in dimension {len} is beyond the supported search size"
        )));
    }
    let mut order = vec![0i64];
    for v in 1..=bound {
        order.push(-v);
        order.push(v);
    }
    let mut out = Vec::with_capacity((total - 1) as usize);
    for code in 1..total {
        let mut column = vec![0i64; len];
        let mut rest = code;
        for i in (0..len).rev() {
            column[i] = order[(rest % per) as usize];
            rest /= per;
        }
        out.push(column);
    }
    Ok(out)
}

/// Result of the bounded integer search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSearch {
    pub matrix: Option<CharMatrix>,
    /// Entry bound at which the matrix was found.
    pub found_at_bound: Option<i64>,
    /// Counters accumulated over all deepening steps; `space` is from the
    /// deepest bound explored.
    pub stats: SearchStats,
}

/// Bounded search for an integer characteristic matrix, iteratively
/// deepening the entry bound from 1 to `bound`. Exhaustion within the bound
/// proves nothing about larger entries, so the caller must report a
/// `None` result as undecided, not as nonexistence.
pub fn find_char_int(
    p: &SimplePolytopeCombinatorics,
    bound: i64,
    options: &SearchOptions,
) -> Result<IntSearch> {
    if bound < 1 {
        return Err(Error::BadSearchParameter(format!(
            "integer search bound must be at least 1, got {bound}"
        )));
    }
    let n = p.dim();
    let m = p.num_facets();
    let problem = search_problem(p);
    let vertices = p.vertices();
    let slot = &problem.slot;
    let mut total = SearchStats::default();
    for b in 1..=bound {
        let candidates = int_candidates(b, n)?;
        let check = |vi: usize, assignment: &[usize]| -> bool {
            let vertex = vertices[vi];
            let labels: Vec<usize> = vertex.iter().collect();
            let mat: Vec<Vec<i64>> = (0..n)
                .map(|r| {
                    labels
                        .iter()
                        .map(|&f| match slot[f] {
                            Slot::Gauge(i) => i64::from(r == i),
                            Slot::Free(pos) => candidates[assignment[pos]][r],
                        })
                        .collect()
                })
                .collect();
            matches!(linalg::det_exact(&mat), Ok(1) | Ok(-1))
        };
        let (solution, stats) =
            backtrack(problem.unfixed.len(), candidates.len(), &problem.triggers, &check, options.threads);
        total.nodes += stats.nodes;
        total.leaves += stats.leaves;
        total.space = stats.space;
        if let Some(assignment) = solution {
            let mut entries = vec![vec![0i64; m]; n];
            for (i, &f) in problem.gauge.iter().enumerate() {
                entries[i][f - 1] = 1;
            }
            for (pos, &f) in problem.unfixed.iter().enumerate() {
                for (r, row) in entries.iter_mut().enumerate() {
                    row[f - 1] = candidates[assignment[pos]][r];
                }
            }
            let matrix = CharMatrix::new(Ring::Int, entries).expect("search columns are nonzero");
            return Ok(IntSearch { matrix: Some(matrix), found_at_bound: Some(b), stats: total });
        }
    }
    Ok(IntSearch { matrix: None, found_at_bound: None, stats: total })
}

fn require_int_square(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<()> {
    if l.ring() != Ring::Int {
        return Err(Error::RingMismatch(l.ring().name(), Ring::Int.name()));
    }
    if l.rows() != p.dim() || l.cols() != p.num_facets() {
        return Err(Error::MatrixShape {
            rows: l.rows(),
            cols: l.cols(),
            reason: format!("need a {}x{} integer matrix", p.dim(), p.num_facets()),
        });
    }
    Ok(())
}

/// The orientation a characteristic matrix induces on the boundary complex:
/// each maximal face gets the sign of the determinant of its columns in
/// ascending order. The top symmetric form in this orientation equals the
/// wedge of the matrix rows term for term.
pub fn orientation_from_lambda(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<Orientation> {
    require_int_square(p, l)?;
    require_characteristic(p, l)?;
    let n = p.dim();
    let pairs: Vec<(VertexSet, i8)> = p
        .vertices()
        .iter()
        .map(|&vertex| {
            let det = vertex_det(l, n, vertex)?;
            Ok((vertex, if det > 0 { 1 } else { -1 }))
        })
        .collect::<Result<_>>()?;
    Orientation::from_pairs(pairs)
}

/// Whether the wedge of the matrix rows is a cycle in the exterior face
/// algebra, which characterizes the existence of a torus-invariant almost
/// complex structure on the associated quasitoric manifold.
///
/// Cross-checked against the equivalent sign test: the determinant signs
/// must agree with a coherent orientation of the boundary sphere up to one
/// global flip.
pub fn almost_complex_check(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<bool> {
    require_int_square(p, l)?;
    require_characteristic(p, l)?;
    let k = p.boundary_complex();
    let wedge = wedge_linear_forms(&l.row_forms(), &k)?;
    let admits = wedge.is_cycle()?;

    let n = p.dim();
    let coherent = k.coherent_orientation()?;
    let mut products = p.vertices().iter().map(|&vertex| {
        let det = vertex_det(l, n, vertex)?;
        let sign = coherent
            .sign(vertex)
            .ok_or_else(|| Error::Internal("coherent orientation misses a maximal face".to_string()))?;
        Ok(det.signum() * i64::from(sign))
    });
    let first: i64 = products.next().ok_or(Error::EmptyComplex)??;
    let mut constant = true;
    for product in products {
        if product? != first {
            constant = false;
            break;
        }
    }
    if admits != constant {
        return Err(Error::Internal(
            "cycle test and determinant-sign test disagree".to_string(),
        ));
    }
    Ok(admits)
}

/// Whether the rows of a square `f2` matrix multiply to the top elementary
/// symmetric polynomial of the boundary complex. Over `f2` this equality
/// holds exactly for the characteristic matrices.
pub fn verify_sigma_factorization_gf2(p: &SimplePolytopeCombinatorics, l: &CharMatrix) -> Result<bool> {
    if l.ring() != Ring::Gf2 {
        return Err(Error::RingMismatch(l.ring().name(), Ring::Gf2.name()));
    }
    let n = p.dim();
    if l.rows() != n {
        return Err(Error::MatrixShape {
            rows: l.rows(),
            cols: l.cols(),
            reason: format!("the factorization identity needs exactly {} rows", n),
        });
    }
    if l.cols() != p.num_facets() {
        return Err(Error::MatrixShape {
            rows: l.rows(),
            cols: l.cols(),
            reason: format!("need one column per facet ({})", p.num_facets()),
        });
    }
    let k = p.boundary_complex();
    let wedge = wedge_linear_forms(&l.row_forms(), &k)?;
    let target = sigma(&k, n, Ring::Gf2)?;
    let wedge_terms: BTreeMap<VertexSet, i64> = wedge.terms().collect();
    let sigma_terms: BTreeMap<VertexSet, i64> = target.terms().collect();
    Ok(wedge_terms == sigma_terms)
}

/// Answer of a Buchstaber-invariant decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuchstaberAnswer {
    /// The invariant equals m - n; a certificate matrix is attached.
    Yes,
    /// Exhaustively refuted.
    No,
    /// The bounded integer search found nothing, but a matrix over `f2`
    /// exists, so larger entries might still work.
    UnknownWithinBound,
}

/// Outcome of `buchstaber_decision`, with enough material for a report to
/// re-verify every claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchstaberDecision {
    pub ring: Ring,
    pub answer: BuchstaberAnswer,
    /// Entry bound that settled (or capped) the integer search.
    pub bound: Option<i64>,
    pub certificate: Option<CharMatrix>,
    /// Orientation induced by an integer certificate.
    pub orientation: Option<Orientation>,
    /// True when an integer "no" was derived from `f2` exhaustion: a matrix
    /// over the integers would reduce mod 2 to one over `f2`, so `f2`
    /// nonexistence settles the integer question too.
    pub derived_from_gf2: bool,
    /// Statistics of the ring's own search; all zero when the integer search
    /// was skipped because the `f2` exhaustion had already refuted existence.
    pub stats: SearchStats,
    /// Statistics of the auxiliary `f2` search when one ran.
    pub gf2_stats: Option<SearchStats>,
}

/// Decides whether the Buchstaber invariant over the given ring equals
/// m - n, i.e. whether a characteristic matrix with n rows exists.
///
/// Over `f2` the search is exhaustive and the verdict definitive. Over the
/// integers a certificate settles "yes"; otherwise the `f2` search decides
/// between a definitive "no" (no matrix mod 2, hence none over the
/// integers) and an honest "unknown within bound".
pub fn buchstaber_decision(
    p: &SimplePolytopeCombinatorics,
    ring: Ring,
    bound: i64,
    options: &SearchOptions,
) -> Result<BuchstaberDecision> {
    let n = p.dim();
    match ring {
        Ring::Gf2 => {
            let (matrix, stats) = find_char_gf2(p, n, options)?;
            let answer = if matrix.is_some() { BuchstaberAnswer::Yes } else { BuchstaberAnswer::No };
            Ok(BuchstaberDecision {
                ring,
                answer,
                bound: None,
                certificate: matrix,
                orientation: None,
                derived_from_gf2: false,
                stats,
                gf2_stats: None,
            })
        }
        Ring::Int => {
            // The `f2` question comes first: when it already fails, the
            // integer one fails too (reduce any integer matrix mod 2), and
            // the bounded integer search, whose per-column candidate set is
            // strictly larger, never needs to run. When an `f2` matrix
            // exists the exhaustion cost was not paid: the search returns at
            // its first find.
            let (gf2_matrix, gf2_stats) = find_char_gf2(p, n, options)?;
            if gf2_matrix.is_none() {
                return Ok(BuchstaberDecision {
                    ring,
                    answer: BuchstaberAnswer::No,
                    bound: None,
                    certificate: None,
                    orientation: None,
                    derived_from_gf2: true,
                    stats: SearchStats::default(),
                    gf2_stats: Some(gf2_stats),
                });
            }
            let search = find_char_int(p, bound, options)?;
            if let Some(matrix) = search.matrix {
                let orientation = orientation_from_lambda(p, &matrix)?;
                return Ok(BuchstaberDecision {
                    ring,
                    answer: BuchstaberAnswer::Yes,
                    bound: search.found_at_bound,
                    certificate: Some(matrix),
                    orientation: Some(orientation),
                    derived_from_gf2: false,
                    stats: search.stats,
                    gf2_stats: Some(gf2_stats),
                });
            }
            Ok(BuchstaberDecision {
                ring,
                answer: BuchstaberAnswer::UnknownWithinBound,
                bound: Some(bound),
                certificate: None,
                orientation: None,
                derived_from_gf2: false,
                stats: search.stats,
                gf2_stats: Some(gf2_stats),
            })
        }
    }
}

/// Counting filter for k-row matrices over `f2`: when 2m exceeds the number
/// of nonzero vectors, the columns and cyclically adjacent column sums
/// cannot all be distinct, so no characteristic matrix of a cyclic dual
/// polytope exists.
pub fn cyclic_pigeonhole_excludes(m: usize, k: usize) -> bool {
    if k >= 64 {
        return false;
    }
    2 * (m as u128) > (1u128 << k) - 1
}

/// The distinctness condition behind the pigeonhole filter: the m columns
/// together with the m sums of cyclically adjacent columns must be pairwise
/// distinct and nonzero over `f2`.
pub fn cyclic_adjacent_vectors_distinct(l: &CharMatrix) -> Result<bool> {
    if l.ring() != Ring::Gf2 {
        return Err(Error::RingMismatch(l.ring().name(), Ring::Gf2.name()));
    }
    let m = l.cols();
    let codes: Vec<u64> = (1..=m).map(|c| l.column_code_gf2(c)).collect();
    let mut seen = std::collections::HashSet::new();
    for i in 0..m {
        let neighbor = codes[(i + 1) % m];
        for value in [codes[i], codes[i] ^ neighbor] {
            if value == 0 || !seen.insert(value) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
