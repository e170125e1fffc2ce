use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use toricalg::charfun::{
    almost_complex_check, buchstaber_decision, cyclic_pigeonhole_excludes, is_characteristic,
    orientation_from_lambda, verify_sigma_factorization_gf2, BuchstaberAnswer, CharMatrix,
    SearchOptions, SearchStats, DEFAULT_INT_BOUND,
};
use toricalg::coloring::{color, coloring_to_lambdas, joswig_check};
use toricalg::cyclic::cyclic_dual_polytope;
use toricalg::decompose::{
    factor_product_polynomial, format_factor_partition, format_factor_product, is_product_polytope,
};
use toricalg::document::{self, PolytopeDocument};
use toricalg::face_ring::{polynomial_of_complex, sigma};
use toricalg::library;
use toricalg::report::{
    polytope_section, reverify_coloring, reverify_matrix, reverify_orientation, Report,
};
use toricalg::{Error, Orientation, Result, Ring, SimplePolytopeCombinatorics};

/// Exit codes: 0 decided or verified, 1 negative verdict, 2 unknown within
/// the search bound, 3 input or computation error, 4 usage error.
#[derive(Parser)]
#[command(name = "toricalg", version, about = "Decides decomposability, colorability, Buchstaber invariants and almost complex structures of simple polytopes through their face rings")]
struct Cli {
    /// Emit the report as one JSON object instead of text sections.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an elementary symmetric polynomial of the boundary complex.
    Sigma {
        /// Built-in name (prism, cube:3, cyclic:4:7, ...) or document path.
        polytope: String,
        /// Degree of the polynomial; defaults to the dimension.
        #[arg(long)]
        degree: Option<usize>,
        /// Coefficient ring: int or f2.
        #[arg(long, default_value = "int")]
        field: String,
    },
    /// Decide whether the polytope is a product of lower-dimensional ones.
    Decompose {
        polytope: String,
    },
    /// Search for a proper facet coloring with exactly the given color count.
    Color {
        polytope: String,
        /// Number of colors; defaults to the dimension.
        #[arg(long)]
        colors: Option<usize>,
    },
    /// Decide whether the Buchstaber invariant equals facets minus dimension.
    Buchstaber {
        polytope: String,
        /// Coefficient ring: int or f2.
        #[arg(long, default_value = "int")]
        field: String,
        /// Largest matrix entry magnitude tried by the integer search.
        #[arg(long, default_value_t = DEFAULT_INT_BOUND)]
        bound: i64,
    },
    /// Test an integer characteristic matrix for an invariant almost complex structure.
    Acs {
        polytope: String,
        /// Matrix file: `ring rows cols` header, then one line per row.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Generate the dual of a cyclic polytope as a polytope document.
    Cyclic {
        /// Dimension (at least 2).
        n: usize,
        /// Number of points on the moment curve (more than n).
        m: usize,
    },
    /// Check a matrix against the vertex basis condition.
    VerifyChar {
        polytope: String,
        #[arg(long)]
        matrix: PathBuf,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = err.print();
            return code;
        }
    };
    let started = Instant::now();
    match dispatch(&cli.command, cli.json) {
        Ok((mut report, code)) => {
            let elapsed = started.elapsed().as_secs_f64() * 1e3;
            if !report.is_empty() {
                report.push("timing", "elapsed_ms", (elapsed * 1e3).round() / 1e3);
            }
            emit(&report, cli.json);
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            3
        }
    }
}

/// Writes to stdout, swallowing broken-pipe errors so that piping into
/// `head` and friends does not turn a decided run into a panic.
fn write_stdout(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &Report, json: bool) {
    if report.is_empty() {
        return;
    }
    if json {
        let rendered = serde_json::to_string_pretty(&report.to_json())
            .expect("report values are plain JSON");
        write_stdout(&rendered);
        write_stdout("\n");
    } else {
        write_stdout(&report.to_text());
    }
}

fn dispatch(command: &Command, json: bool) -> Result<(Report, i32)> {
    match command {
        Command::Sigma { polytope, degree, field } => run_sigma(polytope, *degree, field),
        Command::Decompose { polytope } => run_decompose(polytope),
        Command::Color { polytope, colors } => run_color(polytope, *colors),
        Command::Buchstaber { polytope, field, bound } => run_buchstaber(polytope, field, *bound),
        Command::Acs { polytope, matrix } => run_acs(polytope, matrix),
        Command::Cyclic { n, m } => run_cyclic(*n, *m, json),
        Command::VerifyChar { polytope, matrix } => run_verify_char(polytope, matrix),
    }
}

fn load_polytope(spec: &str) -> Result<SimplePolytopeCombinatorics> {
    if let Some(result) = library::builtin(spec) {
        return result;
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read polytope file {spec:?}: {e}"),
    })?;
    document::parse_polytope(&text)
}

fn load_matrix(path: &PathBuf) -> Result<CharMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read matrix file {}: {e}", path.display()),
    })?;
    CharMatrix::parse(&text)
}

fn format_orientation(orientation: &Orientation) -> String {
    orientation
        .iter()
        .map(|(face, sign)| format!("{face}:{}", if sign > 0 { "+1" } else { "-1" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_stats(report: &mut Report, section: &str, stats: &SearchStats) {
    report.push(section, "nodes", stats.nodes);
    report.push(section, "leaves", stats.leaves);
    report.push(section, "space", stats.space);
}

fn run_sigma(spec: &str, degree: Option<usize>, field: &str) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let ring = Ring::parse(field)?;
    let degree = degree.unwrap_or_else(|| p.dim());
    let k = p.boundary_complex();
    let poly = sigma(&k, degree, ring)?;
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    report.push("sigma", "degree", degree as u64);
    report.push("sigma", "ring", ring.name());
    report.push("sigma", "terms", poly.num_terms() as u64);
    report.push("sigma", "polynomial", poly.to_string());
    Ok((report, 0))
}

fn run_decompose(spec: &str) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let decision = is_product_polytope(&p)?;
    let k = p.boundary_complex();
    let product = factor_product_polynomial(&decision.factors, p.num_facets(), Ring::Int)?;
    if product != polynomial_of_complex(&k, Ring::Int) {
        return Err(Error::Internal(
            "factorization does not reproduce the generating polynomial".to_string(),
        ));
    }
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    report.push("decomposition", "product", decision.is_product);
    report.push("decomposition", "num_factors", decision.factors.len() as u64);
    report.push("decomposition", "factors", format_factor_partition(&decision.factors));
    report.push(
        "decomposition",
        "product_form",
        format_factor_product(&decision.factors, p.num_facets(), Ring::Int),
    );
    let code = if decision.is_product { 0 } else { 1 };
    Ok((report, code))
}

fn run_color(spec: &str, colors: Option<usize>) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let n = p.dim();
    let requested = colors.unwrap_or(n);
    // Query the requested count first so that an out-of-range value is
    // reported with the user's number, not an intermediate one.
    let certificate = color(&p, requested)?;
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    for count in n..requested {
        let found = color(&p, count)?;
        report.push("colorability", &format!("l{count}"), found.is_some());
    }
    report.push("colorability", &format!("l{requested}"), certificate.is_some());
    if n >= 2 {
        let even_edges = joswig_check(&p)?;
        report.push("colorability", "even_edge_test", even_edges);
        if even_edges != color(&p, n)?.is_some() {
            return Err(Error::Internal(
                "even-edge test disagrees with the coloring search".to_string(),
            ));
        }
    }
    let code = match &certificate {
        Some(cert) => {
            reverify_coloring(&p, cert)?;
            report.push("certificate", "num_colors", cert.num_colors() as u64);
            report.push("certificate", "classes", cert.to_string());
            let lambdas = coloring_to_lambdas(cert, Ring::Int);
            let rendered: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
            report.push("certificate", "lambdas", rendered.join(", "));
            0
        }
        None => {
            report.push("certificate", "classes", serde_json::Value::Null);
            1
        }
    };
    Ok((report, code))
}

fn run_buchstaber(spec: &str, field: &str, bound: i64) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let ring = Ring::parse(field)?;
    let options = SearchOptions::from_env()?;
    let decision = buchstaber_decision(&p, ring, bound, &options)?;
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    report.push("buchstaber", "ring", ring.name());
    report.push(
        "buchstaber",
        "answer",
        serde_json::to_value(decision.answer).expect("answer serializes to a string"),
    );
    if let Some(bound) = decision.bound {
        report.push("buchstaber", "bound", bound);
    }
    if decision.derived_from_gf2 {
        report.push("buchstaber", "derived_from_f2_exhaustion", true);
    }
    if spec.starts_with("cyclic:") {
        report.push(
            "buchstaber",
            "pigeonhole_excludes",
            cyclic_pigeonhole_excludes(p.num_facets(), p.dim()),
        );
    }
    if let Some(matrix) = &decision.certificate {
        reverify_matrix(&p, matrix)?;
        report.push("certificate", "matrix", matrix.to_string());
        if matrix.ring() == Ring::Gf2 && matrix.rows() == p.dim() {
            report.push(
                "certificate",
                "sigma_factorization",
                verify_sigma_factorization_gf2(&p, matrix)?,
            );
        }
    }
    if let Some(orientation) = &decision.orientation {
        let matrix = decision
            .certificate
            .as_ref()
            .expect("an orientation is only extracted from a certificate");
        reverify_orientation(&p, matrix, orientation)?;
        report.push("certificate", "orientation", format_orientation(orientation));
    }
    if !decision.derived_from_gf2 {
        push_stats(&mut report, "search", &decision.stats);
    }
    if let Some(gf2_stats) = &decision.gf2_stats {
        report.push("search", "f2_nodes", gf2_stats.nodes);
        report.push("search", "f2_space", gf2_stats.space);
    }
    let code = match decision.answer {
        BuchstaberAnswer::Yes => 0,
        BuchstaberAnswer::No => 1,
        BuchstaberAnswer::UnknownWithinBound => 2,
    };
    Ok((report, code))
}

fn run_acs(spec: &str, matrix: &PathBuf) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let l = load_matrix(matrix)?;
    let admits = almost_complex_check(&p, &l)?;
    let orientation = orientation_from_lambda(&p, &l)?;
    reverify_matrix(&p, &l)?;
    reverify_orientation(&p, &l, &orientation)?;
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    report.push("matrix", "ring", l.ring().name());
    report.push("matrix", "matrix", l.to_string());
    report.push("acs", "cycle", admits);
    report.push("acs", "orientation", format_orientation(&orientation));
    Ok((report, if admits { 0 } else { 1 }))
}

fn run_cyclic(n: usize, m: usize, json: bool) -> Result<(Report, i32)> {
    let p = cyclic_dual_polytope(n, m)?;
    let doc = PolytopeDocument::from_polytope(&format!("cyclic:{n}:{m}"), &p);
    let mut report = Report::new();
    if json {
        report.push("document", "name", doc.name.clone());
        report.push("document", "dimension", doc.n as u64);
        report.push("document", "facets", doc.m as u64);
        report.push(
            "document",
            "vertices",
            serde_json::to_value(&doc.vertices).expect("vertex lists are plain JSON"),
        );
        report.push("document", "text", doc.serialize());
    } else {
        // The plain output is the document itself so it can be piped into a
        // file and fed back to the other subcommands.
        write_stdout(&doc.serialize());
    }
    Ok((report, 0))
}

fn run_verify_char(spec: &str, matrix: &PathBuf) -> Result<(Report, i32)> {
    let p = load_polytope(spec)?;
    let l = load_matrix(matrix)?;
    let check = is_characteristic(&p, &l)?;
    let mut report = Report::new();
    polytope_section(&mut report, spec, &p);
    report.push("matrix", "ring", l.ring().name());
    report.push("matrix", "rows", l.rows() as u64);
    report.push("matrix", "cols", l.cols() as u64);
    report.push("matrix", "matrix", l.to_string());
    report.push("check", "characteristic", check.ok);
    if check.ok {
        if l.rows() == p.dim() {
            match l.ring() {
                Ring::Gf2 => {
                    report.push("check", "sigma_factorization", verify_sigma_factorization_gf2(&p, &l)?);
                }
                Ring::Int => {
                    let orientation = orientation_from_lambda(&p, &l)?;
                    reverify_orientation(&p, &l, &orientation)?;
                    report.push("check", "orientation", format_orientation(&orientation));
                    report.push("check", "almost_complex", almost_complex_check(&p, &l)?);
                }
            }
        }
    } else {
        let failures: Vec<String> = check.failures.iter().map(|v| v.to_string()).collect();
        report.push("check", "failing_vertices", failures.join(" "));
    }
    Ok((report, if check.ok { 0 } else { 1 }))
}
