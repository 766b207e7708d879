//! Command-line front end.
//!
//! Subcommands map one-to-one onto library entry points; this module only
//! parses arguments, loads the catalog when needed, and serializes reports.
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 inconclusive search.
//!
//! Output is deterministic: identical argv plus seed produce byte-identical
//! reports in every format. The default seed comes from `SPECMIN_SEED`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    balanced_bipartite_witness, bound, dense_reflection, evaluate_family_row,
    family_rows_at_desk_scale, hypercube_signed_matrix, unbalanced_bipartite_witness, BoundReport,
    Contribution, Direction,
};
use crate::catalog::{load_catalog, verify_order, Catalog};
use crate::constructions::{
    clique_path_matrix, clique_star_matrix, kn_minus_e_witness, signed_cycle_matrix,
};
use crate::graphs::{enumerate_connected, make_family, Family, Graph};
use crate::spectra::{
    eigensystem, in_pattern, summarize, SymMatrix, DEFAULT_GAP, DEFAULT_RANK_TOL, PATTERN_TOL,
};
use crate::search::{augment, realize, RealizationTarget, RealizationTask};
use crate::strongprops::{has_smp, has_ssp};
use crate::{Error, Result};

/// Write one line to stdout; a broken pipe (reader stopped, e.g. `| head`)
/// ends the process quietly instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut lock = std::io::stdout().lock();
        if let Err(e) = writeln!(lock, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write report: {e}");
            std::process::exit(1);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "specmin",
    version,
    about = "Certified bounds on the minimum number of distinct eigenvalues \
             of symmetric matrices with a prescribed graph pattern"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified interval for one or more graphs
    Bounds(BoundsArgs),
    /// Build a named witness matrix and verify it
    Construct(ConstructArgs),
    /// Search for a matrix realizing a spectrum or multiplicity list
    Search(SearchArgs),
    /// Check the strong spectral property of a witness
    Ssp(PropArgs),
    /// Check the strong multiplicity property of a witness
    Smp(PropArgs),
    /// Grow a witness by one vertex, raising one eigenvalue multiplicity
    Augment(AugmentArgs),
    /// Re-run every load-time check on the embedded catalog
    CatalogVerify(CatalogVerifyArgs),
    /// Reproduce the reference tables (one order, or the family table)
    Tables(TablesArgs),
    /// List the connected graphs of one order in graph6 form
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 string (omit all sources to read graph6 lines from stdin)
    #[arg(long)]
    g6: Option<String>,
    /// family name followed by integer parameters, e.g. --family cycle 8
    #[arg(long, num_args = 1.., value_name = "NAME PARAMS")]
    family: Option<Vec<String>>,
    /// catalog key of an identified graph, e.g. G105
    #[arg(long)]
    catalog: Option<String>,
}

impl GraphInput {
    fn needs_catalog(&self) -> bool {
        self.catalog.is_some()
    }

    fn resolve(&self, cat: Option<&Catalog>) -> Result<Vec<(String, Graph)>> {
        let sources =
            [self.g6.is_some(), self.family.is_some(), self.catalog.is_some()]
                .iter()
                .filter(|&&b| b)
                .count();
        if sources > 1 {
            return Err(Error::InvalidParams(
                "give at most one of --g6, --family, --catalog".into(),
            ));
        }
        if let Some(s) = &self.g6 {
            return Ok(vec![(s.clone(), Graph::from_graph6(s)?)]);
        }
        if let Some(spec) = &self.family {
            let fam: Family = spec[0].parse()?;
            let params = parse_usizes(&spec[1..])?;
            let g = make_family(fam, &params)?;
            let id = std::iter::once(spec[0].clone())
                .chain(params.iter().map(|p| p.to_string()))
                .collect::<Vec<_>>()
                .join("-");
            return Ok(vec![(id, g)]);
        }
        if let Some(key) = &self.catalog {
            let cat = cat.expect("catalog loaded for catalog key");
            return Ok(vec![(key.clone(), cat.graph(key)?)]);
        }
        let mut out = Vec::new();
        for line in std::io::stdin().lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            out.push((t.to_string(), Graph::from_graph6(t)?));
        }
        if out.is_empty() {
            return Err(Error::InvalidParams(
                "no graph given: use --g6, --family, --catalog, or pipe graph6 lines".into(),
            ));
        }
        Ok(out)
    }
}

#[derive(Args)]
struct Tolerances {
    /// eigenvalue clustering gap, relative to the spectral radius
    #[arg(long, default_value_t = DEFAULT_GAP)]
    gap: f64,
    /// relative rank tolerance used by the property verifiers
    #[arg(long = "rank-tol", default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    /// absolute tolerance for pattern membership
    #[arg(long = "pattern-tol", default_value_t = PATTERN_TOL)]
    pattern_tol: f64,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ConstructArgs {
    /// one of: flipped-cycle, clique-path, clique-star, complete-minus-edge,
    /// bipartite, reflection, hypercube
    kind: String,
    /// integer parameters for the construction
    params: Vec<usize>,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: GraphInput,
    /// target ordered multiplicity list, e.g. --mults 2,2,2
    #[arg(long, value_delimiter = ',')]
    mults: Option<Vec<usize>>,
    /// target eigenvalues, ascending with repetition, e.g. --spectrum -1,-1,0,2
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    spectrum: Option<Vec<f64>>,
    /// require the strong spectral property of the result
    #[arg(long)]
    ssp: bool,
    /// random seed (default: SPECMIN_SEED environment variable, else 0)
    #[arg(long)]
    seed: Option<u64>,
    /// random restarts
    #[arg(long, default_value_t = 40)]
    starts: usize,
    /// optimizer iterations per restart
    #[arg(long, default_value_t = 400)]
    iters: usize,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct PropArgs {
    /// label of a catalog witness, e.g. M96, banner, flipped-cycle-5
    #[arg(long)]
    catalog: Option<String>,
    /// witness JSON file with graph6 and matrix rows; "-" reads stdin
    #[arg(long)]
    witness: Option<String>,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct AugmentArgs {
    /// label of a catalog witness to grow
    #[arg(long)]
    catalog: Option<String>,
    /// witness JSON file with graph6 and matrix rows; "-" reads stdin
    #[arg(long)]
    witness: Option<String>,
    /// index into the distinct eigenvalues of the base matrix, ascending
    #[arg(long = "lambda-index")]
    lambda_index: usize,
    /// base vertices the new vertex attaches to, e.g. --alpha 1,3
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<u16>,
    /// random seed (default: SPECMIN_SEED environment variable, else 0)
    #[arg(long)]
    seed: Option<u64>,
    /// random restarts
    #[arg(long, default_value_t = 60)]
    starts: usize,
    /// optimizer iterations per restart
    #[arg(long, default_value_t = 300)]
    iters: usize,
    #[command(flatten)]
    tol: Tolerances,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct CatalogVerifyArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct TablesArgs {
    /// verify one order of the small-graph tables (1 through 6)
    #[arg(long)]
    order: Option<usize>,
    /// verify the family table at desk scale
    #[arg(long)]
    families: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct EnumerateArgs {
    /// graph order
    #[arg(long)]
    order: usize,
    /// print only the number of graphs
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let mut argv = vec!["specmin".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

/// Stable mapping from library errors to process exit codes.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_)
        | Error::Disconnected
        | Error::TooLarge(_)
        | Error::OrderMismatch(_)
        | Error::MissingElement(_)
        | Error::DimensionMismatch(_)
        | Error::UnknownKey(_)
        | Error::Parse(_)
        | Error::Io(_) => 1,
        Error::RealizationFailed(_) | Error::ConvergenceFailure { .. } => 3,
        _ => 2,
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Search(a) => cmd_search(a),
        Command::Ssp(a) => cmd_prop(a, true),
        Command::Smp(a) => cmd_prop(a, false),
        Command::Augment(a) => cmd_augment(a),
        Command::CatalogVerify(a) => cmd_catalog_verify(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    }
}

fn parse_usizes(raw: &[String]) -> Result<Vec<usize>> {
    raw.iter()
        .map(|p| {
            p.parse::<usize>().map_err(|_| {
                Error::InvalidParams(format!("parameter '{p}' is not a nonnegative integer"))
            })
        })
        .collect()
}

fn default_seed(explicit: Option<u64>) -> u64 {
    explicit.unwrap_or_else(|| {
        std::env::var("SPECMIN_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

/// Quote a CSV field only when it needs it.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const CSV_HEADER: &str = "graph-id,q-lo,q-hi,determined,provenance";

fn csv_row(id: &str, lo: usize, hi: usize, provenance: &[String]) -> String {
    format!(
        "{},{lo},{hi},{},{}",
        csv_field(id),
        lo == hi,
        csv_field(&provenance.join(";"))
    )
}

/// Citations of the contributions that achieve the final interval.
fn binding_citations(rep: &BoundReport) -> Vec<String> {
    let mut cites: Vec<String> = rep
        .contributions
        .iter()
        .filter(|c| match c.direction {
            Direction::Lower => c.value == rep.lo,
            Direction::Upper => c.value == rep.hi,
        })
        .map(|c| c.citation.clone())
        .collect();
    cites.dedup();
    cites
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Serialize)]
struct BoundsOut {
    id: String,
    graph6: String,
    order: usize,
    edges: usize,
    lo: usize,
    hi: usize,
    determined: bool,
    contributions: Vec<Contribution>,
    witnesses: Vec<String>,
}

fn cmd_bounds(a: BoundsArgs) -> Result<i32> {
    let cat = load_catalog()?;
    let graphs = a.input.resolve(Some(&cat))?;
    let many = graphs.len() > 1;
    let mut outs = Vec::with_capacity(graphs.len());
    for (id, g) in graphs {
        let rep = bound(&g, cat.registry())?;
        outs.push(BoundsOut {
            id,
            graph6: g.to_graph6(),
            order: g.n(),
            edges: g.edge_count(),
            lo: rep.lo,
            hi: rep.hi,
            determined: rep.lo == rep.hi,
            witnesses: rep.witnesses.clone(),
            contributions: rep.contributions,
        });
    }
    match a.format {
        OutputFormat::Json => {
            if many {
                outln!("{}", to_json(&outs));
            } else {
                outln!("{}", to_json(&outs[0]));
            }
        }
        OutputFormat::Csv => {
            outln!("{CSV_HEADER}");
            for o in &outs {
                let cites: Vec<String> = o
                    .contributions
                    .iter()
                    .filter(|c| match c.direction {
                        Direction::Lower => c.value == o.lo,
                        Direction::Upper => c.value == o.hi,
                    })
                    .map(|c| c.citation.clone())
                    .collect();
                outln!("{}", csv_row(&o.id, o.lo, o.hi, &cites));
            }
        }
        OutputFormat::Text => {
            for o in &outs {
                let tag = if o.determined { "determined" } else { "open" };
                outln!(
                    "{} (order {}, {} edges): q in [{}, {}], {tag}",
                    o.id, o.order, o.edges, o.lo, o.hi
                );
                for c in &o.contributions {
                    let dir = match c.direction {
                        Direction::Lower => "lower",
                        Direction::Upper => "upper",
                    };
                    outln!("  {dir} {} via {}: {}", c.value, c.citation, c.detail);
                }
                if !o.witnesses.is_empty() {
                    outln!("  witnesses: {}", o.witnesses.join(", "));
                }
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// witness documents (construct / search / augment output, ssp / smp input)

#[derive(Serialize)]
struct WitnessDoc {
    label: String,
    citation: String,
    graph6: String,
    order: usize,
    edges: Vec<(u16, u16)>,
    matrix: Vec<Vec<f64>>,
    eigenvalues: Vec<f64>,
    ordered_mult: Vec<usize>,
    q: usize,
    ssp: bool,
    smp: bool,
}

impl WitnessDoc {
    fn build(
        label: &str,
        citation: &str,
        g: &Graph,
        m: &SymMatrix,
        tol: &Tolerances,
        claimed_q: Option<usize>,
    ) -> Result<WitnessDoc> {
        if !in_pattern(m, g, tol.pattern_tol) {
            return Err(Error::PatternMismatch(format!(
                "{label}: matrix does not realize its graph"
            )));
        }
        let summary = summarize(&eigensystem(m)?.values, tol.gap);
        if let Some(want) = claimed_q {
            if summary.q != want {
                return Err(Error::VerificationFailed(format!(
                    "{label}: {} distinct eigenvalues, claimed {want}",
                    summary.q
                )));
            }
        }
        let ssp = has_ssp(m, g, tol.rank_tol)?;
        let smp = if ssp { true } else { has_smp(m, g, tol.rank_tol)? };
        Ok(WitnessDoc {
            label: label.to_string(),
            citation: citation.to_string(),
            graph6: g.to_graph6(),
            order: g.n(),
            edges: g.edges().to_vec(),
            matrix: m.rows(),
            eigenvalues: summary.eigenvalues.clone(),
            ordered_mult: summary.ordered_mult.clone(),
            q: summary.q,
            ssp,
            smp,
        })
    }

    fn emit(&self, format: OutputFormat) {
        match format {
            OutputFormat::Json => outln!("{}", to_json(self)),
            OutputFormat::Csv => {
                outln!("{CSV_HEADER}");
                outln!("{}", csv_row(&self.label, self.q, self.q, &[self.citation.clone()]));
            }
            OutputFormat::Text => {
                outln!(
                    "{} on {} (order {}): q = {}, mult = {:?}, ssp = {}, smp = {} [{}]",
                    self.label,
                    self.graph6,
                    self.order,
                    self.q,
                    self.ordered_mult,
                    self.ssp,
                    self.smp,
                    self.citation
                );
                for row in &self.matrix {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:+.6}")).collect();
                    outln!("  {}", cells.join(" "));
                }
            }
        }
    }
}

#[derive(Deserialize)]
struct WitnessIn {
    label: Option<String>,
    graph6: Option<String>,
    order: Option<usize>,
    edges: Option<Vec<(u16, u16)>>,
    matrix: Vec<Vec<f64>>,
}

/// Load a witness from a catalog label or a JSON document.
fn resolve_witness(
    catalog_label: &Option<String>,
    witness_path: &Option<String>,
) -> Result<(String, Graph, SymMatrix)> {
    match (catalog_label, witness_path) {
        (Some(_), Some(_)) => Err(Error::InvalidParams(
            "give exactly one of --catalog and --witness".into(),
        )),
        (Some(label), None) => {
            let cat = load_catalog()?;
            let norm = |s: &str| s.to_lowercase().replace(['_', '-'], "");
            let wanted = norm(label);
            for w in cat.registry().witnesses() {
                if norm(&w.label) == wanted {
                    return Ok((w.label.clone(), w.graph.clone(), w.matrix.clone()));
                }
            }
            Err(Error::UnknownKey(format!("no catalog witness labeled '{label}'")))
        }
        (None, Some(path)) => {
            let text = if path == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(path)?
            };
            let doc: WitnessIn = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("witness document: {e}")))?;
            let g = match (&doc.graph6, doc.order, &doc.edges) {
                (Some(s), _, _) => Graph::from_graph6(s)?,
                (None, Some(n), Some(edges)) => Graph::new(n, edges)?,
                _ => {
                    return Err(Error::Parse(
                        "witness document needs graph6, or order plus edges".into(),
                    ))
                }
            };
            let m = SymMatrix::from_rows(&doc.matrix)?;
            Ok((doc.label.unwrap_or_else(|| "witness".into()), g, m))
        }
        (None, None) => Err(Error::InvalidParams(
            "give a witness via --catalog LABEL or --witness FILE".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// construct

fn cmd_construct(a: ConstructArgs) -> Result<i32> {
    let p = &a.params;
    let need = |count: usize, what: &str| -> Result<()> {
        if p.len() != count {
            return Err(Error::InvalidParams(format!(
                "{} expects {what}",
                a.kind
            )));
        }
        Ok(())
    };
    let doc = match a.kind.as_str() {
        "flipped-cycle" => {
            need(1, "one parameter: the cycle length (>= 3)")?;
            if p[0] < 3 {
                return Err(Error::InvalidParams("cycle length must be at least 3".into()));
            }
            let g = make_family(Family::Cycle, &[p[0]])?;
            let m = signed_cycle_matrix(p[0]);
            WitnessDoc::build(
                &format!("flipped-cycle-{}", p[0]),
                "flipped-cycle",
                &g,
                &m,
                &a.tol,
                Some(p[0].div_ceil(2)),
            )?
        }
        "clique-path" => {
            let cr = clique_path_matrix(p)?;
            let label = format!("clique-path-{}", join_dash(p));
            WitnessDoc::build(&label, &cr.citation, &cr.graph, &cr.matrix, &a.tol, Some(cr.claimed_q_upper))?
        }
        "clique-star" => {
            let cr = clique_star_matrix(p)?;
            let label = format!("clique-star-{}", join_dash(p));
            WitnessDoc::build(&label, &cr.citation, &cr.graph, &cr.matrix, &a.tol, Some(cr.claimed_q_upper))?
        }
        "complete-minus-edge" => {
            need(1, "one parameter: the order (>= 4)")?;
            let cr = kn_minus_e_witness(p[0])?;
            let label = format!("complete-minus-edge-{}", p[0]);
            WitnessDoc::build(&label, &cr.citation, &cr.graph, &cr.matrix, &a.tol, Some(cr.claimed_q_upper))?
        }
        "bipartite" => {
            need(2, "two parameters: the part sizes")?;
            let (m_size, n_size) = (p[0], p[1]);
            let g = make_family(Family::CompleteBipartite, &[m_size, n_size])?;
            let (m, claimed) = if m_size == n_size {
                (balanced_bipartite_witness(n_size), 2)
            } else {
                (unbalanced_bipartite_witness(m_size, n_size), 3)
            };
            WitnessDoc::build(
                &format!("bipartite-{m_size}-{n_size}"),
                "complete-bipartite",
                &g,
                &m,
                &a.tol,
                Some(claimed),
            )?
        }
        "reflection" => {
            need(1, "one parameter: the order (>= 2)")?;
            if p[0] < 2 {
                return Err(Error::InvalidParams("order must be at least 2".into()));
            }
            let g = make_family(Family::Complete, &[p[0]])?;
            WitnessDoc::build(
                &format!("reflection-{}", p[0]),
                "householder-reflection",
                &g,
                &dense_reflection(p[0]),
                &a.tol,
                Some(2),
            )?
        }
        "hypercube" => {
            need(1, "one parameter: the dimension (>= 1)")?;
            let g = make_family(Family::Hypercube, &[p[0]])?;
            let m = hypercube_signed_matrix(p[0])?;
            WitnessDoc::build(
                &format!("hypercube-{}", p[0]),
                "hypercube-signing",
                &g,
                &m,
                &a.tol,
                Some(2),
            )?
        }
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown construction '{other}'; use flipped-cycle, clique-path, clique-star, \
                 complete-minus-edge, bipartite, reflection, or hypercube"
            )))
        }
    };
    doc.emit(a.format);
    Ok(0)
}

fn join_dash(params: &[usize]) -> String {
    params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("-")
}

// ---------------------------------------------------------------------------
// search / augment

fn cmd_search(a: SearchArgs) -> Result<i32> {
    let cat = if a.input.needs_catalog() { Some(load_catalog()?) } else { None };
    let graphs = a.input.resolve(cat.as_ref())?;
    if graphs.len() != 1 {
        return Err(Error::InvalidParams("search takes exactly one graph".into()));
    }
    let (id, g) = graphs.into_iter().next().unwrap();
    let target = match (&a.mults, &a.spectrum) {
        (Some(m), None) => RealizationTarget::Multiplicities(m.clone()),
        (None, Some(s)) => RealizationTarget::Spectrum(s.clone()),
        _ => {
            return Err(Error::InvalidParams(
                "give exactly one target: --mults or --spectrum".into(),
            ))
        }
    };
    let mut task = RealizationTask::new(g.clone(), target, default_seed(a.seed))
        .with_budget(a.starts, a.iters);
    if a.ssp {
        task = task.with_ssp();
    }
    match realize(&task)? {
        Some(m) => {
            let doc = WitnessDoc::build(
                &format!("realized-{id}"),
                "search-realization",
                &g,
                &m,
                &a.tol,
                None,
            )?;
            doc.emit(a.format);
            Ok(0)
        }
        None => {
            eprintln!("search exhausted: no realization found within the budget");
            Ok(3)
        }
    }
}

fn cmd_augment(a: AugmentArgs) -> Result<i32> {
    let (label, g, m) = resolve_witness(&a.catalog, &a.witness)?;
    match augment(&m, &g, a.lambda_index, &a.alpha, default_seed(a.seed), a.starts, a.iters)? {
        Some((grown, h)) => {
            let doc = WitnessDoc::build(
                &format!("{label}-grown"),
                "augmented-witness",
                &h,
                &grown,
                &a.tol,
                None,
            )?;
            doc.emit(a.format);
            Ok(0)
        }
        None => {
            eprintln!("search exhausted: no augmentation found within the budget");
            Ok(3)
        }
    }
}

// ---------------------------------------------------------------------------
// ssp / smp

#[derive(Serialize)]
struct PropOut {
    label: String,
    property: String,
    value: bool,
}

fn cmd_prop(a: PropArgs, spectral: bool) -> Result<i32> {
    let (label, g, m) = resolve_witness(&a.catalog, &a.witness)?;
    if !in_pattern(&m, &g, a.tol.pattern_tol) {
        return Err(Error::PatternMismatch(format!(
            "{label}: matrix does not realize its graph"
        )));
    }
    let value = if spectral {
        has_ssp(&m, &g, a.tol.rank_tol)?
    } else {
        has_smp(&m, &g, a.tol.rank_tol)?
    };
    let name = if spectral { "SSP" } else { "SMP" };
    match a.format {
        OutputFormat::Json => outln!(
            "{}",
            to_json(&PropOut { label, property: name.to_lowercase(), value })
        ),
        OutputFormat::Csv => {
            outln!("label,property,value");
            outln!("{},{},{value}", csv_field(&label), name.to_lowercase());
        }
        OutputFormat::Text => outln!("{name}: {value}"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// catalog-verify

#[derive(Serialize)]
struct CatalogVerifyOut {
    ok: bool,
    keyed_values: usize,
    witnesses: usize,
    report: Vec<String>,
}

fn cmd_catalog_verify(a: CatalogVerifyArgs) -> Result<i32> {
    let cat = load_catalog()?;
    let out = CatalogVerifyOut {
        ok: true,
        keyed_values: cat.keys().len(),
        witnesses: cat.registry().witnesses().len(),
        report: cat.report().to_vec(),
    };
    match a.format {
        OutputFormat::Json => outln!("{}", to_json(&out)),
        OutputFormat::Csv | OutputFormat::Text => {
            for line in &out.report {
                outln!("{line}");
            }
            outln!(
                "catalog ok: {} keyed values, {} verified witnesses",
                out.keyed_values, out.witnesses
            );
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// tables

#[derive(Serialize)]
struct FamilyOut {
    family: String,
    expected: usize,
    lo: usize,
    hi: usize,
    exact: bool,
    citations: Vec<String>,
}

fn cmd_tables(a: TablesArgs) -> Result<i32> {
    match (a.order, a.families) {
        (Some(_), true) | (None, false) => Err(Error::InvalidParams(
            "give exactly one of --order N or --families".into(),
        )),
        (Some(order), false) => tables_order(order, a.format),
        (None, true) => tables_families(a.format),
    }
}

fn tables_families(format: OutputFormat) -> Result<i32> {
    let mut outs = Vec::new();
    for row in family_rows_at_desk_scale() {
        let rep = evaluate_family_row(&row)?;
        let expected = row.expected_q();
        outs.push(FamilyOut {
            family: row.label(),
            expected,
            lo: rep.lo,
            hi: rep.hi,
            exact: rep.lo == expected && rep.hi == expected,
            citations: binding_citations(&rep),
        });
    }
    let exact = outs.iter().filter(|o| o.exact).count();
    match format {
        OutputFormat::Json => outln!("{}", to_json(&outs)),
        OutputFormat::Csv => {
            outln!("{CSV_HEADER}");
            for o in &outs {
                outln!("{}", csv_row(&o.family, o.lo, o.hi, &o.citations));
            }
        }
        OutputFormat::Text => {
            for o in &outs {
                let mark = if o.exact { "ok " } else { "MISS" };
                outln!(
                    "{mark} {:<16} expected {} got [{}, {}] via {}",
                    o.family,
                    o.expected,
                    o.lo,
                    o.hi,
                    o.citations.join(";")
                );
            }
            outln!("family rows determined at the formula value: {exact}/{}", outs.len());
        }
    }
    Ok(if exact == outs.len() { 0 } else { 2 })
}

fn tables_order(order: usize, format: OutputFormat) -> Result<i32> {
    let cat = load_catalog()?;
    let v = verify_order(&cat, order)?;
    let ok = v.matching_feasible && v.problems.is_empty();
    match format {
        OutputFormat::Json => outln!("{}", to_json(&v)),
        OutputFormat::Csv => {
            outln!("{CSV_HEADER}");
            for r in &v.rows {
                let id = r.key.clone().unwrap_or_else(|| r.graph6.clone());
                outln!("{}", csv_row(&id, r.lo, r.hi, &r.citations));
            }
        }
        OutputFormat::Text => {
            outln!("order {order}: {} connected graphs", v.rows.len());
            outln!("matching feasible: {}", v.matching_feasible);
            outln!(
                "identified values inside intervals: {}/{}",
                v.identified_in_interval, v.identified_total
            );
            outln!(
                "constructive pins exact: {}/{}",
                v.constructive_exact, v.constructive_total
            );
            outln!("determined: {}/{}", v.determined, v.rows.len());
            let named: Vec<&str> = v
                .rows
                .iter()
                .filter_map(|r| r.key.as_deref())
                .collect();
            if !named.is_empty() {
                outln!("named graphs verified: {}", named.join(", "));
            }
            for p in &v.problems {
                outln!("problem: {p}");
            }
        }
    }
    Ok(if ok { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// enumerate

#[derive(Serialize)]
struct EnumerateOut {
    order: usize,
    count: usize,
    graphs: Vec<String>,
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<i32> {
    let graphs = enumerate_connected(a.order)?;
    let g6: Vec<String> = graphs.iter().map(Graph::to_graph6).collect();
    match a.format {
        OutputFormat::Json => {
            let out = EnumerateOut { order: a.order, count: g6.len(), graphs: if a.count_only { Vec::new() } else { g6 } };
            outln!("{}", to_json(&out));
        }
        OutputFormat::Csv => {
            if a.count_only {
                outln!("order,count");
                outln!("{},{}", a.order, g6.len());
            } else {
                outln!("graph-id");
                for s in &g6 {
                    outln!("{}", csv_field(s));
                }
            }
        }
        OutputFormat::Text => {
            if a.count_only {
                outln!("{}", g6.len());
            } else {
                for s in &g6 {
                    outln!("{s}");
                }
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_are_stable() {
        assert_eq!(error_code(&Error::InvalidParams("x".into())), 1);
        assert_eq!(error_code(&Error::UnknownKey("x".into())), 1);
        assert_eq!(error_code(&Error::Parse("x".into())), 1);
        assert_eq!(error_code(&Error::VerificationFailed("x".into())), 2);
        assert_eq!(error_code(&Error::CatalogCorrupt("x".into())), 2);
        assert_eq!(error_code(&Error::PatternMismatch("x".into())), 2);
        assert_eq!(error_code(&Error::RealizationFailed("x".into())), 3);
    }

    #[test]
    fn csv_rows_quote_only_when_needed() {
        assert_eq!(csv_row("G105", 3, 3, &["cycle".into()]), "G105,3,3,true,cycle");
        let quoted = csv_row("a,b", 1, 2, &["x".into(), "y".into()]);
        assert_eq!(quoted, "\"a,b\",1,2,false,x;y");
    }

    #[test]
    fn family_input_builds_the_requested_graph() {
        let input = GraphInput {
            g6: None,
            family: Some(vec!["cycle".into(), "8".into()]),
            catalog: None,
        };
        let graphs = input.resolve(None).unwrap();
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0].0, "cycle-8");
        assert_eq!(graphs[0].1.n(), 8);
        assert_eq!(graphs[0].1.edge_count(), 8);
    }

    #[test]
    fn conflicting_graph_sources_are_rejected() {
        let input = GraphInput {
            g6: Some("D?{".into()),
            family: Some(vec!["path".into(), "3".into()]),
            catalog: None,
        };
        assert!(matches!(input.resolve(None), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn witness_documents_round_trip_for_ingestion() {
        let g = make_family(Family::Cycle, &[5]).unwrap();
        let m = signed_cycle_matrix(5);
        let tol = Tolerances { gap: DEFAULT_GAP, rank_tol: DEFAULT_RANK_TOL, pattern_tol: PATTERN_TOL };
        let doc = WitnessDoc::build("flipped-cycle-5", "flipped-cycle", &g, &m, &tol, Some(3)).unwrap();
        assert!(doc.smp);
        assert!(!doc.ssp);
        let text = to_json(&doc);
        let parsed: WitnessIn = serde_json::from_str(&text).unwrap();
        let g2 = Graph::from_graph6(&parsed.graph6.unwrap()).unwrap();
        let m2 = SymMatrix::from_rows(&parsed.matrix).unwrap();
        assert_eq!(g2.edge_count(), 5);
        assert!(m2.max_abs_diff(&m).unwrap() == 0.0);
    }

    #[test]
    fn claimed_count_mismatch_is_a_verification_failure() {
        let g = make_family(Family::Cycle, &[5]).unwrap();
        let m = signed_cycle_matrix(5);
        let tol = Tolerances { gap: DEFAULT_GAP, rank_tol: DEFAULT_RANK_TOL, pattern_tol: PATTERN_TOL };
        let err = WitnessDoc::build("x", "flipped-cycle", &g, &m, &tol, Some(4)).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed(_)));
        assert_eq!(error_code(&err), 2);
    }
}
