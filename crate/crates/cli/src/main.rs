use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bookspectra::booksize::booksize;
use bookspectra::graph::{
    blow_up, book, complete_bipartite, prism_blowup, s_plus, BlowupSpec, Graph,
};
use bookspectra::report::{fmt_real, to_json, to_json_pretty};
use bookspectra::search::{
    anneal_search, blowup_search, BlowupOptions, Condition, Direction, Schedule, SearchResult,
};
use bookspectra::spectral::{solve_splus_rho, spectral_radius, DEFAULT_TOL};
use bookspectra::trace::{build_trace, verify_claims, verify_identities};
use bookspectra::verify::{
    census_record, run_census, verify_extremal_families, CensusConfig, CensusInput, CSV_HEADER,
};
use bookspectra::{parse_graph6, write_graph6};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "bookspectra",
    version,
    about = "Spectral radius and booksize toolkit for graphs"
)]
struct Cli {
    /// Worker threads (default: available parallelism). Never affects output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph from a named family and print its graph6 string.
    Construct(ConstructArgs),
    /// Full per-graph record (census fields and flags) for graph6 input.
    Stats(StatsArgs),
    /// Certified spectral radius enclosure.
    Rho(GraphIo),
    /// Booksize with a witness edge.
    Bk(GraphIo),
    /// Root of ρ² = m − 1 + 2s/(ρ − 1).
    SolveRho(SolveArgs),
    /// Structural decomposition around the top Perron coordinate.
    Trace(TraceArgs),
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    CompleteBipartite,
    Book,
    Splus,
    Blowup,
    Prism,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Csv,
    Jsonl,
    Json,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Part size (complete-bipartite).
    #[arg(long)]
    a: Option<usize>,
    /// Part size (complete-bipartite).
    #[arg(long)]
    b: Option<usize>,
    /// Pages (book).
    #[arg(long)]
    r: Option<usize>,
    /// Edge count (splus).
    #[arg(long)]
    m: Option<usize>,
    /// Small part size (splus).
    #[arg(long)]
    s: Option<usize>,
    /// Uniform weight (prism).
    #[arg(long)]
    k: Option<usize>,
    /// Base graph in graph6 (blowup).
    #[arg(long)]
    base: Option<String>,
    /// Comma-separated weights (blowup).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<usize>>,
}

#[derive(Args, Debug, Serialize)]
struct StatsArgs {
    /// graph6 file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct GraphIo {
    /// A single graph6 string; otherwise graphs are read from --in or standard input.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct SolveArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Args, Debug, Serialize)]
struct TraceArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Emit the full trace as JSON instead of a text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Evaluate every predicate over enumerated or ingested graphs.
    Census(CensusArgs),
    /// Check the prism blow-up and S⁺ families.
    Extremal(ExtremalArgs),
}

#[derive(Args, Debug, Serialize)]
struct CensusArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 7)]
    n_max: usize,
    /// Include disconnected graphs.
    #[arg(long)]
    all: bool,
    /// Required for n = 8 (2^28 labeled graphs).
    #[arg(long)]
    allow_eight: bool,
    /// graph6 input instead of the internal enumerator.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct ExtremalArgs {
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    /// `m:s` pairs.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "17:1,37:2,101:4,1001:4,1001:8"
    )]
    splus: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Simulated annealing over connected graphs on n vertices.
    Anneal(AnnealArgs),
    /// Integer weight search over blow-ups of small base graphs.
    Blowup(BlowupArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConditionArg {
    StrictNosal,
    Weak,
}

impl From<ConditionArg> for Condition {
    fn from(c: ConditionArg) -> Self {
        match c {
            ConditionArg::StrictNosal => Condition::StrictNosal,
            ConditionArg::Weak => Condition::Weak,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirectionArg {
    Maximize,
    Minimize,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Maximize => Direction::Maximize,
            DirectionArg::Minimize => Direction::Minimize,
        }
    }
}

#[derive(Args, Debug)]
struct AnnealArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ConditionArg::Weak)]
    condition: ConditionArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.2)]
    t0: f64,
    #[arg(long, default_value_t = 0.999)]
    factor: f64,
    /// Steps per restart (default 200 n²).
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long)]
    trajectory: bool,
    #[arg(long, value_enum, default_value_t = DirectionArg::Maximize)]
    direction: DirectionArg,
    /// Append the result with reproduction metadata to this JSON-lines file.
    #[arg(long)]
    ledger: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BlowupArgs {
    #[arg(long, default_value_t = 6)]
    base_n_max: usize,
    #[arg(long, value_enum, default_value_t = ConditionArg::Weak)]
    condition: ConditionArg,
    #[arg(long, default_value_t = 64)]
    max_weight: usize,
    #[arg(long, value_enum, default_value_t = DirectionArg::Maximize)]
    direction: DirectionArg,
    #[arg(long)]
    ledger: Option<PathBuf>,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Bad input or parameters: exit 1.
    Usage(String),
    /// A checked property failed: exit 2.
    Violation(String),
    /// Downstream closed the pipe; not an error.
    Closed,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

type Res = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Res {
    match cmd {
        Command::Construct(a) => construct(&a),
        Command::Stats(a) => stats(&a),
        Command::Rho(a) => rho(&a),
        Command::Bk(a) => bk(&a),
        Command::SolveRho(a) => solve(&a),
        Command::Trace(a) => trace(&a),
        Command::Verify(VerifyCommand::Census(a)) => census(&a),
        Command::Verify(VerifyCommand::Extremal(a)) => extremal(&a),
        Command::Search(SearchCommand::Anneal(a)) => anneal(&a),
        Command::Search(SearchCommand::Blowup(a)) => blowup(&a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: Family) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {family:?}")))
}

fn construct(a: &ConstructArgs) -> Res {
    let f = a.family;
    let g = match f {
        Family::CompleteBipartite => complete_bipartite(need(a.a, "a", f)?, need(a.b, "b", f)?),
        Family::Book => book(need(a.r, "r", f)?),
        Family::Splus => s_plus(need(a.m, "m", f)?, need(a.s, "s", f)?),
        Family::Prism => prism_blowup(need(a.k, "k", f)?),
        Family::Blowup => {
            let base = a
                .base
                .as_deref()
                .ok_or_else(|| usage("--base is required for Blowup"))?;
            let base = parse_graph6(base).map_err(usage)?;
            let weights = a
                .weights
                .clone()
                .ok_or_else(|| usage("--weights is required for Blowup"))?;
            BlowupSpec::new(base, weights).and_then(|s| blow_up(&s))
        }
    }
    .map_err(usage)?;
    // graph6 output stays clean; the resolved configuration goes to stderr
    eprintln!("# config {}", to_json(&Config::new("construct", a)));
    writeln!(io::stdout(), "{}", write_graph6(&g).map_err(usage)?)?;
    Ok(())
}

/// Fully resolved run configuration, echoed at the head of every output.
#[derive(Serialize)]
struct Config<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    #[serde(flatten)]
    args: &'a T,
}

impl<'a, T: Serialize> Config<'a, T> {
    fn new(command: &'a str, args: &'a T) -> Self {
        Config {
            command,
            version: VERSION,
            args,
        }
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_input(path: Option<&Path>) -> io::Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin().lock())),
    })
}

/// Writes the config header in the style of `format`.
fn header(out: &mut dyn Write, format: Format, config: &impl Serialize) -> io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "# config {}", to_json(config)),
        Format::Jsonl => writeln!(out, "{{\"config\":{}}}", to_json(config)),
        Format::Json => Ok(()),
    }
}

/// Parsed graphs with their 1-based line numbers; malformed lines are reported
/// on stderr and skipped.
fn read_graphs(io_args: &GraphIo) -> Result<Vec<Graph>, Failure> {
    if let Some(text) = &io_args.graph {
        return Ok(vec![
            parse_graph6(text).map_err(|e| usage(format!("--graph: {e}")))?
        ]);
    }
    let mut out = Vec::new();
    for (i, line) in open_input(io_args.input.as_deref())?.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        match parse_graph6(t) {
            Ok(g) => out.push(g),
            Err(e) => eprintln!("line {}: {e}", i + 1),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct RhoRow {
    graph6: String,
    n: usize,
    m: usize,
    rho_lower: f64,
    rho_upper: f64,
    estimate: f64,
    iterations: usize,
    converged: bool,
}

fn emit_rows<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    csv_header: &str,
    rows: &[T],
    csv: impl Fn(&T) -> String,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{csv_header}")?;
            for r in rows {
                writeln!(out, "{}", csv(r))?;
            }
        }
        Format::Jsonl => {
            for r in rows {
                writeln!(out, "{}", to_json(r))?;
            }
        }
        Format::Json => writeln!(out, "{}", to_json_pretty(rows))?,
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonDoc<'a, C: Serialize, T: Serialize> {
    config: &'a C,
    #[serde(flatten)]
    body: T,
}

fn rho(a: &GraphIo) -> Res {
    let graphs = read_graphs(a)?;
    let mut rows = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let c = spectral_radius(g, a.tol).map_err(usage)?;
        rows.push(RhoRow {
            graph6: write_graph6(g).map_err(usage)?,
            n: g.n(),
            m: g.m(),
            rho_lower: c.rho_lower,
            rho_upper: c.rho_upper,
            estimate: c.estimate,
            iterations: c.iterations,
            converged: c.converged,
        });
    }
    let cfg = Config::new("rho", a);
    let mut out = open_output(None)?;
    header(&mut *out, a.format, &cfg)?;
    if a.format == Format::Json {
        writeln!(
            out,
            "{}",
            to_json_pretty(&JsonDoc {
                config: &cfg,
                body: Rows { rows: &rows }
            })
        )?;
    } else {
        emit_rows(
            &mut *out,
            a.format,
            "graph6,n,m,rho_lower,rho_upper,estimate,iterations,converged",
            &rows,
            |r| {
                format!(
                    "{},{},{},{},{},{},{},{}",
                    r.graph6,
                    r.n,
                    r.m,
                    fmt_real(r.rho_lower),
                    fmt_real(r.rho_upper),
                    fmt_real(r.estimate),
                    r.iterations,
                    r.converged
                )
            },
        )?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Rows<'a, T: Serialize> {
    rows: &'a [T],
}

#[derive(Serialize)]
struct BkRow {
    graph6: String,
    n: usize,
    m: usize,
    bk: usize,
    witness_edge: Option<(usize, usize)>,
    witness_pages: Vec<usize>,
    k2t: usize,
}

fn bk(a: &GraphIo) -> Res {
    let graphs = read_graphs(a)?;
    let mut rows = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let st = booksize(g);
        rows.push(BkRow {
            graph6: write_graph6(g).map_err(usage)?,
            n: g.n(),
            m: g.m(),
            bk: st.bk,
            witness_edge: st.witness_edge,
            witness_pages: st.witness_pages,
            k2t: st.k2t,
        });
    }
    let cfg = Config::new("bk", a);
    let mut out = open_output(None)?;
    header(&mut *out, a.format, &cfg)?;
    if a.format == Format::Json {
        writeln!(
            out,
            "{}",
            to_json_pretty(&JsonDoc {
                config: &cfg,
                body: Rows { rows: &rows }
            })
        )?;
    } else {
        emit_rows(
            &mut *out,
            a.format,
            "graph6,n,m,bk,witness_u,witness_v,pages,k2t",
            &rows,
            |r| {
                let (u, v) = r
                    .witness_edge
                    .map_or((String::new(), String::new()), |(u, v)| {
                        (u.to_string(), v.to_string())
                    });
                let pages: Vec<String> = r.witness_pages.iter().map(|p| p.to_string()).collect();
                format!(
                    "{},{},{},{},{},{},{},{}",
                    r.graph6,
                    r.n,
                    r.m,
                    r.bk,
                    u,
                    v,
                    pages.join(";"),
                    r.k2t
                )
            },
        )?;
    }
    out.flush()?;
    Ok(())
}

fn solve(a: &SolveArgs) -> Res {
    let rho = solve_splus_rho(a.m, a.s).map_err(usage)?;
    let residual = rho * rho - (a.m - 1) as f64 - 2.0 * a.s as f64 / (rho - 1.0);
    writeln!(
        io::stdout(),
        "# config {}",
        to_json(&Config::new("solve-rho", a))
    )?;
    writeln!(io::stdout(), "m,s,rho,residual")?;
    writeln!(
        io::stdout(),
        "{},{},{},{}",
        a.m,
        a.s,
        fmt_real(rho),
        fmt_real(residual)
    )?;
    Ok(())
}

fn stats(a: &StatsArgs) -> Res {
    if a.format == Format::Json {
        return Err(usage("stats writes csv or jsonl"));
    }
    let cfg = CensusConfig { r: a.r, tol: a.tol };
    let mut out = open_output(a.out.as_deref())?;
    header(&mut *out, a.format, &Config::new("stats", a))?;
    if a.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for (i, line) in open_input(a.input.as_deref())?.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        match parse_graph6(t) {
            Ok(g) => {
                let rec = census_record(&g, &cfg);
                match a.format {
                    Format::Csv => writeln!(out, "{}", rec.to_csv_row())?,
                    _ => writeln!(out, "{}", rec.to_json_line())?,
                }
            }
            Err(e) => eprintln!("line {}: {e}", i + 1),
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct TraceDoc<'a, C: Serialize> {
    config: &'a C,
    trace: &'a bookspectra::ProofTrace,
    identities: bookspectra::trace::IdentityReport,
    claims: Vec<bookspectra::trace::ClaimCheck>,
}

fn trace(a: &TraceArgs) -> Res {
    let g = parse_graph6(&a.graph).map_err(|e| usage(format!("--graph: {e}")))?;
    let cert = spectral_radius(&g, a.tol).map_err(usage)?;
    let t = build_trace(&g, &cert, a.r, a.c).map_err(usage)?;
    let identities = verify_identities(&t);
    let claims = verify_claims(&t);
    let cfg = Config::new("trace", a);
    let failed: Vec<String> = claims
        .iter()
        .filter(|c| c.applicable && !c.holds)
        .map(|c| format!("{:?}", c.claim))
        .collect();
    if a.json {
        let doc = TraceDoc {
            config: &cfg,
            trace: &t,
            identities: identities.clone(),
            claims: claims.clone(),
        };
        writeln!(io::stdout(), "{}", to_json_pretty(&doc))?;
    } else {
        writeln!(io::stdout(), "# config {}", to_json(&cfg))?;
        writeln!(
            io::stdout(),
            "n={} m={} rho={} bk={}",
            t.n,
            t.m,
            fmt_real(t.rho),
            t.bk
        )?;
        writeln!(
            io::stdout(),
            "u*={} |U|={} |W|={} |W*|={}",
            t.u_star,
            t.u.len(),
            t.w.len(),
            t.w_star.len()
        )?;
        writeln!(
            io::stdout(),
            "e(U)={} bad={} U1={:?} U2={:?} V*={:?}",
            t.edges_u.len(),
            t.bad_edges.len(),
            t.u1,
            t.u2,
            t.v_star.iter().map(|v| v.vertex).collect::<Vec<_>>()
        )?;
        writeln!(
            io::stdout(),
            "identity residuals {} {} (bound {})",
            fmt_real(identities.residual_eq1),
            fmt_real(identities.residual_eq2),
            fmt_real(identities.bound)
        )?;
        for c in &claims {
            let margin = c.margin.map_or_else(|| "-".to_string(), fmt_real);
            writeln!(
                io::stdout(),
                "{:?}: applicable={} holds={} margin={} {}",
                c.claim,
                c.applicable,
                c.holds,
                margin,
                c.note
            )?;
        }
        if !t.fragile.is_empty() {
            writeln!(io::stdout(), "fragile memberships: {}", t.fragile.len())?;
        }
    }
    if !identities.pass {
        return Err(Failure::Violation("identity residual above bound".into()));
    }
    if !failed.is_empty() {
        return Err(Failure::Violation(format!(
            "claims failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}

fn census(a: &CensusArgs) -> Res {
    if a.format == Format::Json {
        return Err(usage("census records are written as csv or jsonl"));
    }
    let cfg = CensusConfig { r: a.r, tol: a.tol };
    let mut out = open_output(a.out.as_deref())?;
    header(&mut *out, a.format, &Config::new("verify-census", a))?;
    if a.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    let format = a.format;
    let sink = |rec: &bookspectra::CensusRecord| match format {
        Format::Csv => writeln!(out, "{}", rec.to_csv_row()),
        _ => writeln!(out, "{}", rec.to_json_line()),
    };
    let summary = match &a.input {
        Some(p) => {
            let reader = BufReader::new(File::open(p)?);
            run_census(CensusInput::Graph6(reader), &cfg, sink)
        }
        None => run_census::<io::Empty, _>(
            CensusInput::Enumerate {
                n_min: a.n_min,
                n_max: a.n_max,
                connected_only: !a.all,
                allow_eight: a.allow_eight,
            },
            &cfg,
            sink,
        ),
    }
    .map_err(usage)?;
    out.flush()?;
    drop(out);
    for bad in &summary.malformed {
        eprintln!("line {}: {}", bad.line, bad.error);
    }
    let text = to_json(&summary);
    if a.out.is_some() {
        writeln!(io::stdout(), "{text}")?;
    } else {
        eprintln!("{text}");
    }
    match summary.total_violations() {
        0 => Ok(()),
        v => Err(Failure::Violation(format!("{v} predicate violations"))),
    }
}

fn extremal(a: &ExtremalArgs) -> Res {
    let mut pairs = Vec::with_capacity(a.splus.len());
    for item in &a.splus {
        let parsed = item
            .split_once(':')
            .and_then(|(m, s)| Some((m.trim().parse().ok()?, s.trim().parse().ok()?)));
        pairs.push(parsed.ok_or_else(|| usage(format!("--splus entry '{item}' is not m:s")))?);
    }
    let report = verify_extremal_families(a.k_max, &pairs, a.tol).map_err(usage)?;
    let cfg = Config::new("verify-extremal", a);
    writeln!(
        io::stdout(),
        "{}",
        to_json_pretty(&JsonDoc {
            config: &cfg,
            body: &report
        })
    )?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Violation(report.failures.join("; ")))
    }
}

#[derive(Serialize)]
struct LedgerLine<'a, P: Serialize> {
    version: &'a str,
    kind: &'a str,
    params: &'a P,
    result: &'a SearchResult,
}

fn finish_search<P: Serialize>(
    kind: &str,
    params: &P,
    result: &SearchResult,
    ledger: Option<&Path>,
) -> Res {
    let line = LedgerLine {
        version: VERSION,
        kind,
        params,
        result,
    };
    let text = to_json(&line);
    if let Some(path) = ledger {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{text}")?;
    }
    writeln!(io::stdout(), "{text}")?;
    if result.feasible {
        Ok(())
    } else {
        Err(Failure::Violation("no feasible graph found".into()))
    }
}

#[derive(Serialize)]
struct AnnealParams {
    n: usize,
    condition: Condition,
    seed: u64,
    schedule: Schedule,
}

fn anneal(a: &AnnealArgs) -> Res {
    let schedule = Schedule {
        t0: a.t0,
        factor: a.factor,
        steps: Some(a.steps.unwrap_or(200 * (a.n * a.n) as u64)),
        restarts: a.restarts,
        record_trajectory: a.trajectory,
        direction: a.direction.into(),
    };
    let params = AnnealParams {
        n: a.n,
        condition: a.condition.into(),
        seed: a.seed,
        schedule,
    };
    let result = anneal_search(a.n, params.condition, a.seed, &params.schedule).map_err(usage)?;
    finish_search("anneal", &params, &result, a.ledger.as_deref())
}

#[derive(Serialize)]
struct BlowupParams {
    base_n_max: usize,
    condition: Condition,
    options: BlowupOptions,
}

fn blowup(a: &BlowupArgs) -> Res {
    let params = BlowupParams {
        base_n_max: a.base_n_max,
        condition: a.condition.into(),
        options: BlowupOptions {
            max_weight: a.max_weight,
            direction: a.direction.into(),
        },
    };
    let result = blowup_search(a.base_n_max, params.condition, &params.options).map_err(usage)?;
    finish_search("blowup", &params, &result, a.ledger.as_deref())
}
