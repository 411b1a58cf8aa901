//! `arccos-bounds`: evaluate, classify, verify and scan the Carlson-type
//! arccos bound family from the command line.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use arccos_bounds::claims::{registry, select, ClaimOptions};
use arccos_bounds::explorer::{classify_entry, scan_triples, EVIDENCE_NOTE};
use arccos_bounds::float::diff_tol;
use arccos_bounds::grid::DEFAULT_N;
use arccos_bounds::sharp::{sharp_pair_2sqrt2, sharp_pair_a_star};
use arccos_bounds::verifier::{LOWER_NAMES, UPPER_NAMES};
use arccos_bounds::{
    arccos_stable, best_pair, bound_pair, classify_abc, classify_regime, compare_bounds, f_a, f_abc,
    find_minimum, min_value_lower, AxisRange, Error, GridSpec, ScanEntry, Spacing, VerificationReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Cell, Emitter, Format};

#[derive(Parser)]
#[command(name = "arccos-bounds", version, about = "Carlson-type bounds for arccos x and their numerical verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format; defaults to table on a terminal and csv otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Number of grid points.
    #[arg(long)]
    n: Option<usize>,
    /// Grid spacing.
    #[arg(long, value_parser = parse_spacing, default_value = "refined")]
    grid: Spacing,
}

impl GridArgs {
    fn spec(&self, default_n: usize) -> GridSpec {
        GridSpec {
            spacing: self.grid,
            ..GridSpec::refined(self.n.unwrap_or(default_n))
        }
    }
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
}

impl FamilyArgs {
    fn triple(&self) -> Result<Option<(f64, f64, f64)>, CliError> {
        match (self.alpha, self.beta, self.gamma) {
            (None, None, None) => Ok(None),
            (Some(a), Some(b), Some(g)) => Ok(Some((a, b, g))),
            _ => Err(CliError::Usage("--alpha, --beta and --gamma must be given together".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F_a(x), or F_{α,β,γ}(x) when --alpha/--beta/--gamma are given.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lower and upper bounds for arccos x from the family member a.
    Bounds {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// A single abscissa; otherwise an --n point sweep is emitted.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "n")]
        x: Option<f64>,
        /// Add every sharp bound instance as extra columns.
        #[arg(long)]
        curve: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monotonicity regime of F_a, or a sampled verdict for F_{α,β,γ}.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Interior minimum of F_a for A_STAR < a < 2√2.
    Minimize {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run claims from the registry.
    Verify {
        /// Comma-separated claim ids, or `all`.
        #[arg(long, required_unless_present = "list")]
        claims: Option<String>,
        /// Replace the default parameter list of claims that take a.
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// List the registry instead of running it.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Pointwise comparison of all sharp bound instances.
    Compare {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classify F_{α,β,γ} over a grid of parameters (each axis v or lo:hi:n).
    Scan {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_axis)]
        alpha: AxisRange,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_axis)]
        beta: AxisRange,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_axis)]
        gamma: AxisRange,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_axis(s: &str) -> Result<AxisRange, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum CliError {
    Usage(String),
    Domain(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Grid(_) => CliError::Usage(format!("--n/--grid: {e}")),
            Error::UnknownClaim(_) => CliError::Usage(format!("--claims: {e}")),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("--out: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("--out: {e}"))
    }
}

fn open(args: &OutputArgs) -> Result<(Format, Box<dyn Write>), CliError> {
    let (sink, tty): (Box<dyn Write>, bool) = match &args.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::Usage(format!("--out {}: {e}", path.display())))?;
            (Box::new(BufWriter::new(f)), false)
        }
        None => (Box::new(BufWriter::new(io::stdout().lock())), io::stdout().is_terminal()),
    };
    let format = match args.format {
        Some(FormatArg::Table) => Format::Table,
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None if tty => Format::Table,
        None => Format::Csv,
    };
    Ok((format, sink))
}

fn emitter(args: &OutputArgs, headers: &[&str]) -> Result<Emitter, CliError> {
    let (format, sink) = open(args)?;
    Ok(Emitter::new(format, sink, headers)?)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required parameter {flag}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { a, x, family, out } => eval(a, x, &family, &out),
        Command::Bounds { a, x, curve, grid, out } => bounds(a, x, curve, &grid, &out),
        Command::Classify { a, family, grid, out } => classify(a, &family, &grid, &out),
        Command::Minimize { a, out } => minimize(a, &out),
        Command::Verify { claims, a, list, grid, out } => {
            if list {
                list_claims(&out)
            } else {
                verify(&need(claims, "--claims")?, a, &grid, &out)
            }
        }
        Command::Compare { grid, out } => compare(&grid, &out),
        Command::Scan { alpha, beta, gamma, grid, out } => scan(&alpha, &beta, &gamma, &grid, &out),
    }
}

fn eval(a: Option<f64>, x: f64, family: &FamilyArgs, out: &OutputArgs) -> Result<(), CliError> {
    if let Some((al, be, ga)) = family.triple()? {
        if a.is_some() {
            return Err(CliError::Usage("--a cannot be combined with --alpha/--beta/--gamma".into()));
        }
        let v = f_abc(al, be, ga, x)?;
        let mut e = emitter(out, &["alpha", "beta", "gamma", "x", "f"])?;
        e.row(&[Cell::Num(al), Cell::Num(be), Cell::Num(ga), Cell::Num(x), Cell::Num(v)])?;
        return Ok(e.finish()?);
    }
    let a = need(a, "--a")?;
    let v = f_a(a, x)?;
    let mut e = emitter(out, &["a", "x", "f"])?;
    e.row(&[Cell::Num(a), Cell::Num(x), Cell::Num(v)])?;
    Ok(e.finish()?)
}

const CURVE_EXTRA: [&str; 7] = [
    "best_lower",
    "lower_a_star",
    "lower_two_sqrt2",
    "lower_lambda",
    "upper_a_star",
    "upper_two_sqrt2",
    "upper_best",
];

fn bounds(a: f64, x: Option<f64>, curve: bool, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    if let Some(x) = x {
        let b = bound_pair(a, x)?;
        let ac = arccos_stable(x)?;
        let mut e = emitter(out, &["x", "a", "regime", "c_lower", "c_upper", "lower", "arccos", "upper"])?;
        e.row(&[
            Cell::Num(x),
            Cell::Num(a),
            Cell::Text(classify_regime(a).to_string()),
            Cell::Num(b.c_lower),
            Cell::Num(b.c_upper),
            Cell::Num(b.lower),
            Cell::Num(ac),
            Cell::Num(b.upper),
        ])?;
        return Ok(e.finish()?);
    }
    let n = need(grid.n, "--n (or --x)")?;
    let spec = grid.spec(n);
    bound_pair(a, 0.5)?;
    let xs = arccos_bounds::verifier::unit_points(&spec)?;
    let mut headers = vec!["x", "lower", "arccos", "upper"];
    if curve {
        headers.extend(CURVE_EXTRA);
    }
    let mut e = emitter(out, &headers)?;
    let mut violations = 0usize;
    for &x in &xs {
        let b = bound_pair(a, x)?;
        let ac = arccos_stable(x)?;
        if ac - b.lower < -diff_tol(ac, b.lower) || b.upper - ac < -diff_tol(ac, b.upper) {
            violations += 1;
        }
        let mut row = vec![Cell::Num(x), Cell::Num(b.lower), Cell::Num(ac), Cell::Num(b.upper)];
        if curve {
            let s = best_pair(x)?;
            let (l7, u7) = sharp_pair_a_star(x)?;
            let (l8, u8) = sharp_pair_2sqrt2(x)?;
            row.extend([s.lower_best, l7, l8, s.lower_lambda, u7, u8, s.upper_best].map(Cell::Num));
        }
        e.row(&row)?;
    }
    e.finish()?;
    if violations > 0 {
        return Err(CliError::Failed(format!("{violations} rows violate lower ≤ arccos ≤ upper for a = {a}")));
    }
    Ok(())
}

const SCAN_HEADERS: [&str; 8] = ["alpha", "beta", "gamma", "verdict", "evidence_x", "margin", "witness_x", "note"];

fn scan_row(entry: &ScanEntry) -> Vec<Cell> {
    let mut row = vec![Cell::Num(entry.alpha), Cell::Num(entry.beta), Cell::Num(entry.gamma)];
    match &entry.result {
        Ok(c) => row.extend([
            Cell::Text(c.verdict.to_string()),
            Cell::Num(c.evidence_x),
            Cell::Num(c.margin),
            Cell::Num(c.witness_x),
            Cell::Text(if c.log_space { format!("{EVIDENCE_NOTE}; log scale") } else { EVIDENCE_NOTE.into() }),
        ]),
        Err(e) => row.extend([
            Cell::Text("Error".into()),
            Cell::Num(f64::NAN),
            Cell::Num(f64::NAN),
            Cell::Num(f64::NAN),
            Cell::Text(e.to_string()),
        ]),
    }
    row
}

fn classify(a: Option<f64>, family: &FamilyArgs, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    if let Some((al, be, ga)) = family.triple()? {
        if a.is_some() {
            return Err(CliError::Usage("--a cannot be combined with --alpha/--beta/--gamma".into()));
        }
        let c = classify_abc(al, be, ga, &grid.spec(DEFAULT_N))?;
        let mut e = emitter(out, &SCAN_HEADERS)?;
        e.row(&scan_row(&ScanEntry {
            alpha: al,
            beta: be,
            gamma: ga,
            result: Ok(c),
        }))?;
        return Ok(e.finish()?);
    }
    let a = need(a, "--a")?;
    if !a.is_finite() {
        return Err(CliError::Domain(format!("a = {a} is outside the domain finite reals")));
    }
    let mut e = emitter(out, &["a", "regime"])?;
    e.row(&[Cell::Num(a), Cell::Text(classify_regime(a).to_string())])?;
    Ok(e.finish()?)
}

fn minimize(a: f64, out: &OutputArgs) -> Result<(), CliError> {
    let m = find_minimum(a)?;
    let floor = min_value_lower(a)?;
    let mut e = emitter(out, &["a", "x0", "f_min", "residual", "iterations", "min_lower"])?;
    e.row(&[
        Cell::Num(m.a),
        Cell::Num(m.x0),
        Cell::Num(m.f_min),
        Cell::Num(m.residual),
        Cell::Int(m.iterations.into()),
        Cell::Num(floor),
    ])?;
    Ok(e.finish()?)
}

fn list_claims(out: &OutputArgs) -> Result<(), CliError> {
    let mut e = emitter(out, &["claim_id", "parameters", "statement"])?;
    for c in registry() {
        e.row(&[Cell::Text(c.id.into()), Cell::Text(c.parameters.into()), Cell::Text(c.statement.into())])?;
    }
    Ok(e.finish()?)
}

const REPORT_HEADERS: [&str; 6] = ["claim_id", "passed", "samples", "worst_margin", "worst_x", "notes"];

fn report_row(r: &VerificationReport) -> Vec<Cell> {
    vec![
        Cell::Text(r.claim_id.clone()),
        Cell::Bool(r.passed),
        Cell::Int(r.samples as u64),
        Cell::Num(r.worst_margin),
        Cell::Num(r.worst_x),
        Cell::Text(r.notes.clone()),
    ]
}

fn verify(claims: &str, a: Option<f64>, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    let selected = select(claims)?;
    let opts = ClaimOptions {
        a,
        grid: grid.spec(DEFAULT_N),
    };
    opts.grid.validate()?;
    let mut e = emitter(out, &REPORT_HEADERS)?;
    let mut failed = Vec::new();
    for c in selected {
        let r = c.run(&opts)?;
        if !r.passed {
            failed.push(r.claim_id.clone());
        }
        e.row(&report_row(&r))?;
    }
    e.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("claims not passed: {}", failed.join(", "))))
    }
}

fn compare(grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    let t = compare_bounds(&grid.spec(10_000))?;
    let lower: Vec<String> = LOWER_NAMES.iter().map(|n| format!("lower_{n}")).collect();
    let upper: Vec<String> = UPPER_NAMES.iter().map(|n| format!("upper_{n}")).collect();
    let mut headers: Vec<&str> = vec!["x", "arccos"];
    headers.extend(lower.iter().map(String::as_str));
    headers.extend(upper.iter().map(String::as_str));
    headers.extend(["best_lower", "best_upper"]);
    let (format, sink) = open(out)?;
    let failed: Vec<&str> = t.reports.iter().filter(|r| !r.passed).map(|r| r.claim_id.as_str()).collect();
    let mut e = Emitter::new(format, sink, &headers)?;
    e.set_trailer(
        t.reports.iter().map(report_row).collect(),
        &REPORT_HEADERS,
        vec![("crossover", t.crossover), ("crossover_width", t.crossover_width)],
    );
    for r in &t.rows {
        let mut row = vec![Cell::Num(r.x), Cell::Num(r.arccos)];
        row.extend(r.lower.iter().chain(&r.upper).map(|&v| Cell::Num(v)));
        row.push(Cell::Text(LOWER_NAMES[r.best_lower].into()));
        row.push(Cell::Text(UPPER_NAMES[r.best_upper].into()));
        e.row(&row)?;
    }
    e.finish()?;
    for r in &t.reports {
        eprintln!("{}: {} (worst margin {:e} at x = {})", r.claim_id, if r.passed { "passed" } else { "FAILED" }, r.worst_margin, r.worst_x);
    }
    eprintln!("crossover of the lambda and A_STAR lower bounds: x = {} (width {:e})", t.crossover, t.crossover_width);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("dominance not confirmed: {}", failed.join(", "))))
    }
}

fn scan(alpha: &AxisRange, beta: &AxisRange, gamma: &AxisRange, grid: &GridArgs, out: &OutputArgs) -> Result<(), CliError> {
    let spec = grid.spec(DEFAULT_N);
    spec.validate()?;
    let mut e = emitter(out, &SCAN_HEADERS)?;
    for t in scan_triples(alpha, beta, gamma) {
        e.row(&scan_row(&classify_entry(t, &spec)))?;
        e.flush()?;
    }
    Ok(e.finish()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
