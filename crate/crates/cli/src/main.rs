//! Batch command-line frontend: compute closed forms, verify them against
//! the enumeration oracle, and render decision trees as DOT.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratcat::algebra::RationalSeries;
use ratcat::catalan;
use ratcat::sequences::{BinaryWord, Grid, MarkerWord};
use ratcat::solvers::{RSolver, Solver};
use ratcat::subsets;
use ratcat::treeviz;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ratcat",
    about = "Exact rational q,t-Catalan series and torus-link homology series",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a series in closed form and print it.
    Compute(ComputeArgs),
    /// Run verification checks against the enumeration oracle.
    Verify(verify::VerifyArgs),
    /// Render a decision tree as a DOT graph.
    Tree(TreeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    P,
    Phat,
    Q,
    Qhat,
    R,
    Catalan,
    Knot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    /// Grid period M.
    #[arg(short = 'M', long = "grid-m")]
    grid_m: Option<usize>,
    /// Grid period N.
    #[arg(short = 'N', long = "grid-n")]
    grid_n: Option<usize>,
    /// Binary word for kinds P and Phat (literal `0101` or run-length `0^2 1^2`).
    #[arg(long)]
    u: Option<String>,
    /// First marker word (alphabet 0bx) for kinds Q and Qhat.
    #[arg(long)]
    v: Option<String>,
    /// Second marker word (alphabet 0bx) for kinds Q and Qhat.
    #[arg(long)]
    w: Option<String>,
    /// First {0,x} word for kind R.
    #[arg(long)]
    x: Option<String>,
    /// Second {0,x} word for kind R.
    #[arg(long)]
    y: Option<String>,
    /// Which series to compute.
    #[arg(long, value_enum, default_value = "p", ignore_case = true)]
    kind: Kind,
    /// Shorthand for --kind catalan.
    #[arg(long)]
    catalan: bool,
    /// Keep the variable a in the R series (otherwise a = 0).
    #[arg(long)]
    with_a: bool,
    /// Knot parameter m (coprime to n), for --kind knot.
    #[arg(short = 'm', long = "knot-m")]
    knot_m: Option<usize>,
    /// Knot parameter n, for --kind knot.
    #[arg(short = 'n', long = "knot-n")]
    knot_n: Option<usize>,
    /// Color d (symmetric power), for --kind knot.
    #[arg(short = 'd', long = "color")]
    color_d: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", ignore_case = true)]
    format: Format,
    /// Truncation degree for csv output (default: env RATCAT_QMAX or M+N+6).
    #[arg(long)]
    qmax: Option<i64>,
}

#[derive(Args)]
struct TreeArgs {
    /// Grid period M.
    #[arg(short = 'M', long = "grid-m")]
    grid_m: Option<usize>,
    /// Grid period N.
    #[arg(short = 'N', long = "grid-n")]
    grid_n: Option<usize>,
    /// Binary word rooting the P decision tree.
    #[arg(long)]
    u: Option<String>,
    /// First {0,x} word for the R decision tree.
    #[arg(long)]
    x: Option<String>,
    /// Second {0,x} word for the R decision tree.
    #[arg(long)]
    y: Option<String>,
    /// Collapse single-terminal branches into monomial leaves.
    #[arg(long)]
    compact: bool,
    /// Output file (stdout when omitted).
    #[arg(short = 'o', long = "out")]
    out: Option<std::path::PathBuf>,
}

/// A usage error carrying the offending flag; mapped to exit code 2.
pub(crate) struct UsageError(pub(crate) String);

type CmdResult = Result<ExitCode, UsageError>;

pub(crate) fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn require_grid(m: Option<usize>, n: Option<usize>) -> Result<Grid, UsageError> {
    match (m, n) {
        (Some(m), Some(n)) if m >= 1 && n >= 1 => Ok(Grid::new(m, n)),
        _ => Err(usage("flags -M and -N (positive integers) are required")),
    }
}

pub(crate) fn default_qmax(grid: Grid, explicit: Option<i64>) -> i64 {
    if let Some(q) = explicit {
        return q.max(0);
    }
    if let Ok(s) = std::env::var("RATCAT_QMAX") {
        if let Ok(v) = s.parse::<i64>() {
            return v.max(0);
        }
    }
    (grid.len() + 6) as i64
}

fn parse_binary(grid: Grid, s: &str, flag: &str) -> Result<BinaryWord, UsageError> {
    BinaryWord::parse(grid, s).map_err(|e| usage(format!("flag {flag}: {e}")))
}

fn parse_marker(s: &str, flag: &str) -> Result<MarkerWord, UsageError> {
    MarkerWord::parse(s).map_err(|e| usage(format!("flag {flag}: {e}")))
}

fn print_series(series: &RationalSeries, format: Format) -> String {
    match format {
        Format::Text => series.to_string(),
        Format::Latex => series.to_latex(),
        Format::Json => series.to_json().to_string(),
        Format::Dot | Format::Csv => unreachable!("handled by the caller"),
    }
}

fn cmd_compute(args: &ComputeArgs) -> CmdResult {
    let kind = if args.catalan {
        Kind::Catalan
    } else {
        args.kind
    };
    if args.format == Format::Dot {
        return Err(usage(
            "flag --format dot: use the `tree` subcommand for DOT output",
        ));
    }
    let out = match kind {
        Kind::P | Kind::Phat => {
            let grid = require_grid(args.grid_m, args.grid_n)?;
            let u = args
                .u
                .as_deref()
                .ok_or_else(|| usage("flag --u is required for kinds P and Phat"))?;
            let u = parse_binary(grid, u, "--u")?;
            if args.format == Format::Csv {
                let qmax = default_qmax(grid, args.qmax);
                let subs = subsets::enumerate(&u, qmax as usize);
                subsets::csv_dump(&subs)
            } else {
                let mut solver = Solver::new(grid);
                let series = match kind {
                    Kind::P => solver.solve_p(&u),
                    _ => solver.solve_phat(&u),
                };
                if args.format == Format::Text && kind == Kind::P {
                    // pole-graded positive form when one exists
                    match catalan::positive_form(&solver, &u) {
                        Some(ps) => ps.to_string(),
                        None => series.to_string(),
                    }
                } else {
                    print_series(&series, args.format)
                }
            }
        }
        Kind::Q | Kind::Qhat => {
            let grid = require_grid(args.grid_m, args.grid_n)?;
            let v = args
                .v
                .as_deref()
                .ok_or_else(|| usage("flag --v is required for kinds Q and Qhat"))?;
            let w = args
                .w
                .as_deref()
                .ok_or_else(|| usage("flag --w is required for kinds Q and Qhat"))?;
            let (v, w) = (parse_marker(v, "--v")?, parse_marker(w, "--w")?);
            if v.len() != grid.m() || w.len() != grid.n() {
                return Err(usage("flags --v/--w must have lengths M and N"));
            }
            if args.format == Format::Csv {
                return Err(usage("flag --format csv applies to kinds P and Phat"));
            }
            let mut solver = Solver::new(grid);
            let series = match kind {
                Kind::Q => solver.solve_q(&v, &w),
                _ => solver.solve_qhat(&v, &w),
            };
            print_series(&series, args.format)
        }
        Kind::R => {
            let x = args
                .x
                .as_deref()
                .ok_or_else(|| usage("flag --x is required for kind R"))?;
            let y = args
                .y
                .as_deref()
                .ok_or_else(|| usage("flag --y is required for kind R"))?;
            let (x, y) = (parse_marker(x, "--x")?, parse_marker(y, "--y")?);
            if args.format == Format::Csv {
                return Err(usage("flag --format csv applies to kinds P and Phat"));
            }
            let mut solver = RSolver::new(args.with_a);
            let series = solver.solve(&x, &y);
            print_series(&series, args.format)
        }
        Kind::Catalan => {
            let grid = require_grid(args.grid_m, args.grid_n)?;
            let result = catalan::catalan_series(grid.m(), grid.n());
            match args.format {
                Format::Text => result.polynomial_form.to_string(),
                Format::Latex => result.to_latex(),
                Format::Json => result.to_json().to_string(),
                Format::Csv => {
                    let qmax = default_qmax(grid, args.qmax);
                    let subs = subsets::enumerate_containing_zero(grid, qmax as usize);
                    subsets::csv_dump(&subs)
                }
                Format::Dot => unreachable!(),
            }
        }
        Kind::Knot => {
            let m = args
                .knot_m
                .ok_or_else(|| usage("flag -m is required for kind knot"))?;
            let n = args
                .knot_n
                .ok_or_else(|| usage("flag -n is required for kind knot"))?;
            let d = args
                .color_d
                .ok_or_else(|| usage("flag -d is required for kind knot"))?;
            let k = catalan::colored_knot_series(m, n, d, args.with_a)
                .map_err(|e| usage(format!("flags -m/-n: {e}")))?;
            match args.format {
                Format::Text => k.to_string(),
                Format::Latex => format!(
                    "\\prod_{{i=1}}^{{{d}}}\\frac{{1}}{{1-qt^{{i-{d}}}}}\\cdot\\left({}\\right)",
                    k.r_part.to_latex()
                ),
                Format::Json => serde_json::json!({
                    "prefactor_t_shifts": k.prefactor_t_shifts,
                    "r": k.r_part.to_json(),
                })
                .to_string(),
                Format::Csv => return Err(usage("flag --format csv applies to kinds P and Phat")),
                Format::Dot => unreachable!(),
            }
        }
    };
    emit(&format!("{}\n", out.trim_end_matches('\n')));
    Ok(ExitCode::SUCCESS)
}

/// Write to stdout; a closed pipe (e.g. piping into `head`) ends the
/// process quietly instead of panicking.
pub(crate) fn emit(s: &str) {
    use std::io::Write as _;
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(s.as_bytes()).is_err() || stdout.flush().is_err() {
        std::process::exit(0);
    }
}

fn cmd_tree(args: &TreeArgs) -> CmdResult {
    let dot = if let Some(u) = args.u.as_deref() {
        let grid = require_grid(args.grid_m, args.grid_n)?;
        let u = parse_binary(grid, u, "--u")?;
        let solver = Solver::new(grid);
        let trace = solver
            .decision_trace(&u)
            .map_err(|e| usage(format!("flag --u: {e}")))?;
        treeviz::to_dot(&trace, args.compact)
    } else if let (Some(x), Some(y)) = (args.x.as_deref(), args.y.as_deref()) {
        let (x, y) = (parse_marker(x, "--x")?, parse_marker(y, "--y")?);
        if args.compact {
            return Err(usage("flag --compact applies to --u trees only"));
        }
        treeviz::to_dot_hm(&x, &y)
    } else {
        return Err(usage("flag --u (with -M/-N) or flags --x/--y are required"));
    };
    match &args.out {
        None => {
            emit(&dot);
            Ok(ExitCode::SUCCESS)
        }
        Some(path) => {
            match std::fs::File::create(path).and_then(|mut f| f.write_all(dot.as_bytes())) {
                Ok(()) => Ok(ExitCode::SUCCESS),
                Err(e) => Err(usage(format!(
                    "flag -o: cannot write {}: {e}",
                    path.display()
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => verify::cmd_verify(args),
        Command::Tree(args) => cmd_tree(args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
