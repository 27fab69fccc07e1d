//! The `verify` subcommand: oracle-equivalence, symmetry, denominator,
//! bullet-erasure, identity and periodicity checks with a JSON report.

use clap::Args;
use num_bigint::BigInt;
use num_traits::One;
use ratcat::catalan;
use ratcat::sequences::{BinaryWord, Grid, MarkerWord};
use ratcat::solvers::{RSolver, Solver};
use ratcat::subsets::{self, SeriesKind};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Args)]
pub struct VerifyArgs {
    /// Grid periods, e.g. `--grid 3 3`.
    #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
    grid: Vec<usize>,
    /// Check solver series against the enumeration oracle (P, Phat, Q, Qhat).
    #[arg(long)]
    oracle: bool,
    /// Check q,t-symmetry of (1-q)^{d-1} c_{M,N}.
    #[arg(long)]
    symmetry: bool,
    /// Check the reduced denominators (1-q)^d and (1-q)^{d-1}.
    #[arg(long)]
    denominator: bool,
    /// Check R(phi(v), phi(w)) against Q and Qhat on all admissible pairs.
    #[arg(long)]
    bullet_erasure: bool,
    /// Check a named identity: `q-vs-p` or `r-with-ones`.
    #[arg(long, value_name = "NAME")]
    identity: Vec<String>,
    /// Check lambda(u) = 0 iff the minimal period divides gcd(M,N).
    #[arg(long)]
    periodicity: bool,
    /// Oracle truncation degree (default: env RATCAT_QMAX or M+N+6).
    #[arg(long)]
    qmax: Option<i64>,
    /// Emit the machine-readable JSON report instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct CheckEntry {
    check: String,
    grid: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
}

struct Report {
    entries: Vec<CheckEntry>,
}

impl Report {
    fn push(&mut self, check: &str, grid: Grid, word: Option<String>, ok: bool) {
        self.entries.push(CheckEntry {
            check: check.to_string(),
            grid: [grid.m(), grid.n()],
            counterexample: if ok { None } else { word.clone() },
            word,
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
    }
}

fn all_admissible(grid: Grid) -> Vec<BinaryWord> {
    let len = grid.len();
    assert!(len <= 24, "grid too large for exhaustive verification");
    (0..(1u64 << len))
        .map(|raw| {
            let bits: Vec<bool> = (0..len).map(|i| raw >> i & 1 == 1).collect();
            BinaryWord::new(grid, bits).unwrap()
        })
        .filter(|u| u.is_admissible())
        .collect()
}

fn check_oracle(report: &mut Report, grid: Grid, q_max: i64) {
    let mut solver = Solver::new(grid);
    for u in all_admissible(grid) {
        let (v, w) = u.to_markers().unwrap();
        let cases = [
            (
                "oracle-p",
                solver.solve_p(&u).expand(q_max)
                    == subsets::truncated_series(&u, SeriesKind::P, q_max),
            ),
            (
                "oracle-phat",
                solver.solve_phat(&u).expand(q_max)
                    == subsets::truncated_series(&u, SeriesKind::PHat, q_max),
            ),
            (
                "oracle-q",
                solver.solve_q(&v, &w).expand(q_max)
                    == subsets::truncated_series(&u, SeriesKind::Q, q_max),
            ),
            (
                "oracle-qhat",
                solver.solve_qhat(&v, &w).expand(q_max)
                    == subsets::truncated_series(&u, SeriesKind::QHat, q_max),
            ),
        ];
        for (name, ok) in cases {
            report.push(name, grid, Some(u.to_string()), ok);
        }
    }
}

fn check_symmetry(report: &mut Report, grid: Grid) {
    let result = catalan::catalan_series(grid.m(), grid.n());
    report.push("symmetry", grid, None, result.symmetric);
}

fn check_denominator(report: &mut Report, grid: Grid) {
    let mut solver = Solver::new(grid);
    let d = grid.d();
    let p0 = solver.solve_p(&BinaryWord::zeros(grid));
    let ok_p = p0.denominator() == vec![1u32; d].as_slice();
    let ok_raw = (solver.stats().max_cycle_factor as usize) <= d;
    let c = catalan::catalan_series_with(&mut solver);
    let ok_c = c.series.denominator() == vec![1u32; d - 1].as_slice();
    report.push(
        "denominator",
        grid,
        Some(BinaryWord::zeros(grid).to_string()),
        ok_p && ok_raw && ok_c,
    );
}

fn check_bullet_erasure(report: &mut Report, grid: Grid) {
    let mut solver = Solver::new(grid);
    let mut r_a = RSolver::new(true);
    let mut r_0 = RSolver::new(false);
    for u in all_admissible(grid) {
        let (v, w) = u.to_markers().unwrap();
        let (x, y) = (v.phi(), w.phi());
        let ok = r_0.solve(&x, &y).equals(&solver.solve_q(&v, &w))
            && r_a.solve(&x, &y).equals(&solver.solve_qhat(&v, &w));
        report.push("bullet-erasure", grid, Some(u.to_string()), ok);
    }
}

fn check_q_vs_p(report: &mut Report, grid: Grid) {
    let mut solver = Solver::new(grid);
    let qs = solver.solve_q(
        &MarkerWord::zeros_then_crosses(grid.m(), 0),
        &MarkerWord::zeros_then_crosses(grid.n(), 0),
    );
    let ps = solver.solve_p(&BinaryWord::zeros(grid));
    let shifted = ps
        .invert_t()
        .mul_monomial(&BigInt::one(), -(grid.len() as i64), 0, 0);
    report.push(
        "identity:q-vs-p",
        grid,
        Some(BinaryWord::zeros(grid).to_string()),
        qs.equals(&shifted),
    );
}

fn check_r_with_ones(report: &mut Report, grid: Grid) {
    let mut solver = Solver::new(grid);
    let mut rs = RSolver::new(false);
    for k in 0..=grid.m().min(grid.n()) {
        let x = MarkerWord::zeros_then_crosses(grid.m(), k);
        let y = MarkerWord::zeros_then_crosses(grid.n(), k);
        let u = BinaryWord::zeros_then_ones(grid, k);
        let kk = k as i64;
        let expected = solver.solve_p(&u).invert_t().mul_monomial(
            &BigInt::one(),
            -(grid.len() as i64) + kk,
            kk * (kk - 1) / 2,
            0,
        );
        let ok = rs.solve(&x, &y).equals(&expected);
        report.push("identity:r-with-ones", grid, Some(format!("{x},{y}")), ok);
    }
}

fn check_periodicity(report: &mut Report, grid: Grid) {
    let mut counterexample = None;
    for u in all_admissible(grid) {
        let ok = (u.lambda() == 0) == grid.d().is_multiple_of(u.minimal_period());
        if !ok {
            counterexample = Some(u.to_string());
            break;
        }
    }
    report.push(
        "periodicity",
        grid,
        counterexample.clone(),
        counterexample.is_none(),
    );
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, super::UsageError> {
    let grid = match args.grid.as_slice() {
        [m, n] if *m >= 1 && *n >= 1 => Grid::new(*m, *n),
        _ => return Err(super::usage("flag --grid expects two positive integers")),
    };
    for name in &args.identity {
        if name != "q-vs-p" && name != "r-with-ones" {
            return Err(super::usage(format!(
                "flag --identity: unknown identity {name:?} (expected q-vs-p or r-with-ones)"
            )));
        }
    }
    let q_max = super::default_qmax(grid, args.qmax);
    let run_all = !args.oracle
        && !args.symmetry
        && !args.denominator
        && !args.bullet_erasure
        && !args.periodicity
        && args.identity.is_empty();

    let mut report = Report {
        entries: Vec::new(),
    };
    if args.oracle || run_all {
        check_oracle(&mut report, grid, q_max);
    }
    if args.symmetry || run_all {
        check_symmetry(&mut report, grid);
    }
    if args.denominator || run_all {
        check_denominator(&mut report, grid);
    }
    if args.bullet_erasure || run_all {
        check_bullet_erasure(&mut report, grid);
    }
    if run_all || args.identity.iter().any(|s| s == "q-vs-p") {
        check_q_vs_p(&mut report, grid);
    }
    if run_all || args.identity.iter().any(|s| s == "r-with-ones") {
        check_r_with_ones(&mut report, grid);
    }
    if args.periodicity || run_all {
        check_periodicity(&mut report, grid);
    }

    report
        .entries
        .sort_by(|a, b| (&a.check, &a.word).cmp(&(&b.check, &b.word)));
    let failures: Vec<&CheckEntry> = report
        .entries
        .iter()
        .filter(|e| e.status == "fail")
        .collect();

    if args.json {
        super::emit(&format!(
            "{}\n",
            serde_json::to_string(&report.entries).unwrap()
        ));
    } else {
        let mut names: Vec<&str> = report.entries.iter().map(|e| e.check.as_str()).collect();
        names.dedup();
        for name in names {
            let total = report.entries.iter().filter(|e| e.check == name).count();
            let failed = failures.iter().filter(|e| e.check == name).count();
            if failed == 0 {
                super::emit(&format!("{name}: pass ({total} checks)\n"));
            } else {
                let witness = failures
                    .iter()
                    .find(|e| e.check == name)
                    .and_then(|e| e.counterexample.as_deref())
                    .unwrap_or("-");
                super::emit(&format!(
                    "{name}: FAIL ({failed}/{total}), counterexample {witness}\n"
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
