//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! `cargo test --test acceptance`

use std::process::ExitCode;
use std::time::{Duration, Instant};

use abelian_connections::cli::suites::{grid_cells, STABILIZER_TYPES};
use abelian_connections::cli::{run_suite, Suite, SuiteConfig, SuiteOutcome};

const SEED: u64 = 20261014;
const MONODROMY_TOLERANCE: f64 = 1e-9;
const MAX_DEGREE: usize = 4;
const SEEDS_PER_CELL: usize = 5;

const LEMMA2_CASES: usize = 200;
const LEMMA2_BUDGET: Duration = Duration::from_secs(10);
const PHI_CASES: usize = 100;
const PROP1_CASES: usize = 100;
const GRID_BUDGET: Duration = Duration::from_secs(60);
const STABILIZER_MIN_CONFIGS: usize = 20;
const MONODROMY_CASES: usize = 100;

struct Line {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn config(cases: usize) -> SuiteConfig {
    SuiteConfig { cases, seed: SEED, max_degree: MAX_DEGREE, tolerance: MONODROMY_TOLERANCE }
}

fn timed(suite: Suite, cases: usize) -> (SuiteOutcome, Duration) {
    let start = Instant::now();
    let mut out = run_suite(suite, &config(cases));
    (out.remove(0), start.elapsed())
}

fn describe(o: &SuiteOutcome, elapsed: Duration) -> String {
    let mut s = format!("{}/{} in {:.2}s", o.passed, o.cases, elapsed.as_secs_f64());
    if let Some(f) = o.failures.first() {
        s.push_str(&format!("; first failure {f}"));
    }
    s
}

fn main() -> ExitCode {
    let grid_cases = grid_cells().len() * SEEDS_PER_CELL;
    let mut lines = Vec::new();

    let (o, t) = timed(Suite::Lemma2, LEMMA2_CASES);
    lines.push(Line { name: "radical equals real kernel of E", pass: o.all_pass() && t < LEMMA2_BUDGET, detail: describe(&o, t) });

    let (o, t) = timed(Suite::Phi, PHI_CASES);
    lines.push(Line { name: "phi three-way agreement, n = 2..5", pass: o.all_pass(), detail: describe(&o, t) });

    let (o, t) = timed(Suite::Prop1, PROP1_CASES);
    lines.push(Line { name: "moduli class pushes out to minus the Atiyah class", pass: o.all_pass(), detail: describe(&o, t) });

    let (o, t) = timed(Suite::Thm1, grid_cases);
    lines.push(Line {
        name: "kernel law and certified ring dimensions, g <= 3, d <= 4",
        pass: o.all_pass() && t < GRID_BUDGET,
        detail: describe(&o, t),
    });

    let (o, t) = timed(Suite::Remark1, grid_cases);
    lines.push(Line { name: "holomorphic connection iff H = 0", pass: o.all_pass(), detail: describe(&o, t) });

    let stabilizer_cases = STABILIZER_TYPES.len().max(STABILIZER_MIN_CONFIGS) * 2;
    let (o, t) = timed(Suite::Stabilizer, stabilizer_cases);
    lines.push(Line {
        name: "stabilizer order against torsion enumeration",
        pass: o.all_pass() && o.cases >= STABILIZER_MIN_CONFIGS,
        detail: describe(&o, t),
    });

    let (o, t) = timed(Suite::Monodromy, MONODROMY_CASES);
    lines.push(Line { name: "monodromy round trips and ample ring dimension 1", pass: o.all_pass(), detail: describe(&o, t) });

    let (o, t) = timed(Suite::Lemma3, grid_cases);
    lines.push(Line { name: "partial connection obstruction vanishes", pass: o.all_pass(), detail: describe(&o, t) });

    let width = lines.iter().map(|l| l.name.len()).max().unwrap_or(0);
    for l in &lines {
        println!("{} {:<width$}  {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("acceptance: {}/{} criteria pass", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
