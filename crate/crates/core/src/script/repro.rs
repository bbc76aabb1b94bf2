//! The bundled reproduction checks and their report table.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use super::interp::{run_source, Options, ScriptReport};

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub file: &'static str,
    pub source: &'static str,
    /// Whether `Tor_1` should vanish.
    pub expect_zero: bool,
}

pub const CHECKS: [Check; 6] = [
    Check {
        id: "1",
        title: "surface graph over A1 cone",
        file: "01_surface_graph.fc",
        source: include_str!("../../paper/01_surface_graph.fc"),
        expect_zero: false,
    },
    Check {
        id: "2",
        title: "Francia chart, flipped side",
        file: "02_francia_flat.fc",
        source: include_str!("../../paper/02_francia_flat.fc"),
        expect_zero: true,
    },
    Check {
        id: "3",
        title: "Francia chart, quotient side",
        file: "03_francia_nonflat.fc",
        source: include_str!("../../paper/03_francia_nonflat.fc"),
        expect_zero: false,
    },
    Check {
        id: "4",
        title: "smooth blowup chart",
        file: "04_smooth_chart.fc",
        source: include_str!("../../paper/04_smooth_chart.fc"),
        expect_zero: true,
    },
    Check {
        id: "5",
        title: "A1 fibered product",
        file: "05_fibered_product.fc",
        source: include_str!("../../paper/05_fibered_product.fc"),
        expect_zero: true,
    },
    Check {
        id: "6",
        title: "Segre cone chart",
        file: "06_segre_chart.fc",
        source: include_str!("../../paper/06_segre_chart.fc"),
        expect_zero: true,
    },
];

pub struct ReproRow {
    pub id: &'static str,
    pub title: &'static str,
    pub expected: &'static str,
    /// `zero`, `nonzero`, or `error` when the script did not produce a verdict.
    pub actual: String,
    pub elapsed: Duration,
    pub report: ScriptReport,
}

impl ReproRow {
    pub fn passed(&self) -> bool {
        self.expected == self.actual && self.report.passed()
    }
}

pub struct ReproReport {
    pub rows: Vec<ReproRow>,
}

/// Column where the time column starts; everything before it is
/// deterministic.
pub const TIME_COLUMN: usize = 62;

fn verdict(zero: bool) -> &'static str {
    if zero {
        "zero"
    } else {
        "nonzero"
    }
}

fn run_check(c: &Check, opts: Options) -> ReproRow {
    let start = Instant::now();
    let report = run_source(c.source, opts);
    let elapsed = start.elapsed();
    let actual = match (&report.error, report.assertions.last().and_then(|a| a.tor_zero)) {
        (None, Some(z)) => verdict(z).to_string(),
        _ => "error".to_string(),
    };
    ReproRow {
        id: c.id,
        title: c.title,
        expected: verdict(c.expect_zero),
        actual,
        elapsed,
        report,
    }
}

/// Run every check, in parallel, assembling rows in order.
pub fn repro_paper(opts: Options) -> ReproReport {
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|c| s.spawn(move || run_check(c, opts))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("repro check panicked"))
            .collect()
    });
    ReproReport { rows }
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, cols: [&str; 6]| {
            let head = format!("{:<3} {:<30} {:<9} {:<9} {:<7}", cols[0], cols[1], cols[2], cols[3], cols[4]);
            let _ = writeln!(out, "{head:<width$}{}", cols[5], width = TIME_COLUMN);
        };
        line(&mut out, ["id", "check", "expected", "actual", "status", "time"]);
        for r in &self.rows {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let time = format!("{:.3}s", r.elapsed.as_secs_f64());
            line(&mut out, [r.id, r.title, r.expected, &r.actual, status, &time]);
        }
        let failed = self.rows.iter().filter(|r| !r.passed()).count();
        let _ = writeln!(out, "{} checks, {} failed", self.rows.len(), failed);
        out
    }
}
