//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gencluster::composite::enlarge;
use gencluster::pattern::ExchangeMatrix;
use gencluster::tables::reproduce;
use gencluster::verify::{random_instances, run_check, Check};

const RNG_SEED: u64 = 20_240_611;
const CASES: u32 = 64;

type Outcome = Result<String, String>;

fn enlargement_example() -> Outcome {
    let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-2, 0]], None).map_err(|e| e.to_string())?;
    let big = enlarge(&b, &[2, 3]);
    let expected: Vec<Vec<i64>> = vec![
        vec![0, 0, 1, 1, 1],
        vec![0, 0, 1, 1, 1],
        vec![-2, -2, 0, 0, 0],
        vec![-2, -2, 0, 0, 0],
        vec![-2, -2, 0, 0, 0],
    ];
    if big.rows() == expected.as_slice() {
        Ok(big.render())
    } else {
        Err(format!("got {}", big.render()))
    }
}

fn table_two() -> Outcome {
    let report = reproduce(2).map_err(|e| e.to_string())?;
    let cg = report.entries.iter().filter(|e| matches!(e.label.as_str(), "C^g" | "G^g" | "C^c" | "G^c")).count();
    if let Some(e) = report.entries.iter().find(|e| !e.matches) {
        return Err(format!("{} t{}: {} vs golden {}", e.label, e.vertex, e.computed, e.expected));
    }
    if cg != 16 || !report.discrepancies.is_empty() || !report.passed() {
        return Err(format!("{cg} matrices, {} discrepancies", report.discrepancies.len()));
    }
    Ok(format!("{cg} matrices match"))
}

fn table_one() -> Outcome {
    let report = reproduce(1).map_err(|e| e.to_string())?;
    let bad: Vec<_> = report.entries.iter().filter(|e| !e.matches).collect();
    let [d] = report.discrepancies.as_slice() else {
        return Err(format!("{} discrepancies", report.discrepancies.len()));
    };
    let flagged = (d.label.as_str(), d.vertex, d.row, d.col, d.golden, d.recursion) == ("C^g", 3, 0, 0, -1, 1);
    let only = bad.len() == 1 && bad[0].label == "C^g" && bad[0].vertex == 3;
    let forms = d.relations.iter().filter(|(f, _)| f.starts_with("column-sum") || f.starts_with("row-sum")).count();
    if !flagged || !only || forms == 0 || !d.consistent() || !report.passed() {
        return Err(report.render());
    }
    let f = report.entries.iter().filter(|e| e.label.starts_with('F')).count();
    Ok(format!(
        "{} entries, {f} F-polynomials; flagged C^g t3 (1,1): golden {}, recursion {}, relations {:?}",
        report.entries.len(),
        d.golden,
        d.recursion,
        d.relations.iter().map(|(_, v)| *v).collect::<Vec<_>>()
    ))
}

fn enlargement_commutes() -> Outcome {
    let trials = random_instances(RNG_SEED, 100, 6).map_err(|e| e.to_string())?;
    for (inst, w) in &trials {
        let r = run_check(Check::Enlargement, inst, w);
        if !r.passed {
            return Err(r.line());
        }
    }
    Ok(format!("{} trials", trials.len()))
}

fn cases(check: Check, depth: usize) -> Outcome {
    on_cases(check, depth).map(|n| format!("{n} walks, depth <= {depth}"))
}

fn relations() -> Outcome {
    let mut parts = Vec::new();
    for check in [Check::CgRelations, Check::FRelation, Check::FSymmetry] {
        parts.push(format!("{} {}", check.name(), on_cases(check, 4)?));
    }
    Ok(format!("{} walks, depth <= 4", parts.join(", ")))
}

fn properties() -> Outcome {
    let suites: [(&str, fn() -> Result<u32, String>); 7] = [
        ("involution", || involution(CASES)),
        ("composite-order", || composite_order(CASES)),
        ("skew-symmetrizer", || skew_symmetrizer(CASES)),
        ("separation", || separation(CASES, RANDOM_DEPTH)),
        ("separation-cases", || on_cases_at(Check::Separation, &CASE_DEPTHS)),
        ("laurent-positive", || laurent_positive(CASES, RANDOM_DEPTH)),
        ("laurent-positive-cases", || on_cases_at(Check::LaurentPositive, &CASE_DEPTHS)),
    ];
    let mut parts = Vec::new();
    for (name, suite) in suites {
        let n = suite().map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name} {n}"));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("1 enlargement example", Duration::from_millis(1), enlargement_example),
        ("2 table of case 2", Duration::from_secs(1), table_two),
        ("3 table of case 1", Duration::from_secs(1), table_one),
        ("4 enlargement commutes with mutation", Duration::from_secs(10), enlargement_commutes),
        ("5 y-realization", Duration::from_secs(30), || cases(Check::YRealization, 3)),
        ("6 x-realization", Duration::from_secs(120), || cases(Check::XRealization, 3)),
        ("7 C/G and F relations, F symmetry", Duration::from_secs(60), relations),
        ("8 property suites", Duration::from_secs(300), properties),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name} ({elapsed:.2?}, limit {limit:?}): {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
