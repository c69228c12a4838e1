use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gencluster::document::SeedDocument;
use gencluster::invariants::{
    composite_invariants, generalized_invariants, render_invariant_matrix, render_polys, FTable,
};
use gencluster::pattern::{GeneralizedSeed, TreeWord};
use gencluster::tables::reproduce;
use gencluster::verify::{random_instances, run_all, Check, CheckReport, Instance, Task};
use gencluster::Error;
use serde_json::json;

const MAX_DEPTH: usize = 8;
const MAX_TRIALS: usize = 10_000;

#[derive(Parser)]
#[command(name = "gencluster", version, about = "Generalized cluster patterns and their composite realization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    G,
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Print the seed reached from the initial seed along a word.
    Mutate {
        #[arg(long)]
        seed: String,
        /// Comma-separated 1-based directions; empty for the initial seed.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Print C-matrices, G-matrices and F-polynomials at the end of a word.
    Invariants {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, value_enum, default_value = "g")]
        pattern: Pattern,
        /// Comma-separated subset of c, g, f.
        #[arg(long, default_value = "c,g,f")]
        what: String,
    },
    /// Run checks on a seed over all reduced words up to a depth, or on
    /// random instances.
    Verify {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        seed: Option<String>,
        #[arg(long)]
        random: bool,
        /// Check name, comma-separated names, or "all".
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, required_if_eq("random", "true"))]
        rng_seed: Option<u64>,
    },
    /// Recompute a worked table and diff it against the golden data.
    Table {
        #[arg(long)]
        case: String,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &str) -> Result<GeneralizedSeed, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(SeedDocument::parse(&text)?.to_seed()?)
}

fn parse_word(word: &str, n: usize) -> Result<TreeWord, Failure> {
    Ok(TreeWord::parse(word, n)?)
}

fn mutate(seed: &str, word: &str) -> Result<(), Failure> {
    let s = load(seed)?;
    let w = parse_word(word, s.rank())?;
    let end = s.walk(&w)?;
    print!("word {w}\n{}", end.render());
    Ok(())
}

fn invariants(seed: &str, word: &str, pattern: Pattern, what: &str) -> Result<(), Failure> {
    let s = load(seed)?;
    let w = parse_word(word, s.rank())?;
    let mut parts = Vec::new();
    for p in what.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match p {
            "c" | "g" | "f" => parts.push(p),
            _ => return Err(Failure::Usage(format!("unknown invariant '{p}'; valid: c, g, f"))),
        }
    }
    let r = s.degrees();
    let ft = FTable::new(&r)?;
    let (c, g, f, names) = match pattern {
        Pattern::G => {
            let inv = generalized_invariants(s.b(), &r, &w, &ft)?;
            let names = (0..r.len()).map(|i| format!("F{}", i + 1)).collect::<Vec<_>>();
            (inv.c, inv.g, inv.f, names)
        }
        Pattern::C => {
            let inv = composite_invariants(s.b(), &r, &w, &ft)?;
            let names = r
                .iter()
                .enumerate()
                .flat_map(|(i, &ri)| (0..ri).map(move |l| format!("F{}_{}", i + 1, l + 1)))
                .collect::<Vec<_>>();
            (inv.c, inv.g, inv.f, names)
        }
    };
    let mut out = format!("word {w}\n");
    for p in parts {
        match p {
            "c" => out.push_str(&format!("C = {}\n", render_invariant_matrix(&c))),
            "g" => out.push_str(&format!("G = {}\n", render_invariant_matrix(&g))),
            _ => out.push_str(&render_polys(&names, &f, &ft)),
        }
    }
    print!("{out}");
    Ok(())
}

fn parse_checks(spec: &str) -> Result<Vec<Check>, Failure> {
    if spec == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim) {
        let c = Check::parse(name)?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

fn summary(command: String, reports: &[CheckReport]) -> serde_json::Value {
    let failed = reports.iter().filter(|r| !r.passed).count();
    json!({
        "command": command,
        "checks": reports.iter().map(|r| json!({
            "name": r.name,
            "instance": r.instance,
            "word": r.word.to_string(),
            "passed": r.passed,
            "count": r.count,
            "witness": r.witness,
        })).collect::<Vec<_>>(),
        "passed": reports.len() - failed,
        "failed": failed,
        "status": if failed == 0 { 0 } else { 1 },
    })
}

fn verify(
    seed: Option<String>,
    random: bool,
    check: &str,
    depth: usize,
    trials: usize,
    rng_seed: Option<u64>,
) -> Result<(), Failure> {
    let checks = parse_checks(check)?;
    if depth > MAX_DEPTH {
        return Err(Error::BoundExceeded(format!("depth {depth} > {MAX_DEPTH}")).into());
    }
    if trials > MAX_TRIALS {
        return Err(Error::BoundExceeded(format!("trials {trials} > {MAX_TRIALS}")).into());
    }
    let names: Vec<&str> = checks.iter().map(|c| c.name()).collect();
    let mut tasks = Vec::new();
    let command = if random {
        let rng_seed = rng_seed.ok_or_else(|| Failure::Usage("--random needs --rng-seed".into()))?;
        for (inst, word) in random_instances(rng_seed, trials, depth)? {
            for &check in &checks {
                if check.applies_to(inst.seed.kind().flavor()) {
                    tasks.push(Task {
                        check,
                        instance: inst.clone(),
                        word: word.clone(),
                    });
                }
            }
        }
        format!(
            "verify --random --check {} --depth {depth} --trials {trials} --rng-seed {rng_seed}",
            names.join(",")
        )
    } else {
        let path = seed.expect("clap enforces --seed or --random");
        let s = load(&path)?;
        let label = std::path::Path::new(&path)
            .file_stem()
            .map(|x| x.to_string_lossy().into_owned())
            .unwrap_or_else(|| "seed".into());
        let inst = Instance::new(label, s);
        let explicit = check != "all";
        for word in TreeWord::all_up_to(inst.seed.rank(), depth) {
            for &check in &checks {
                if explicit || check.applies_to(inst.seed.kind().flavor()) {
                    tasks.push(Task {
                        check,
                        instance: inst.clone(),
                        word: word.clone(),
                    });
                }
            }
        }
        format!("verify --seed {path} --check {} --depth {depth}", names.join(","))
    };
    let reports = run_all(&tasks);
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.line());
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("checks {} passed {} failed {}\n", reports.len(), reports.len() - failed, failed));
    out.push_str(&serde_json::to_string(&summary(command, &reports)).expect("summary serializes"));
    println!("{out}");
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn table(case: &str) -> Result<(), Failure> {
    let n: u32 = case
        .parse()
        .map_err(|_| Failure::Usage(Error::UnknownCase(case.to_string()).to_string()))?;
    let report = reproduce(n)?;
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Mutate { seed, word } => mutate(&seed, &word),
        Command::Invariants {
            seed,
            word,
            pattern,
            what,
        } => invariants(&seed, &word, pattern, &what),
        Command::Verify {
            seed,
            random,
            check,
            depth,
            trials,
            rng_seed,
        } => verify(seed, random, &check, depth, trials, rng_seed),
        Command::Table { case } => table(&case),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gencluster::verify::CHECK_NAMES;

    #[test]
    fn check_lists() {
        assert_eq!(parse_checks("all").ok().unwrap().len(), CHECK_NAMES.len());
        let got = parse_checks("y-realization,enlargement").ok().unwrap();
        assert_eq!(got, vec![Check::Enlargement, Check::YRealization]);
        assert!(matches!(parse_checks("bogus"), Err(Failure::Usage(m)) if m.contains("cg-relations")));
    }
}
