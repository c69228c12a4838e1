use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gencluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_of_case_two() {
    let o = run(&["invariants", "--seed", &data("case2.json"), "--word", "1,2", "--pattern", "g", "--what", "c"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "word (1,2)\nC = [[11,-2],[6,-1]]\n");
}

#[test]
fn composite_f_polynomials_of_case_one() {
    let o = run(&["invariants", "--seed", &data("case1.json"), "--word", "1,2,1", "--pattern", "c", "--what", "f"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "word (1,2,1)\n\
         F1_1 = 1 + y2_1 + y1_2*y2_1\n\
         F1_2 = 1 + y2_1 + y1_1*y2_1\n\
         F2_1 = 1 + y2_1 + y1_1*y2_1 + y1_2*y2_1 + y1_1*y1_2*y2_1\n"
    );
}

#[test]
fn empty_word_gives_initial_invariants() {
    let o = run(&["invariants", "--seed", &data("case1.json"), "--pattern", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("C = [[1,0,0],[0,1,0],[0,0,1]]"), "{out}");
    assert!(out.contains("G = [[1,0,0],[0,1,0],[0,0,1]]"), "{out}");
    assert!(out.contains("F1_1 = 1\nF1_2 = 1\nF2_1 = 1\n"), "{out}");
}

#[test]
fn empty_word_echoes_the_seed() {
    let o = run(&["mutate", "--seed", &data("case2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("word ()\n"), "{out}");
    assert!(out.contains("x1 = x1\n") && out.contains("x2 = x2\n"), "{out}");
}

#[test]
fn non_reduced_word_is_a_usage_error() {
    let o = run(&["mutate", "--seed", &data("case1.json"), "--word", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: non-reduced word\n");
}

#[test]
fn malformed_document_reports_its_location() {
    let dir = std::env::temp_dir().join(format!("gencluster-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"schema\": \"gencluster-seed/1\",\n  \"rank\": 2,\n  oops\n}\n").unwrap();
    let o = run(&["mutate", "--seed", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: parse error at line 4 column"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_of_case_two_matches() {
    let o = run(&["table", "--case", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("result pass\n"), "{out}");
    assert!(!out.contains("MISMATCH") && !out.contains("flagged"), "{out}");
}

#[test]
fn table_of_case_one_flags_one_entry() {
    let o = run(&["table", "--case", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let flagged: Vec<&str> = out.lines().filter(|l| l.starts_with("flagged")).collect();
    assert_eq!(flagged.len(), 1, "{out}");
    assert!(flagged[0].starts_with("flagged C^g t3 entry (1,1): golden -1, recursion 1"), "{out}");
    assert!(flagged[0].ends_with("(consistent)"), "{out}");
    assert!(out.ends_with("result pass\n"), "{out}");
}

#[test]
fn unknown_case_is_rejected() {
    let o = run(&["table", "--case", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: unknown case 3\n");
}

#[test]
fn unknown_check_lists_valid_names() {
    let o = run(&["verify", "--seed", &data("case1.json"), "--check", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for name in ["cg-relations", "enlargement", "f-relation", "separation", "y-realization"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn depth_bound_is_enforced() {
    let o = run(&["verify", "--seed", &data("case1.json"), "--depth", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("99"), "{}", stderr(&o));
}

#[test]
fn f_relation_on_case_one() {
    let o = run(&["verify", "--seed", &data("case1.json"), "--check", "f-relation", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("checks 7 passed 7 failed 0\n"), "{out}");
    let summary: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(summary["status"], 0);
    assert_eq!(summary["failed"], 0);
}

#[test]
fn random_enlargement_trials() {
    let args = ["verify", "--random", "--check", "enlargement", "--trials", "25", "--rng-seed", "7"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let out = stdout(&first);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS enlargement random#")).count(), 25, "{out}");
    assert!(out.contains("checks 25 passed 25 failed 0\n"), "{out}");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_output_is_byte_stable() {
    let args = ["verify", "--seed", &data("case2.json"), "--depth", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}
