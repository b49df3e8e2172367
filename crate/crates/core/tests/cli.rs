mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use lnp::metrics::read_jsonl;
use lnp::successor::{CandidateReport, Strategy};

fn lnp() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lnp"));
    c.env_remove("LNP_LOG");
    c
}

fn bench(name: &str) -> (PathBuf, PathBuf) {
    let dir = common::benchmarks_dir().join(name);
    (dir.join("domain.pddl"), dir.join("problem.pddl"))
}

fn run(args: &[&str], files: (&Path, &Path)) -> Output {
    lnp().args(args).arg("--domain").arg(files.0).arg("--problem").arg(files.1).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn solve_writes_plan_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    let (d, p) = bench("mini-counters");
    let plan = tmp.path().join("plan.txt");
    let report = tmp.path().join("report.json");
    let o = run(
        &[
            "solve",
            "--generator",
            "propositional",
            "--plan-out",
            plan.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ],
        (&d, &p),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&plan).unwrap();
    assert!(text.ends_with("; cost = 3 (unit cost)\n"), "{text}");
    let reports = read_jsonl(fs::read(&report).unwrap().as_slice()).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].strategy, Strategy::Propositional);
    assert_eq!(reports[0].plan_cost, Some(3));
    assert!(reports[0].oa.unwrap() > 1.0);

    let v = lnp()
        .args(["validate", "--plan"])
        .arg(&plan)
        .arg("--domain")
        .arg(&d)
        .arg("--problem")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).trim(), "valid, cost = 3");
}

#[test]
fn solve_prints_plan_and_report_on_standard_streams() {
    let (d, p) = bench("mini-blocks");
    let o = run(&["solve"], (&d, &p));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("; cost = 4 (unit cost)"));
    let report: serde_json::Value = serde_json::from_str(stderr(&o).lines().last().unwrap()).unwrap();
    assert_eq!(report["strategy"], "numeric");
    assert_eq!(report["solved"], true);
}

#[test]
fn node_cap_and_unsolvable_exit_codes() {
    let (d, p) = bench("mini-gripper");
    let o = run(&["solve", "--node-cap", "2"], (&d, &p));
    assert_eq!(o.status.code(), Some(20));
    assert!(stdout(&o).contains("limit reached: node cap"));

    let tmp = tempfile::tempdir().unwrap();
    let prob = tmp.path().join("p.pddl");
    let original = fs::read_to_string(bench("mini-counters").1).unwrap();
    let goal_at = original.find("(:goal").unwrap();
    fs::write(&prob, format!("{}(:goal (> (value c1) 3)))\n", &original[..goal_at])).unwrap();
    let o = run(&["solve"], (&bench("mini-counters").0, &prob));
    assert_eq!(o.status.code(), Some(10), "{}", stderr(&o));
    assert!(stdout(&o).contains("unsolvable"));
}

#[test]
fn invalid_plan_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let (d, p) = bench("mini-counters");
    let plan = tmp.path().join("bad.txt");
    fs::write(&plan, "(decrement c2)\n").unwrap();
    let o = lnp()
        .args(["validate", "--plan"])
        .arg(&plan)
        .arg("--domain")
        .arg(&d)
        .arg("--problem")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid: step 0"), "{}", stdout(&o));

    fs::write(&plan, "(increment c9)\n").unwrap();
    let o = lnp()
        .args(["validate", "--plan"])
        .arg(&plan)
        .arg("--domain")
        .arg(&d)
        .arg("--problem")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(30));
    assert!(stderr(&o).contains("unknown object c9"));
}

#[test]
fn input_errors() {
    let o = lnp().arg("solve").output().unwrap();
    assert_eq!(o.status.code(), Some(30));

    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("d.pddl");
    fs::write(&bad, "(define (domain x)\n  (:requirements :conditional-effects))").unwrap();
    let o = run(&["solve"], (&bad, &bad));
    assert_eq!(o.status.code(), Some(30));
    let err = stderr(&o);
    assert!(err.contains("d.pddl:2:"), "{err}");
    assert!(err.contains("unsupported requirement"), "{err}");

    let o = run(&["solve", "--generator", "magic"], (&bad, &bad));
    assert_eq!(o.status.code(), Some(30));
}

#[test]
fn successors_lists_actions_and_counts() {
    let (d, p) = bench("mini-counters");
    let o = run(&["successors", "--state-from-init"], (&d, &p));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    let report: CandidateReport = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(report.applicable as usize, lines.len() - 1);
    assert_eq!(report.candidates, report.applicable);
    assert!(lines.contains(&"(decrement c1)"));
    assert!(!lines.contains(&"(decrement c2)"));

    let tmp = tempfile::tempdir().unwrap();
    let plan = tmp.path().join("plan.txt");
    fs::write(&plan, "(transfer c1 c2)\n").unwrap();
    let o = run(&["successors", "--after-plan", plan.to_str().unwrap(), "--generator", "exhaustive"], (&d, &p));
    let out = stdout(&o);
    assert!(out.contains("(increment c1)"), "{out}");
    assert!(!out.contains("(transfer c1 c2)"));
}

#[test]
fn dump_graph_names_exclusion_rules() {
    let (d, p) = bench("mini-rover");
    let o = run(&["successors", "--state-from-init", "--dump-graph"], (&d, &p));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("graph navigate k=3"));
    assert!(out.lines().any(|l| l.starts_with("removed-vertex") && l.ends_with("I+")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("removed-") && l.ends_with("I-delta")), "{out}");
}

#[test]
fn ground_counts_and_cap() {
    let (d, p) = bench("mini-counters");
    let o = run(&["ground", "--list"], (&d, &p));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("; increment: 3\n"));
    assert!(out.contains("; transfer: 9\n"));
    assert!(out.contains("; ground actions: 15\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 15);

    let o = run(&["ground", "--cap", "4"], (&d, &p));
    assert_eq!(o.status.code(), Some(20));
    let o = run(&["solve", "--generator", "grounded", "--ground-cap", "4"], (&d, &p));
    assert_eq!(o.status.code(), Some(20));
}

#[test]
fn check_exactness_reports_violations() {
    let o = lnp().args(["check-exactness", "--domain"]).arg(bench("mini-counters").0).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("exactness guaranteed"), "{}", stdout(&o));

    let o = lnp().args(["check-exactness", "--domain"]).arg(bench("mini-rover").0).output().unwrap();
    let out = stdout(&o);
    assert!(out.starts_with("exactness NOT guaranteed"), "{out}");
    assert!(out.contains("navigate"), "{out}");

    let o = lnp().args(["check-exactness", "--degree", "3", "--domain"]).arg(bench("mini-rover").0).output().unwrap();
    assert!(stdout(&o).contains("NOT guaranteed"), "literal arity is not bounded by the degree");
}

#[test]
fn satgadget_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("d.pddl");
    let p = tmp.path().join("p.pddl");
    let mut child = lnp()
        .args(["satgadget", "--cnf", "-", "--out-domain"])
        .arg(&d)
        .arg("--out-problem")
        .arg(&p)
        .stdin(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"p cnf 2 2\n1 2 2 0\n-1 -1 -2 0\n").unwrap();
    assert!(child.wait().unwrap().success());
    let o = run(&["solve"], (&d, &p));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("(satisfy "));

    let unsat = tmp.path().join("u.cnf");
    fs::write(&unsat, "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
    let o = lnp()
        .args(["satgadget", "--cnf"])
        .arg(&unsat)
        .arg("--out-domain")
        .arg(&d)
        .arg("--out-problem")
        .arg(&p)
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = run(&["solve"], (&d, &p));
    assert_eq!(o.status.code(), Some(10));

    fs::write(&unsat, "p cnf 1 1\n1 0\n").unwrap();
    let o = lnp().args(["satgadget", "--cnf"]).arg(&unsat).output().unwrap();
    assert_eq!(o.status.code(), Some(30));
}

#[test]
fn bench_writes_jsonl_and_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let suite = tmp.path().join("suite");
    for name in ["mini-counters", "mini-blocks"] {
        let dst = suite.join(name);
        fs::create_dir_all(&dst).unwrap();
        let (d, p) = bench(name);
        fs::copy(d, dst.join("domain.pddl")).unwrap();
        fs::copy(p, dst.join("problem.pddl")).unwrap();
    }
    let out = tmp.path().join("runs.jsonl");
    let csv = tmp.path().join("runs.csv");
    let o = lnp()
        .args(["bench", "--strategies", "numeric,exhaustive", "--jobs", "3", "--per-expansion", "--suite"])
        .arg(&suite)
        .arg("--out")
        .arg(&out)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let reports = read_jsonl(fs::read(&out).unwrap().as_slice()).unwrap();
    let ids: Vec<(String, Strategy)> = reports.iter().map(|r| (r.task.clone(), r.strategy)).collect();
    assert_eq!(
        ids,
        vec![
            ("mini-blocks/problem".into(), Strategy::Numeric),
            ("mini-blocks/problem".into(), Strategy::Exhaustive),
            ("mini-counters/problem".into(), Strategy::Numeric),
            ("mini-counters/problem".into(), Strategy::Exhaustive),
        ]
    );
    for r in &reports {
        assert!(r.solved);
        assert_eq!(r.per_expansion.len(), r.expansions);
        let sum: u64 = r.per_expansion.iter().map(|e| e.candidates).sum();
        assert_eq!(sum, r.candidates);
    }
    assert_eq!(reports[0].plan_cost, reports[1].plan_cost);
    assert_eq!(reports[2].oa, Some(1.0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("task,strategy,solved,"));
}
