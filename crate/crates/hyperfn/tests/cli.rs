//! End-to-end checks of the command-line surface: outputs, exit codes,
//! manifests, and byte-for-byte reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn hyperfn(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfn"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn hyper_eval_prints_the_step_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(&["hyper", "eval", "--term", "step:0", "--x", "5"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
    // Manifest line on stderr.
    let manifest = stderr(&out);
    assert!(manifest.contains("\"command\":\"hyper eval\""), "{manifest}");
    assert!(manifest.contains("\"config_digest\""));
}

#[test]
fn hyper_eval_closed_mode_handles_breakpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(
        &["hyper", "eval", "--term", "step:3", "--x", "3", "--mode", "closed"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn unknown_flag_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(&["hyper", "eval", "--bogus", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_error_is_single_line_and_machine_parsable() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(
        &["hyper", "eval", "--term", "step:0", "--x", "1e-9"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "expected one line, got: {err}");
    assert!(err.starts_with("error: TOO_CLOSE_TO_SINGULARITY:"), "{err}");
}

#[test]
fn missing_file_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(
        &["switch", "eval", "--expr", "no_such_file.json", "--inputs", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn switch_eval_reads_expression_files() {
    let dir = tempfile::tempdir().unwrap();
    let expr = serde_json::json!({
        "node": "STEP_WEAK_ONE",
        "x": [{"var": 0}, {"var": 1}],
        "r": [1.0, 2.0]
    });
    let path = dir.path().join("expr.json");
    std::fs::write(&path, expr.to_string()).unwrap();
    let out = hyperfn(
        &["switch", "eval", "--expr", "expr.json", "--inputs", "1.5,2.5"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");
    let out0 = hyperfn(
        &["switch", "eval", "--expr", "expr.json", "--inputs", "0.5,2.5"],
        dir.path(),
    );
    assert_eq!(stdout(&out0), "0\n");
}

#[test]
fn pref_choose_picks_the_ranked_label_and_surfaces_ties() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "impulses": [
            {"r_lo": 0.0, "r_hi": 1.0, "weight": 1.0},
            {"r_lo": 2.0, "r_hi": 3.0, "weight": 5.0}
        ],
        "rho": 0.05
    });
    std::fs::write(dir.path().join("spec.json"), spec.to_string()).unwrap();
    let out = hyperfn(
        &["pref", "choose", "--spec", "spec.json", "--pair", "0.5,2.5"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2.5\n");
    let tie = hyperfn(
        &["pref", "choose", "--spec", "spec.json", "--pair", "5.0,7.0"],
        dir.path(),
    );
    assert_eq!(tie.status.code(), Some(2));
    assert!(stderr(&tie).starts_with("error: TIE:"));
}

fn write_demo_graph(dir: &Path) {
    let graph = serde_json::json!({
        "tasks": [
            {"label": 1.0, "order": 3.0, "coefficients": [{"bucket": 0, "p": 0.0, "r": 1.0, "psi": 3.0}], "specificity": 4, "cross_section": 3.0},
            {"label": 2.0, "order": 2.0, "coefficients": [{"bucket": 0, "p": 1.0, "r": 2.0, "psi": 2.0}], "specificity": 2, "cross_section": 1.0},
            {"label": 3.0, "order": 1.0, "coefficients": [{"bucket": 0, "p": 2.0, "r": 3.0, "psi": 1.0}], "specificity": 1, "cross_section": 2.0}
        ],
        "edges": [[0, 1], [1, 2]],
        "interval": [0.0, 10.0],
        "path": [0, 1, 2]
    });
    std::fs::write(dir.join("graph.json"), graph.to_string()).unwrap();
}

#[test]
fn prod_triangle_emits_versioned_csv_with_conserved_mass() {
    let dir = tempfile::tempdir().unwrap();
    write_demo_graph(dir.path());
    let out = hyperfn(
        &["prod", "triangle", "--graph", "graph.json", "--bins", "1,2,3,4"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# hyperfn:triangle:v1"));
    assert_eq!(lines.next(), Some("order_lo,order_hi,frequency"));
    let total: f64 = lines
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .sum();
    assert_eq!(total, 6.0);
}

#[test]
fn prod_abandon_lists_events_in_order() {
    let dir = tempfile::tempdir().unwrap();
    write_demo_graph(dir.path());
    let out = hyperfn(
        &["prod", "abandon", "--graph", "graph.json", "--rates", "0.5,1.0,2.0"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# hyperfn:abandon:v1\ntask_label,rate_index,rate\n"));
}

#[test]
fn inflate_sweep_zero_epsilon_has_zero_drop_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::to_string(&hyperfn::inflation::demo_config()).unwrap();
    std::fs::write(dir.path().join("market.json"), config).unwrap();
    let args = [
        "inflate", "sweep", "--config", "market.json", "--epsilons", "0",
        "--report-dir", "reports",
    ];
    let out1 = hyperfn(&args, dir.path());
    assert!(out1.status.success(), "{}", stderr(&out1));
    let text = stdout(&out1);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# hyperfn:sweep:v1"));
    assert_eq!(lines.next(), Some("epsilon,welfare,drop_ratio,nonproportional_flag"));
    let row = lines.next().unwrap();
    assert_eq!(row, "0,4,0,0");
    assert!(dir.path().join("reports/report_000.json").exists());

    let out2 = hyperfn(&args, dir.path());
    assert_eq!(out1.stdout, out2.stdout, "outputs must be byte-identical");
    let r1 = std::fs::read(dir.path().join("reports/report_000.json")).unwrap();
    let out3 = hyperfn(&args, dir.path());
    let r2 = std::fs::read(dir.path().join("reports/report_000.json")).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(out1.stdout, out3.stdout);
}

#[test]
fn inflate_sweep_full_grid_flags_nonproportional_harm() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::to_string(&hyperfn::inflation::demo_config()).unwrap();
    std::fs::write(dir.path().join("market.json"), config).unwrap();
    let out = hyperfn(
        &[
            "inflate", "sweep", "--config", "market.json", "--epsilons",
            "0,0.002,0.005,0.01,0.02,0.04",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let flagged = text
        .lines()
        .skip(2)
        .filter(|l| l.ends_with(",1"))
        .count();
    assert!(flagged >= 1, "expected a nonproportional point:\n{text}");
}

#[test]
fn risk_project_prints_the_interval() {
    let dir = tempfile::tempdir().unwrap();
    let model = serde_json::json!({
        "inputs": ["cap"],
        "base_terms": [{
            "gate": {"node": "STEP_WEAK_ONE", "x": [{"var": 0}], "r": [1.0]},
            "amount": 100.0,
            "time": 0.0
        }],
        "rate": 0.0,
        "event_deltas": []
    });
    let data = serde_json::json!({"cap": {"type": "POINT", "value": 2.0}});
    std::fs::write(dir.path().join("m.json"), model.to_string()).unwrap();
    std::fs::write(dir.path().join("d.json"), data.to_string()).unwrap();
    let out = hyperfn(
        &["risk", "project", "--model", "m.json", "--data", "d.json", "--rate", "0.05"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "{\"hi\":100.0,\"lo\":100.0}\n");
}

#[test]
fn shipped_demo_config_matches_the_library() {
    // The checked-in file must stay in sync with demo_config().
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/market_demo.json");
    let from_file: hyperfn::inflation::MarketConfig =
        serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(from_file, hyperfn::inflation::demo_config());
}

#[test]
fn thread_cap_does_not_change_sweep_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::to_string(&hyperfn::inflation::demo_config()).unwrap();
    std::fs::write(dir.path().join("market.json"), config).unwrap();
    let args = ["inflate", "sweep", "--config", "market.json", "--epsilons", "0,0.002,0.005"];
    let parallel = hyperfn(&args, dir.path());
    let single = Command::new(env!("CARGO_BIN_EXE_hyperfn"))
        .args(args)
        .env("HYPERFN_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(parallel.status.success() && single.status.success());
    assert_eq!(parallel.stdout, single.stdout);
}

#[test]
fn manifest_file_is_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperfn(
        &["hyper", "eval", "--term", "const:1", "--x", "0", "--manifest", "run.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "hyper eval");
    assert_eq!(manifest["tool_version"], env!("CARGO_PKG_VERSION"));
}
