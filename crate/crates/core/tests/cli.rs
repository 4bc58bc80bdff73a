//! End-to-end runs of the installed binary: exit codes, file outputs,
//! determinism across repeated invocations, and the error surface.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sizespectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn gen_graph(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().expect("utf-8 path").to_string();
    let mut full = args.to_vec();
    full.extend_from_slice(&["-o", &path_str]);
    let out = run(&full);
    assert!(out.status.success(), "gen failed: {}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn gen_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_graph(dir.path(), "a.txt", &["gen", "--kind", "gnp", "--n", "32", "--p", "0.5", "--seed", "9"]);
    let b = gen_graph(dir.path(), "b.txt", &["gen", "--kind", "gnp", "--n", "32", "--p", "0.5", "--seed", "9"]);
    let text_a = fs::read_to_string(&a).unwrap();
    assert_eq!(text_a, fs::read_to_string(&b).unwrap());
    let header: Vec<u64> =
        text_a.lines().next().unwrap().split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(header[0], 32);
    assert_eq!(text_a.lines().count() as u64, 1 + header[1]);

    let p = gen_graph(dir.path(), "p.txt", &["gen", "--kind", "paley", "--q", "13"]);
    assert!(fs::read_to_string(&p).unwrap().starts_with("13 39\n"));
}

#[test]
fn gen_rejects_missing_shape_arguments() {
    let out = run(&["gen", "--kind", "gnp", "--n", "8", "-o", "/tmp/unused.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--p"));
}

#[test]
fn analyze_reports_the_homogeneous_floor() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "g.txt", &["gen", "--kind", "gnp", "--n", "48", "--p", "0.5", "--seed", "4"]);
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&run(&["analyze", &g, "--C", "2"]))).expect("json report");
    assert_eq!(doc["n"], 48);
    let hom = doc["hom"]["hom"].as_u64().unwrap();
    assert!(hom as f64 >= (48f64).log2() / 2.0);
    assert_eq!(doc["diversity"].as_array().unwrap().len(), 4);
    assert!(doc["density"].as_f64().unwrap() > 0.0);
    assert!(doc["ramsey"]["is_c_ramsey"].is_boolean());
}

#[test]
fn phi_matches_the_complete_graph_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "k5.txt", &["gen", "--kind", "complete", "--n", "5"]);
    let csv = stdout_of(&run(&["phi", &g, "--exact", "--format", "csv"]));
    assert_eq!(csv, "size\n0\n1\n3\n6\n10\n");
    let json = stdout_of(&run(&["phi", &g, "--format", "json"]));
    let sizes: Vec<u64> = serde_json::from_str(json.trim()).expect("json sizes");
    assert_eq!(sizes, vec![0, 1, 3, 6, 10]);
}

#[test]
fn weighted_phi_tops_out_at_the_full_vertex_set() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "g.txt", &["gen", "--kind", "gnp", "--n", "14", "--p", "0.5", "--seed", "2"]);
    let edges: u64 = fs::read_to_string(&g)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let weights_path = dir.path().join("w.txt");
    let weights: Vec<u64> = (0..14).map(|v| 2 * v + 1).collect();
    fs::write(
        &weights_path,
        weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n"),
    )
    .unwrap();
    let csv = stdout_of(&run(&[
        "phi",
        &g,
        "--weights",
        weights_path.to_str().unwrap(),
        "--format",
        "csv",
    ]));
    // Every subset loses edges and weight against the full set, so the
    // spectrum maxes out at e(G) + Σω exactly.
    let max: u64 = csv.lines().last().unwrap().parse().unwrap();
    assert_eq!(max, edges + weights.iter().sum::<u64>());

    fs::write(&weights_path, "3\nnot-a-number\n").unwrap();
    let out = run(&["phi", &g, "--weights", weights_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn exact_enumeration_respects_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "g.txt", &["gen", "--kind", "gnp", "--n", "40", "--p", "0.5", "--seed", "1"]);
    let out = run(&["phi", &g, "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let sampled = stdout_of(&run(&["phi", &g, "--sampled", "--trials", "64", "--format", "csv"]));
    assert!(sampled.starts_with("size\n"));
    assert!(sampled.lines().count() > 2);

    let raised = stdout_of(&run(&["psi", &g, "--cap", "40", "--sampled", "--format", "csv"]));
    assert!(raised.starts_with("order,size\n"));
}

#[test]
fn construct_certify_round_trips_and_detects_forgery() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "g.txt", &["gen", "--kind", "gnp", "--n", "256", "--p", "0.5", "--seed", "7"]);
    let out_dir = dir.path().join("run");
    let report = stdout_of(&run(&["construct", &g, "--out-dir", out_dir.to_str().unwrap()]));
    let doc: serde_json::Value = serde_json::from_str(&report).expect("run report");
    let emitted = doc["counts"]["certificates"].as_u64().unwrap();
    assert!(emitted > 0);
    assert_eq!(doc["counts"]["distinct_sizes"].as_u64().unwrap(), emitted);
    assert_eq!(doc["master_seed"].as_u64(), Some(0));

    let certs_path = out_dir.join("certificates.json");
    let scales = fs::read_to_string(out_dir.join("scales.csv")).unwrap();
    assert!(scales.starts_with("scale,e_u,l,w_size,psi_size\n"));
    assert_eq!(scales.lines().count() as u64 - 1, doc["counts"]["scales"].as_u64().unwrap());

    let verdict = stdout_of(&run(&["certify", &g, certs_path.to_str().unwrap()]));
    let verdict: serde_json::Value = serde_json::from_str(&verdict).unwrap();
    assert_eq!(verdict["total"].as_u64(), Some(emitted));

    // Flip one claimed size: the recount must reject with the integrity code.
    let mut certs: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&certs_path).unwrap()).unwrap();
    certs[0]["size"] = serde_json::json!(certs[0]["size"].as_u64().unwrap() + 1);
    let forged = dir.path().join("forged.json");
    fs::write(&forged, serde_json::to_string(&certs).unwrap()).unwrap();
    let out = run(&["certify", &g, forged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("integrity"));
}

#[test]
fn parameter_files_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_graph(dir.path(), "g.txt", &["gen", "--kind", "gnp", "--n", "256", "--p", "0.5", "--seed", "7"]);
    let params = dir.path().join("tuning.params");

    fs::write(&params, "# wider pools\nw1_mult = 2.5\nw_max = 48\n").unwrap();
    let out_dir = dir.path().join("tuned");
    let out = run(&[
        "construct", &g,
        "--params", params.to_str().unwrap(),
        "--out-dir", out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    fs::write(&params, "w1_mult = 2.5\nwindow_fraction = 0.5\n").unwrap();
    let out = run(&["construct", &g, "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window_fraction"));

    fs::write(&params, "delta = 1.5\n").unwrap();
    let out = run(&["construct", &g, "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn probe_table_has_the_documented_columns() {
    let csv = stdout_of(&run(&["probe", "--grid", "64,128", "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,max_prob,max_prob_times_sqrt_n"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "64");
    assert!(first[1].parse::<f64>().unwrap() > 0.0);

    let json = stdout_of(&run(&["probe", "--grid", "64"]));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows[0]["n"].as_u64(), Some(64));
}

#[test]
fn suites_write_all_artifacts_and_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let report = stdout_of(&run(&[
            "suite", "conjecture-probe",
            "--grid", "10,12",
            "--seed-count", "2",
            "--out-dir", out.to_str().unwrap(),
        ]));
        let doc: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(doc["counts"]["rows"].as_u64(), Some(4));
    }
    for file in ["conjecture_probe.csv", "conjecture_probe.svg", "conjecture_probe.dat"] {
        let a = fs::read(out_a.join(file)).unwrap();
        let b = fs::read(out_b.join(file)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{file} differs between identical runs");
    }
    let csv = fs::read_to_string(out_a.join("conjecture_probe.csv")).unwrap();
    assert!(csv.starts_with("n,seed,phi_size,prefix_len,psi_size\n"));
    assert!(fs::read_to_string(out_a.join("conjecture_probe_report.json")).unwrap().contains("\"rows\": 4"));
}
