use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_energy-bounds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("energy-bounds-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

/// Parses a csv body into (header, rows).
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], row: &[String], name: &str) -> String {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].clone()
}

fn ratio(header: &[String], row: &[String], name: &str) -> f64 {
    column(header, row, name).parse().unwrap()
}

#[test]
fn report_petersen_ratios() {
    let o = run(&["report", "petersen", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    let r = &rows[0];
    for (col, want) in [
        ("ratio_simple", 1.0),
        ("ratio_chi_f", 1.2),
        ("ratio_sdp_adjacency", 0.75),
        ("ratio_half_energy", 0.75),
    ] {
        assert!((ratio(&h, r, col) - want).abs() < 1e-3, "{col}");
    }
    assert_eq!(column(&h, r, "verdict"), "holds");
}

#[test]
fn report_graph6_triangle() {
    let o = run(&["report", "--graph6", "Bw", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    let r = &rows[0];
    assert_eq!(column(&h, r, "n"), "3");
    assert_eq!(column(&h, r, "alpha"), "1");
    assert!((ratio(&h, r, "bound_simple") - 2.0).abs() < 1e-9);
    assert_eq!(column(&h, r, "verdict"), "holds");
}

#[test]
fn report_graph6_from_stdin_and_edge_list() {
    let o = run_stdin(&["report", "--graph6", "-", "--format", "csv"], "Bw\n");
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(column(&h, &rows[0], "m"), "3");

    let path = temp_file("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let o = run(&["report", "--edge-list", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert!((ratio(&h, &rows[0], "half_energy") - 2.0).abs() < 1e-9);
}

#[test]
fn report_edgeless_holds_trivially() {
    let o = run(&["report", "empty(5)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("holds trivially (n-alpha = 0)"));
    assert!(out.contains("| bound_simple | N/A |"));
    assert!(out.contains("| absent: bound_simple | edgeless |"));
}

#[test]
fn bad_inputs_exit_one() {
    assert_eq!(run(&["report", "nonesuch"]).status.code(), Some(1));
    assert_eq!(run(&["report", "petersen", "--graph6", "Bw"]).status.code(), Some(1));
    assert_eq!(run(&["report"]).status.code(), Some(1));
    assert_eq!(run(&["report", "--graph6", "B"]).status.code(), Some(1));
    assert_eq!(run(&["verify"]).status.code(), Some(1));
    assert_eq!(run(&["report", "petersen", "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn report_json_is_versioned_and_deterministic() {
    let a = run(&["report", "chvatal", "--format", "json"]);
    let b = run(&["report", "chvatal", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["reports"][0]["alpha"], 4);
}

#[test]
fn table_subset_matches_published_rows() {
    let o = run(&["table", "petersen", "octahedron", "thomsen", "chvatal", "heawood", "desargues", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    let expected = [
        [1.0, 1.2, 0.75, 0.75],
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, 1.0, 1.0],
        [1.16666, 1.33333, 0.95414, 0.83668],
        [1.0, 1.0, 0.82968, 0.60946],
        [1.0, 1.0, 0.8772, 0.625],
    ];
    assert_eq!(rows.len(), 6);
    for (row, want) in rows.iter().zip(expected) {
        for (col, w) in ["ratio_simple", "ratio_chi_f", "ratio_sdp_adjacency", "ratio_half_energy"].iter().zip(want) {
            assert!((ratio(&h, row, col) - w).abs() <= 1e-3, "{} {col}", row[0]);
        }
    }
}

#[test]
fn table_empty_filter_is_header_only() {
    let o = run(&["table", "--filter", "no-such-graph", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.is_empty());
    let md = stdout(&run(&["table", "--filter", "no-such-graph"]));
    assert_eq!(md.lines().count(), 2);
}

#[test]
fn table_johnson_catalog_all_hold() {
    let mut specs = String::from("# Johnson graphs\n");
    for r in 2..=7 {
        for k in 1..r {
            specs.push_str(&format!("johnson({r},{k})\n"));
        }
    }
    let path = temp_file("johnson.txt", &specs);
    let o = run(&["table", "--catalog", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 21);
    for row in &rows {
        assert_eq!(column(&h, row, "verdict"), "holds", "{}", row[0]);
    }
}

#[test]
fn verify_small_orders() {
    let o = run(&["verify", "--enumerate", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][2..6], ["0.0", "0.0", "0.0", "0.0"]);

    let o = run(&["verify", "--enumerate", "5", "--format", "csv"]);
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(column(&h, &rows[0], "graphs"), "34");
    assert_eq!(column(&h, &rows[0], "chi_f"), "94.1");
    assert_eq!(column(&h, &rows[0], "total"), "97.1");
    assert_eq!(column(&h, &rows[0], "violations"), "0");
    assert!(stdout(&run(&["verify", "--enumerate", "4"])).contains("90.9%"));
}

#[test]
fn verify_is_worker_count_invariant() {
    let one = run(&["verify", "--enumerate", "6", "--format", "json", "--workers", "1"]);
    let many = run(&["verify", "--enumerate", "6", "--format", "json", "--workers", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn verify_graph6_stream() {
    let o = run_stdin(&["verify", "--graph6", "-", "--format", "json"], "Bw\nCF\n@\nnot graph6\n\n");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["malformed"], 1);
    assert_eq!(v["lines"], 4);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[3]["n"].is_null());
    assert_eq!(rows[3]["graphs"], 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let path = temp_file("bad.g6", "??\n{{\n");
    assert_eq!(run(&["verify", "--graph6", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn solve_debug_problems() {
    let o = run(&["solve-debug", "petersen", "sdp2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("value 8.00000"));
    assert!(out.contains("oracle 8.00000"));

    let out = stdout(&run(&["solve-debug", "complete(3)", "theta-minus"]));
    assert!(out.contains("value 1.00000"));

    let out = stdout(&run(&["solve-debug", "petersen", "chif-lp"]));
    assert!(out.contains("value 5.00000"));
    assert!(out.contains("dual certificate: vertex weights sum 5.00000"));

    let out = stdout(&run(&["solve-debug", "petersen", "sdp4"]));
    assert!(out.contains("value 8.00000") && out.contains("oracle 8.00000"));

    let o = run(&["solve-debug", "petersen", "theta-plus", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!((v["trace"]["value"].as_f64().unwrap() - 4.0).abs() < 1e-4);
}

#[test]
fn solve_debug_non_convergence_exits_four() {
    let o = run(&["solve-debug", "petersen", "theta-minus", "--max-iterations", "5"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
    assert!(stdout(&o).contains("max_iterations"));
}
