//! End-to-end runs of the `qhbd` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const F13: &str = r#"
field = "13"
q = "2"
lambda = ["1"]
seeds = [["1", "4"]]

[multiplicities]
"1" = 1
"4" = 1
"10" = 1
"#;

fn write_config(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhbd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn qhbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhbd")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = qhbd(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), json)
}

#[test]
fn every_suite_passes_and_sections_keep_their_order() {
    let cfg = write_config("all.toml", F13);
    let suites =
        ["iso-d", "relations-v", "relations-w", "polrep", "basis", "fixed-point", "series", "q-conditions", "iso-b"];
    let mut args = vec!["--config", cfg.to_str().unwrap(), "verify"];
    args.extend(suites);
    let (code, json) = run_json(&args);
    assert_eq!(code, 0, "{json:#}");
    let names: Vec<&str> = json["sections"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, suites);
    assert_eq!(json["passed"], true);
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let cfg = write_config("det.toml", F13);
    let c = cfg.to_str().unwrap();
    let a = qhbd(&["--config", c, "--workers", "1", "verify", "polrep", "fixed-point", "iso-b"]);
    let b = qhbd(&["--config", c, "--workers", "4", "verify", "polrep", "fixed-point", "iso-b"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let g1 = qhbd(&["--config", c, "gdim", "--structure-constants"]);
    let g2 = qhbd(&["--config", c, "gdim", "--structure-constants"]);
    assert_eq!(g1.stdout, g2.stdout);
}

#[test]
fn config_hash_tracks_command_line_overrides() {
    let cfg = write_config("hash.toml", F13);
    let c = cfg.to_str().unwrap();
    let (_, a) = run_json(&["--config", c, "verify", "series"]);
    let (_, b) = run_json(&["--config", c, "--truncation", "9", "verify", "series"]);
    assert_ne!(a["config_hash"], b["config_hash"]);
    assert_eq!(b["config"]["options"]["truncation"], 9);
}

#[test]
fn exit_codes() {
    let missing_q = write_config("missing_q.toml", "field = \"13\"\nseeds = [[\"1\", \"4\"]]\n");
    assert_eq!(qhbd(&["--config", missing_q.to_str().unwrap(), "orbits"]).status.code(), Some(2));
    let unknown = write_config("unknown.toml", "field = \"13\"\nq = \"2\"\ncolour = \"red\"\n");
    assert_eq!(qhbd(&["--config", unknown.to_str().unwrap(), "orbits"]).status.code(), Some(2));
    let bad_p = write_config("bad_p.toml", "field = \"13\"\nq = \"2\"\np = \"3\"\n");
    assert_eq!(qhbd(&["--config", bad_p.to_str().unwrap(), "orbits"]).status.code(), Some(2));
    assert_eq!(qhbd(&["--config", "/nonexistent/qhbd.toml", "orbits"]).status.code(), Some(2));
    assert_eq!(qhbd(&["verify", "no-such-suite"]).status.code(), Some(2));
    let cfg = write_config("nosuite.toml", F13);
    assert_eq!(qhbd(&["--config", cfg.to_str().unwrap(), "verify"]).status.code(), Some(2));

    // Asymmetric multiplicities fail the fixed-point hypothesis; the report
    // is still written.
    let asym = write_config("asym.toml", &F13.replace("\"10\" = 1", ""));
    let (code, json) = run_json(&["--config", asym.to_str().unwrap(), "verify", "fixed-point"]);
    assert_eq!(code, 1);
    assert_eq!(json["passed"], false);
}

#[test]
fn asymmetric_iso_d_runs_the_reduction_checks() {
    let asym = write_config("asym_d.toml", &F13.replace("\"10\" = 1", ""));
    let (code, json) = run_json(&["--config", asym.to_str().unwrap(), "verify", "iso-d"]);
    assert_eq!(code, 0, "{json:#}");
    let names: Vec<&str> =
        json["sections"][0]["checks"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.len() > 10);
    assert!(names.iter().any(|n| n.contains("ideal")), "{names:?}");
}

#[test]
fn orbit_listing() {
    // 3 and its inverse 6 lie in different components over F17 with q = 2.
    let cfg = write_config("case_c.toml", "field = \"17\"\nq = \"2\"\nlambda = [\"3\"]\nseeds = [[\"3\", \"3\"]]\n");
    let (code, json) = run_json(&["--config", cfg.to_str().unwrap(), "orbits"]);
    assert_eq!(code, 0);
    let orbits = json["data"]["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0]["size"], 4);
    assert_eq!(orbits[0]["d_orbit_of_seed"].as_array().unwrap().len(), 2);
    assert_eq!(orbits[0]["d_orbit_complement"].as_array().unwrap().len(), 2);
    assert_eq!(json["data"]["lambda_cases"]["3"], "case_c");

    // 1 squares to one, so sign changes never leave the type D orbit.
    let cfg = write_config("sq1.toml", "field = \"13\"\nq = \"2\"\nseeds = [[\"1\", \"4\"]]\n");
    let (_, json) = run_json(&["--config", cfg.to_str().unwrap(), "orbits"]);
    assert_eq!(json["data"]["orbits"][0]["single_d_orbit"], true);

    let cfg = write_config("empty.toml", "field = \"13\"\nq = \"2\"\n");
    let (code, json) = run_json(&["--config", cfg.to_str().unwrap(), "orbits"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["orbits"].as_array().unwrap().len(), 0);
}

fn graded(path: &str) -> Value {
    let (code, json) = run_json(&["--config", path, "gdim"]);
    assert_eq!(code, 0, "{json:#}");
    json["data"]["graded"].clone()
}

#[test]
fn gdim_tables() {
    let zero = write_config("zero.toml", "field = \"13\"\nq = \"2\"\nseeds = [[\"1\", \"4\"]]\n[multiplicities]\n\"2\" = 1\n");
    let (_, json) = run_json(&["--config", zero.to_str().unwrap(), "gdim"]);
    assert_eq!(json["data"]["totals"]["v"], 0);

    let full = write_config("full.toml", F13);
    let rows = graded(full.to_str().unwrap());
    for r in rows.as_array().unwrap() {
        assert_eq!(r["v_fixed"], r["w"]);
        assert_eq!(r["v"].as_u64().unwrap(), r["v_fixed"].as_u64().unwrap() + r["v_minus"].as_u64().unwrap());
    }

    // Both choices have q^2 of order 3; residues correspond under 4 <-> 3 and 2 <-> 9.
    let a = write_config("e3a.toml", "field = \"7\"\nq = \"2\"\nseeds = [[\"1\", \"4\"]]\n[multiplicities]\n\"1\" = 1\n\"4\" = 1\n\"2\" = 1\n");
    let b = write_config("e3b.toml", "field = \"13\"\nq = \"4\"\nseeds = [[\"1\", \"3\"]]\n[multiplicities]\n\"1\" = 1\n\"3\" = 1\n\"9\" = 1\n");
    assert_eq!(graded(a.to_str().unwrap()), graded(b.to_str().unwrap()));
}

#[test]
fn series_command_prints_g() {
    // g is the root of y^2 - (2 + z) y + z vanishing at 0:
    // g = (2 + z - sqrt(4 + z^2)) / 2.
    let (code, json) = run_json(&["series", "--truncation", "8"]);
    assert_eq!(code, 0);
    let g: Vec<&str> = json["data"]["g"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(g, ["0", "1/2", "-1/8", "0", "1/128", "0", "-1/1024", "0", "5/32768"]);
    assert_eq!(json["sections"][0]["passed"], true);
}

#[test]
fn text_format_and_out_file() {
    let cfg = write_config("text.toml", &format!("format = \"text\"\n{F13}"));
    let out = cfg.with_extension("txt");
    let status = qhbd(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "verify", "series"]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("[series] PASS"));
    assert!(text.contains("elapsed"));
}
