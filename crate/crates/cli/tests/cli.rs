//! End-to-end tests of the command-line binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_secfan"))
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("secfan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const EX1_V: &str = "3 6\n1 0 0 0 -1 1\n0 1 0 0 -1 1\n0 0 1 -1 -1 1\n";
const EX1_Q: &str = "3 6\n1 1 1 0 1 0\n0 0 1 1 0 0\n0 0 0 0 1 1\n";
const CEX4_Q: &str =
    "4 8\n1 0 0 1 0 1 1 0\n0 1 1 0 0 1 1 0\n0 0 1 1 1 2 1 0\n0 0 0 0 0 1 1 1\n";

#[test]
fn gale_duals_round_trip_through_the_text_format() {
    let v = write_temp("v.txt", EX1_V);
    let out = bin().args(["gale"]).arg(&v).args(["--from", "f"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), EX1_Q);

    let q = write_temp("q.txt", EX1_Q);
    let out = bin().args(["gale"]).arg(&q).args(["--from", "w"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), EX1_V);
}

#[test]
fn reproduce_targets_pass() {
    for target in ["ex1", "ex2", "cex4"] {
        let out = bin().args(["reproduce", target]).output().unwrap();
        assert!(out.status.success(), "reproduce {target} failed: {}", stdout(&out));
        assert!(stdout(&out).contains(&format!("reproduce {target}: PASS")));
    }
    for s in ["1", "2", "3"] {
        let out = bin().args(["reproduce", "qs", "--s", s]).output().unwrap();
        assert!(out.status.success(), "reproduce qs --s {s} failed");
    }
}

#[test]
fn reproduce_cex4_prints_the_summary() {
    let out = bin().args(["reproduce", "cex4"]).output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("10 chambers / 8 smooth"));
    assert!(text.contains("interior nef cone"));
}

#[test]
fn chambers_lists_json() {
    let q = write_temp("q2.txt", EX1_Q);
    let out = bin().args(["chambers"]).arg(&q).output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 2);
    assert_eq!(parsed[0]["smooth"], serde_json::Value::Bool(true));
}

#[test]
fn chambers_all_region_extends_the_movable_one() {
    let q = write_temp("qall.txt", EX1_Q);
    let movable = bin().args(["chambers"]).arg(&q).output().unwrap();
    let all = bin()
        .args(["chambers"])
        .arg(&q)
        .args(["--region", "all"])
        .output()
        .unwrap();
    assert!(all.status.success());
    let m: serde_json::Value = serde_json::from_str(&stdout(&movable)).unwrap();
    let a: serde_json::Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert!(a.as_array().unwrap().len() > m.as_array().unwrap().len());
    assert!(a[0]["smooth"].is_null());
}

#[test]
fn fan_command_emits_one_based_cones() {
    let q = write_temp("qc.txt", CEX4_Q);
    let out = bin()
        .args(["fan"])
        .arg(&q)
        .args(["--chamber", "1,1,2,1;1,2,2,1;2,1,2,1;2,2,3,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cones = parsed["maximal_cones"].as_array().unwrap();
    assert_eq!(cones.len(), 18);
    assert_eq!(parsed["verify"]["smooth"], serde_json::Value::Bool(true));
}

#[test]
fn invalid_matrix_exits_one() {
    let bad = write_temp("bad.txt", "1 3\n1 1 0\n");
    let out = bin().args(["validate-w"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("clause (d)"), "stderr: {err}");
}

#[test]
fn unknown_chamber_exits_one() {
    let q = write_temp("q3.txt", EX1_Q);
    let out = bin()
        .args(["classify"])
        .arg(&q)
        .args(["--chamber", "g9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_rejected() {
    let out = bin().args(["chambers", "--frobnicate"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn hunt_is_deterministic_across_runs_and_thread_counts() {
    let dir = std::env::temp_dir().join(format!("secfan-hunt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut files = Vec::new();
    for (i, threads) in ["1", "2", "4"].iter().enumerate() {
        let out_path = dir.join(format!("catalog{i}.jsonl"));
        let _ = std::fs::remove_file(&out_path);
        let out = bin()
            .env("SECFAN_THREADS", threads)
            .args(["hunt", "--n", "2", "--r", "2", "--seed", "31", "--budget", "64"])
            .args(["--entry-bound", "2", "--out"])
            .arg(&out_path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        files.push(std::fs::read(&out_path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[1], files[2]);
}

#[test]
fn hunt_injection_reports_the_bundled_example() {
    let q = write_temp("qinj.txt", CEX4_Q);
    let dir = std::env::temp_dir().join(format!("secfan-inject-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("inject.jsonl");
    let _ = std::fs::remove_file(&out_path);
    let out = bin()
        .args(["hunt", "--n", "4", "--r", "4", "--out"])
        .arg(&out_path)
        .arg("--inject")
        .arg(&q)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let line: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(line["chamber_id"], "1,1,2,1;1,2,2,1;2,1,2,1;2,2,3,1");
    assert_eq!(
        line["report"]["case_label"],
        "counterexample_interior_nef"
    );
}

#[test]
fn hunt_resume_continues_from_the_checkpoint() {
    let dir = std::env::temp_dir().join(format!("secfan-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let whole = dir.join("whole.jsonl");
    let split = dir.join("split.jsonl");
    for p in [&whole, &split] {
        let _ = std::fs::remove_file(p);
        let _ = std::fs::remove_file(p.with_extension("checkpoint"));
    }
    let run = |out_path: &PathBuf, budget: &str, resume: bool| {
        let mut cmd = bin();
        cmd.args(["hunt", "--n", "2", "--r", "2", "--seed", "8", "--budget", budget])
            .args(["--out"])
            .arg(out_path);
        if resume {
            cmd.arg("--resume");
        }
        assert!(cmd.output().unwrap().status.success());
    };
    run(&whole, "100", false);
    run(&split, "50", false);
    run(&split, "50", true);
    assert_eq!(
        std::fs::read(&whole).unwrap(),
        std::fs::read(&split).unwrap()
    );
}

#[test]
fn plot_section_svg_for_rank3() {
    let q = write_temp("q4.txt", EX1_Q);
    let out = bin()
        .args(["plot-section"])
        .arg(&q)
        .args(["--format", "svg"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("g2"));
}

#[test]
fn plot_section_json_for_rank4_has_three_coordinates() {
    let q = write_temp("q5.txt", CEX4_Q);
    let out = bin().args(["plot-section"]).arg(&q).output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["rank"], 4);
    let first = &parsed["chambers"][0]["points"][0]["coords"];
    assert_eq!(first.as_array().unwrap().len(), 3);
    // svg is refused for rank 4
    let out = bin()
        .args(["plot-section"])
        .arg(&q)
        .args(["--format", "svg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn primitive_collections_json() {
    let q = write_temp("q6.txt", CEX4_Q);
    let out = bin()
        .args(["primitive"])
        .arg(&q)
        .args(["--chamber", "1,1,2,1;1,2,2,1;2,1,2,1;2,2,3,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pcs = parsed.as_array().unwrap();
    assert_eq!(pcs.len(), 10);
    let nef: Vec<_> = pcs.iter().filter(|p| p["nef"] == true).collect();
    assert_eq!(nef.len(), 1);
    assert_eq!(nef[0]["indices"], serde_json::json!([6, 7, 8]));
}

#[test]
fn walls_between_the_reference_route_endpoints() {
    let q = write_temp("q7.txt", CEX4_Q);
    let out = bin()
        .args(["walls"])
        .arg(&q)
        .args(["--from", "0,1,1,0;1,0,1,0;1,1,1,0;2,2,3,1"])
        .args(["--to", "1,1,2,1;1,2,2,1;2,1,2,1;2,2,3,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["length"], 3);
}
