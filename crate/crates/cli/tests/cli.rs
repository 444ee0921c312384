use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_srs-atlas");
const SQUARE: &str = "115/128,55/128; 59/64,55/128; 59/64,7/16; 115/128,7/16";

fn atlas(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn decide_reports_cycles() {
    let out = atlas(&["decide", "--r", "-1/3,1/3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("NonFinite"));

    let out = atlas(&["--json", "decide", "--r", "1/2,1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "Finite");
}

#[test]
fn exit_codes() {
    assert_eq!(atlas(&["decide", "--r", "1/0,1"]).status.code(), Some(2));
    assert_eq!(atlas(&["decide", "--r", "2,1/2"]).status.code(), Some(1));
    assert_eq!(atlas(&["family", "--id", "C0", "--n", "3"]).status.code(), Some(2));
    assert_eq!(atlas(&["family", "--id", "C9", "--n", "1"]).status.code(), Some(2));
    assert_eq!(atlas(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(atlas(&["family", "--id", "C2", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn config_file_is_read_and_checked() {
    let good = scratch("good.conf");
    std::fs::write(&good, "# caps\nsample_count = 20\n").unwrap();
    let out = atlas(&["--config", good.to_str().unwrap(), "decide", "--r", "1/2,1/2"]);
    assert_eq!(out.status.code(), Some(0));

    let bad = scratch("bad.conf");
    std::fs::write(&bad, "no_such_key = 3\n").unwrap();
    let out = atlas(&["--config", bad.to_str().unwrap(), "decide", "--r", "1/2,1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_output_is_deterministic() {
    let a = scratch("par.jsonl");
    let b = scratch("seq.jsonl");
    let out = atlas(&["region", "--hull", SQUARE, "--out", a.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = atlas(&["--sequential", "region", "--hull", SQUARE, "--out", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    assert!(String::from_utf8_lossy(&text).lines().count() >= 2);
}

#[test]
fn render_round_trip() {
    let jsonl = scratch("render.jsonl");
    let out = atlas(&["region", "--hull", SQUARE, "--out", jsonl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg_a = scratch("a.svg");
    let svg_b = scratch("b.svg");
    for svg in [&svg_a, &svg_b] {
        let out = atlas(&[
            "render",
            "--cutouts",
            jsonl.to_str().unwrap(),
            "--out",
            svg.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let svg = std::fs::read_to_string(&svg_a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&svg_b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polygon"));

    let out = atlas(&[
        "render",
        "--cutouts",
        jsonl.to_str().unwrap(),
        "--window",
        "1/2,1/2,1/2,1",
        "--out",
        svg_a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_sweep_settles_tiles() {
    let out = atlas(&[
        "--json",
        "region",
        "--grid",
        "2",
        "--window",
        "115/128,55/128,59/64,7/16",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let tiles = v["tiles"].as_array().unwrap();
    assert_eq!(tiles.len(), 4);
    assert!(tiles.iter().all(|t| t["status"] == "settled"));
}
