use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BASELINE: &str = r#"{"I": 10, "Rgf": 0, "Cg": 1, "Cgf": 1, "m": 0.2, "e": 0.25,
 "Cm": 1.5, "Caf": 1, "Cbf": 1, "u": 0.85, "v": 0.8, "w": 0.8}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scf-evo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn simulate_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASELINE);
    let out = dir.path().join("out");
    let o = run(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--svg",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("trajectory_s0.csv")).unwrap();
    assert!(csv.starts_with("t,x,y,z\n0,0.5,0.5,0.5\n"));
    assert!(csv.lines().last().unwrap().starts_with("20,"));
    let svg = fs::read_to_string(out.join("trajectory_s0.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn simulate_lattice_writes_28_files() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASELINE.replace("}", r#", "horizon": 1}"#);
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("lat");
    let o = run(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--lattice",
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_dir(&out).unwrap().count(), 28);
}

#[test]
fn equilibria_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASELINE);
    let out = dir.path().join("eq");
    let o = run(&[
        "equilibria",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(out.join("equilibria.csv")).unwrap();
    assert!(text.contains("\nE3,0,1,0,true,-1,0,-2.5,0,-0.6,0,stable\n"));
    assert!(text.contains("# scenario2,E3,true,-2.5,-0.6\n"));
}

#[test]
fn classify_prints_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), BASELINE);
    let o = run(&["classify", "--config", &cfg]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("E3 (0, 1, 0) valid=true eigenvalues=[-1, -2.5, -0.6] stable"));
    assert!(text.contains("scenario2 E3: true"));
    assert!(text.contains("evolutionarily stable: E3"));
}

#[test]
fn named_and_custom_sweeps() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASELINE.replace("}", r#", "horizon": 2}"#);
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("sw");
    let out_s = out.to_str().unwrap();
    let o = run(&["sweep", "--config", &cfg, "--out", out_s, "--name", "Cg"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sweep = out.join("sweep_Cg");
    assert!(sweep.join("cell_v2_s27.csv").exists());
    assert!(sweep.join("summary.csv").exists());
    let x = fs::read_to_string(sweep.join("x.svg")).unwrap();
    for label in ["Cg=1.0", "Cg=1.5", "Cg=2.0"] {
        assert!(x.contains(label));
    }

    let o = run(&[
        "sweep", "--config", &cfg, "--out", out_s, "--param", "w", "--values", "0.5,0.9",
    ]);
    assert!(o.status.success());
    assert!(out.join("sweep_w").join("cell_v1_s0.csv").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write_config(dir.path(), &BASELINE.replace("}", r#", "q": 1}"#));
    let o = run(&["classify", "--config", &bad_key]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"q\""));

    let bad_range = write_config(dir.path(), &BASELINE.replace("\"m\": 0.2", "\"m\": 1.5"));
    let o = run(&["equilibria", "--config", &bad_range]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m "));

    let ok = write_config(dir.path(), BASELINE);
    let o = run(&["sweep", "--config", &ok, "--name", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["sweep", "--config", &ok, "--param", "Cg", "--values", "2,1"]);
    assert_eq!(o.status.code(), Some(1));

    let missing = dir.path().join("missing.json");
    let o = run(&["classify", "--config", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
