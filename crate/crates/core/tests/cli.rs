use std::fs;
use std::process::{Command, Output};

use torsionlab::cli::RunReport;

fn torsionlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsionlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn torsion_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("run.json");
    let csv = dir.path().join("run.csv");
    let o = torsionlab(&[
        "torsion", "--f", "z - 0.5", "--g", "z - 0.3", "--nmax", "64",
        "--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let report: RunReport = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.inputs.f.class, "rational");
    let methods: Vec<&str> = report.results.iter().map(|r| r.method.as_str()).collect();
    assert_eq!(methods, ["det", "tame", "integral", "factorized"]);
    for r in &report.results {
        assert!((r.value.re + 1.0).abs() < 1e-6 && r.value.im.abs() < 1e-6, "{}", r.method);
    }
    assert!(report.disagreements.agree());

    let mut rd = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), ["method", "re", "im", "err_estimate", "dims", "exact", "wall_ms", "notes"]);
    assert_eq!(rd.records().count(), 4);

    // Merging two reports gives one row per (method, dim).
    let merged = dir.path().join("merged.csv");
    let o = torsionlab(&["report", "--from", json.to_str().unwrap(), json.to_str().unwrap(), "--out", merged.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&merged).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "method,dim,run:err_estimate,run:disagreement,run#1:err_estimate,run#1:disagreement");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&torsionlab(&["torsion", "--f", "z +", "--g", "z"])), 2);
    assert_eq!(code(&torsionlab(&["torsion", "--f", "B(1)", "--g", "z"])), 2);
    assert_eq!(code(&torsionlab(&["frobnicate"])), 2);
    assert_eq!(code(&torsionlab(&["report"])), 2);
    assert_eq!(code(&torsionlab(&["report", "--from", "/nonexistent/run.json"])), 2);
    assert_eq!(code(&torsionlab(&["--help"])), 0);
    // Zero on the unit circle: parses, but no method applies.
    assert_eq!(code(&torsionlab(&["torsion", "--f", "z - 1", "--g", "z"])), 3);
    assert_eq!(code(&torsionlab(&["torsion", "--f", "z", "--g", "zbar", "--method", "tame", "--nmax", "16"])), 0);
    // Sections of size 8 leave the det path about 1e-3 away from the others.
    assert_eq!(code(&torsionlab(&["torsion", "--f", "exp(z)", "--g", "(2+z)*exp(0.9*zbar^3)", "--nmax", "8"])), 1);
}

#[test]
fn verify_and_bounds() {
    let o = torsionlab(&["verify", "--suite", "golden"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(code(&torsionlab(&["verify", "--suite", "nope"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bounds.csv");
    let o = torsionlab(&["bounds", "--phi", "z + zbar", "--func", "poly:0,0,1", "--nmax", "32", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&csv).unwrap();
    let h = rd.headers().unwrap().clone();
    assert_eq!(&h.iter().take(6).collect::<Vec<_>>(), &["dim", "measured_2p", "bound_2p", "measured_p", "bound_p", "pass"]);
    let last = rd.records().last().unwrap().unwrap();
    assert_eq!(&last[0], "32");
    assert_eq!(last[3].parse::<f64>().unwrap(), 1.0);
    assert_eq!(&last[5], "true");
}

#[test]
fn thread_count_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_torsionlab"))
            .args(["torsion", "--f", "2 + z", "--g", "zbar", "--nmax", "32"])
            .env("TORSIONLAB_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("many")), 2);
}
