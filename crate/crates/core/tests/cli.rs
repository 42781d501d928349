use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lossgain"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lossgain-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &str, cfg: &Path, out: &Path, jobs: usize) -> i32 {
    let status = bin()
        .args([cmd, "--config"])
        .arg(cfg)
        .arg("--out")
        .arg(out)
        .args(["--jobs", &jobs.to_string()])
        .env_remove("LOSSGAIN_TOL")
        .status()
        .unwrap();
    status.code().unwrap()
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("scenario.toml");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn outputs_are_byte_identical_across_runs_and_job_counts() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for (cmd, cfg, files) in [
        ("simulate", "landau.toml", &["trajectory.csv", "simulate.json"][..]),
        ("spectrum", "landau.toml", &["spectrum.csv", "spectrum.json"][..]),
        ("hall", "hall.toml", &["hall.csv", "hall.json"][..]),
        ("classify", "tridiagonal.toml", &["classify.json"][..]),
    ] {
        assert_eq!(run(cmd, &config(cfg), &a, 1), 0, "{cmd}");
        assert_eq!(run(cmd, &config(cfg), &b, 4), 0, "{cmd}");
        for f in files {
            let (x, y) = (std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
            assert!(!x.is_empty() && x == y, "{f} differs");
        }
    }
}

#[test]
fn spectrum_csv_layout() {
    let out = scratch("csv");
    assert_eq!(run("spectrum", &config("landau.toml"), &out, 2), 0);
    let text = std::fs::read_to_string(out.join("spectrum.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma,n,energy,analytic,degeneracy"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert!(((r[2] - r[3]) / r[3]).abs() < 1e-5);
    }
}

#[test]
fn verify_passes_on_sample_configs() {
    for cfg in ["pairwise.toml", "region_ii.toml", "uniform.toml", "hall.toml"] {
        let out = scratch(&format!("verify-{cfg}"));
        assert_eq!(run("verify", &config(cfg), &out, 2), 0, "{cfg}");
        let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("verify.json")).unwrap()).unwrap();
        assert_eq!(report["passed"], serde_json::Value::Bool(true));
    }
}

#[test]
fn verify_runs_the_default_scenario() {
    let out = scratch("default");
    let status = bin().arg("verify").arg("--out").arg(&out).env_remove("LOSSGAIN_TOL").status().unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("verify.json")).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().len() > 50);
}

#[test]
fn exit_codes() {
    let out = scratch("exit");
    assert_eq!(run("classify", &config("boundary.toml"), &out, 1), 2);
    assert_eq!(run("hall", &config("region_ii.toml"), &out, 1), 2);
    assert_eq!(run("spectrum", &config("pairwise.toml"), &out, 1), 3);
    assert_eq!(run("classify", &out.join("missing.toml"), &out, 1), 3);

    let bad = write_config(&out, "[system]\nrepresentation = \"landau\"\nBee = 2.0\n");
    let o = bin().arg("classify").arg("--config").arg(&bad).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&o.stderr);
    assert!(msg.contains("Bee") && msg.contains("line 3"), "{msg}");

    // more levels than a small basis can resolve
    let short = write_config(&out, "[system]\nrepresentation = \"landau\"\n[spectrum]\nn_max = 8\nlevels = 8\n[ground]\nstates = []\n");
    assert_eq!(run("verify", &short, &out, 1), 1);
}

#[test]
fn tolerance_from_environment() {
    let out = scratch("tol");
    let status = bin()
        .args(["classify", "--config"])
        .arg(config("landau.toml"))
        .arg("--out")
        .arg(&out)
        .env("LOSSGAIN_TOL", "nope")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}
