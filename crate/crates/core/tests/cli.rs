use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn reclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reclab")).args(args).env_remove("RECLAB_THREADS").output().unwrap()
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run_to(dir: &Path, config: &str, extra: &[&str]) -> (i32, PathBuf) {
    let out = dir.join(config.replace(".toml", ".json"));
    let cfg = configs().join(config);
    let mut args = vec!["run", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = reclab(&args);
    (o.status.code().unwrap(), out)
}

fn edit(path: &Path, f: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    let out = path.with_extension("edited.json");
    std::fs::write(&out, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    out
}

#[test]
fn every_sample_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(configs()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".toml") {
            let (code, out) = run_to(dir.path(), &name, &[]);
            assert_eq!(code, 0, "{name}");
            let v = reclab(&["verify", out.to_str().unwrap()]);
            assert_eq!(v.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&v.stderr));
        }
    }
}

#[test]
fn hashes_are_stable_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("batch.toml");
    let mut hashes = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("b{threads}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_reclab"))
            .args(["run", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()])
            .env("RECLAB_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        hashes.push(v["canonical_sha256"].as_str().unwrap().to_string());
    }
    assert_eq!(hashes[0], hashes[1]);
}

#[test]
fn edited_sum_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = run_to(dir.path(), "rp_golden.toml", &[]);
    let bad = edit(&out, |v| {
        let sums = &mut v["experiments"][0]["outcome"]["search"]["witness"]["verified_sums"];
        sums[2] = Value::from(sums[2].as_i64().unwrap() + 1);
    });
    let o = reclab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum 9"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn shrunken_ball_fails_membership() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = run_to(dir.path(), "rp_golden.toml", &[]);
    let bad = edit(&out, |v| v["experiments"][0]["config"]["eps"] = Value::from("1/100"));
    let o = reclab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not inside the ball"));
}

#[test]
fn edited_payload_breaks_the_hash() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = run_to(dir.path(), "gen_set.toml", &[]);
    let bad = edit(&out, |v| v["experiments"][0]["outcome"]["syndetic_gap"] = Value::from(1));
    let o = reclab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hash"));
    // wall times are outside the hash
    let timed = edit(&out, |v| v["experiments"][0]["wall_time_ms"] = Value::from(123456));
    assert_eq!(reclab(&["verify", timed.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn require_witness_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_to(dir.path(), "rp_separated.toml", &["--require-witness"]).0, 1);
    assert_eq!(run_to(dir.path(), "rp_separated.toml", &[]).0, 0);
    assert_eq!(run_to(dir.path(), "rp_golden.toml", &["--require-witness"]).0, 0);
    assert_eq!(run_to(dir.path(), "ramsey_sg2.toml", &["--require-witness"]).0, 1);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let cases = [
        write("missing.toml", "kind = \"rp-witness\"\n"),
        write("float.toml", "kind = \"cube\"\nsystem = { type = \"rotation\", alpha = \"0.25\" }\nx = 0\nd = 1\nn = [1]\n"),
        write("kind.toml", "kind = \"nonsense\"\n"),
        write("slow.toml", "kind = \"ramsey-sg2\"\np = [1, 2, 4]\nwindow = [1, 10]\n"),
    ];
    for c in cases.iter().map(|p| p.to_str().unwrap()).chain(["/nonexistent/config.toml"]) {
        assert_eq!(reclab(&["run", c]).status.code(), Some(2), "{c}");
    }
}

#[test]
fn precision_exhaustion_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("deep.toml");
    std::fs::write(
        &cfg,
        r#"
kind = "return-set"
system = { type = "weyl-affine", d = 3, alpha = "golden" }
point = ["0", "0", "0"]
neighborhood = { type = "ball", center = ["0", "0", "0"], eps = "1/10" }
window = [9000000000000, 9000000000100]
"#,
    )
    .unwrap();
    let out = dir.path().join("deep.json");
    let run = |strict: bool| {
        let mut args = vec!["run", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()];
        if strict {
            args.push("--strict-precision");
        }
        reclab(&args).status.code()
    };
    assert_eq!(run(false), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["experiments"][0]["outcome"]["kind"], "precision-exhausted");
    assert_eq!(run(true), Some(1));
}

#[test]
fn gen_writes_csv() {
    let o = reclab(&["gen", "--kind", "sg", "--p", "1,2,4", "--d", "2", "--window", "0:100"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), vec!["n"]);
    let values: Vec<i64> = rdr.records().map(|r| r.unwrap()[0].parse().unwrap()).collect();
    assert_eq!(values, vec![1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(reclab(&["gen", "--kind", "sg", "--p", "1,2", "--window", "0:10"]).status.code(), Some(2));
}

#[test]
fn run_writes_requested_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("returns.csv");
    let cfg = dir.path().join("rs.toml");
    std::fs::write(
        &cfg,
        format!(
            "kind = \"return-set\"\nsystem = {{ type = \"rotation\", alpha = \"2/5\" }}\npoint = 0\nneighborhood = {{ type = \"ball\", center = 0, eps = \"3/20\" }}\nwindow = [0, 20]\ncsv = {:?}\n",
            csv_path.to_str().unwrap()
        ),
    )
    .unwrap();
    assert!(reclab(&["run", cfg.to_str().unwrap(), "-o", dir.path().join("r.json").to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&csv_path).unwrap(), "n\n0\n5\n10\n15\n20\n");
}
