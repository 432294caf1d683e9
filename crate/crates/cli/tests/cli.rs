use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

/// Runs the binary with `--out <dir>` and returns (exit code, stdout, stderr).
fn geon(out: &Path, args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_geon")).arg("--out").arg(out).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

fn cfg(name: &str) -> String {
    example(name).to_str().unwrap().to_owned()
}

#[test]
fn lattice_checks_set_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let (code, out, _) = geon(d.path(), &["lattice", "--config", &cfg("mo2.toml"), "--checks", "orthomodular"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("orthomodular: PASS"));

    let (code, _, _) = geon(d.path(), &["lattice", "--config", &cfg("mo2.toml"), "--checks", "distributive"]);
    assert_eq!(code, 1);
    let report = read(d.path(), "report.txt");
    assert!(report.contains("(x:+, y:+, y:-) a&(b|c)=x:+ (a&b)|(a&c)=0"), "{report}");
    let js: serde_json::Value = serde_json::from_str(&read(d.path(), "violations.json")).unwrap();
    assert_eq!(js["distributive"]["violations"].as_array().unwrap().len(), 24);

    let (code, out, _) = geon(d.path(), &["lattice", "--config", &cfg("boolean.toml")]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("PASS").count(), 4);
}

#[test]
fn lattice_input_errors() {
    let d = tempfile::tempdir().unwrap();
    let bad = d.path().join("bad.toml");
    fs::write(&bad, "elements = [\"0\", \"1\"]\nbottom = \"0\"\ntop = \"1\"\ncovers = [[\"0\", \"2\"]]\ncomplement = []\n").unwrap();
    let (code, _, err) = geon(d.path(), &["lattice", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4") && err.contains("`2`"), "{err}");

    let (code, _, _) = geon(d.path(), &["lattice", "--config", &cfg("mo2.toml"), "--checks", "modular"]);
    assert_eq!(code, 2);
    let (code, _, _) = geon(d.path(), &["lattice", "--config", "/nonexistent.toml"]);
    assert_eq!(code, 2);
}

#[test]
fn geon_demo_outputs() {
    let d = tempfile::tempdir().unwrap();
    let (code, out, _) = geon(d.path(), &["geon", "--config", &cfg("xy.toml")]);
    assert_eq!(code, 0);
    assert!(out.contains("clause ii: PASS"));
    for f in ["logic.toml", "logic.dot", "report.txt", "manifest.json"] {
        assert!(d.path().join(f).exists(), "{f}");
    }

    let (code, _, _) = geon(d.path(), &["geon", "--config", &cfg("single.toml")]);
    assert_eq!(code, 1);
    let report = read(d.path(), "report.txt");
    assert!(report.contains("clause i: FAIL") && report.contains("classical"));
    assert!(report.contains("clause iii: PASS"));

    let (code, _, _) = geon(d.path(), &["geon", "--config", &cfg("xyz.toml")]);
    assert_eq!(code, 0);
    let dot = read(d.path(), "logic.dot");
    let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    assert_eq!(nodes, 8, "{dot}");
}

#[test]
fn hilbert_certificates() {
    let d = tempfile::tempdir().unwrap();
    let (code, _, _) = geon(d.path(), &["hilbert", "--config", &cfg("xy.toml")]);
    assert_eq!(code, 0);
    let cert = read(d.path(), "certificate.txt");
    assert!(cert.contains("isomorphism: found"));
    assert_eq!(cert.matches(" -> ").count(), 6);

    let (code, _, _) = geon(d.path(), &["hilbert", "--config", &cfg("mismatch.toml")]);
    assert_eq!(code, 1);
    assert!(read(d.path(), "certificate.txt").contains("isomorphism: absent"));

    let (code, _, _) = geon(d.path(), &["hilbert", "--config", &cfg("single.toml")]);
    assert_eq!(code, 0);
    assert_eq!(read(d.path(), "certificate.txt").matches(" -> ").count(), 4);

    let no_axis = d.path().join("no_axis.toml");
    fs::write(&no_axis, "[[contexts]]\nid = \"x\"\noutcomes = [\"+\", \"-\"]\n").unwrap();
    let (code, _, err) = geon(d.path(), &["hilbert", "--config", no_axis.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("no axis"), "{err}");
}

#[test]
fn billiard_far_mouths() {
    let d = tempfile::tempdir().unwrap();
    let (code, out, _) = geon(d.path(), &["billiard", "--config", &cfg("billiard_far.toml")]);
    assert_eq!(code, 0);
    assert!(out.contains("solutions: 1 (1 trivial, 0 self-interacting)"), "{out}");
    let csv = read(d.path(), "solutions.csv");
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,trivial,,,,,"));
}

#[test]
fn billiard_option_conflicts() {
    let d = tempfile::tempdir().unwrap();
    let (code, _, err) = geon(d.path(), &["billiard", "--config", &cfg("billiard_far.toml"), "--tolerance", "1.0"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = geon(d.path(), &["billiard", "--config", &cfg("billiard_far.toml"), "--grid", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = geon(d.path(), &["billiard", "--config", &cfg("xy.toml")]);
    assert_eq!(code, 2);
}

#[test]
fn out_dir_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_geon"))
        .env("GEON_OUT_DIR", d.path())
        .args(["lattice", "--config", &cfg("boolean.toml")])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(d.path().join("report.txt").exists());
}

#[test]
fn replay_rejects_changed_inputs() {
    let d = tempfile::tempdir().unwrap();
    let conf = d.path().join("xy.toml");
    fs::copy(example("xy.toml"), &conf).unwrap();
    let run = d.path().join("run");
    let (code, _, _) = geon(&run, &["geon", "--config", conf.to_str().unwrap()]);
    assert_eq!(code, 0);
    let manifest = run.join("manifest.json");

    let again = d.path().join("again");
    let (code, _, _) = geon(&again, &["replay", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(read(&run, "report.txt"), read(&again, "report.txt"));

    fs::write(&conf, fs::read_to_string(&conf).unwrap() + "\n# edited\n").unwrap();
    let (code, _, err) = geon(&again, &["replay", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("changed"), "{err}");
}
