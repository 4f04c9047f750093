use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use cofree_cli::config;
use cofree_hopf::braid::check_yang_baxter;
use tempfile::TempDir;

const HOFFMAN: &str = "\
[group]
free = 0

[basis]
x1 =
x2 =
x3 =

[mult]
x1 x1 -> x2
x1 x2 -> x3
x2 x1 -> x3
";

const CORRUPTED: &str = "\
[group]
free = 0

[basis]
a =
b =

[braiding]
a a -> a@a + a@b
";

fn cofree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cofree")).args(args).output().unwrap()
}

fn cofree_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cofree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn clifford2(dir: &TempDir) -> String {
    let out = cofree(&["preset", "clifford", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    write(dir.path(), "clifford.ini", &stdout(&out)).display().to_string()
}

#[test]
fn clifford_star_golden() {
    let dir = TempDir::new().unwrap();
    let cfg = clifford2(&dir);
    let out = cofree(&["--config", &cfg, "star", "v1", "v2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "v1.K{1}[]v2.K{0} − v2.K{1}[]v1.K{0} + xi12.K{0}\n");
}

#[test]
fn preset_piped_into_star() {
    let preset = stdout(&cofree(&["preset", "clifford", "--n", "2"]));
    let out = cofree_stdin(&["--config", "-", "star", "v1", "v2"], &preset);
    assert_eq!(stdout(&out), "v1.K{1}[]v2.K{0} − v2.K{1}[]v1.K{0} + xi12.K{0}\n");
}

#[test]
fn hoffman_quasi_shuffle_golden() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "h.ini", HOFFMAN);
    let out = cofree(&["--config", cfg.to_str().unwrap(), "qsh", "x1", "x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 x1@x1 + x2\n");
    let out = cofree(&["--config", cfg.to_str().unwrap(), "check", "bialg"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "check bialg: pass\n"));
}

#[test]
fn corrupted_braiding_fails_yang_baxter() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "bad.ini", CORRUPTED);
    let out = cofree(&["--config", cfg.to_str().unwrap(), "check", "yb"]);
    assert_eq!(out.status.code(), Some(1));
    let model = config::load(CORRUPTED).unwrap();
    let cx = check_yang_baxter(&model.braiding).counterexample().unwrap().clone();
    assert_eq!(cx.witness, "a@a@a");
    assert_eq!(stdout(&out), format!("check yb: FAIL\n{cx}\n"));
}

#[test]
fn exit_code_two_on_bad_input() {
    let dir = TempDir::new().unwrap();
    let cfg = clifford2(&dir);
    let out = cofree(&["--config", &cfg, "star", "v1", "v9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown letter 'v9'"));
    let out = cofree(&["--config", &cfg, "qsh", "v1 +", "v2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column 5"), "{}", stderr(&out));
    let out = cofree(&["star", "v1", "v2"]);
    assert_eq!(out.status.code(), Some(2));
    let nogroup = write(dir.path(), "nogroup.ini", "[basis]\nx =\n");
    let out = cofree(&["--config", nogroup.to_str().unwrap(), "check", "yb"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing [group] section"));
    let out = cofree(&["--config", &cfg, "phi", "v1.K{1}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not right coinvariant"), "{}", stderr(&out));
    let out = cofree(&["--config", &cfg, "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn torsion_normalization_is_a_note() {
    let out = cofree_stdin(
        &["--config", "-", "check", "yd"],
        "[group]\ntorsion = 2\n[basis]\nv = 3\n[action]\nT1 = -1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).starts_with("note: line 4: exponent 3 of T1 normalized to 1"));
}

#[test]
fn json_mirrors_the_term_list() {
    let dir = TempDir::new().unwrap();
    let cfg = clifford2(&dir);
    let out = cofree(&["--config", &cfg, "--format", "json", "smash-star", "v1#eps", "v2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"], "−v1@v2#K{1} + v2@v1#K{1} − xi12#K{1}");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[0]["negative"], true);
    assert_eq!(terms[2]["basis"], "xi12#K{1}");
    let out = cofree(&["--config", &cfg, "--format", "json", "check", "yb"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["counterexample"].is_null());
}

#[test]
fn emit_config_is_canonical() {
    let dir = TempDir::new().unwrap();
    let cfg = clifford2(&dir);
    let out = cofree(&["--config", &cfg, "--emit-config"]);
    assert_eq!(stdout(&out), std::fs::read_to_string(&cfg).unwrap());
    let messy = write(dir.path(), "messy.ini", "# comment\n[group]\nfree=0\n[basis]\n  x1 =  \n[mult]\nx1 x1 -> 2*x1\n");
    let out = cofree(&["--config", messy.to_str().unwrap(), "--emit-config"]);
    assert_eq!(stdout(&out), "[group]\nfree = 0\ntorsion =\n\n[basis]\nx1 =\n\n[mult]\nx1 x1 -> 2*x1\n");
}

#[test]
fn quantum_group_preset_from_cartan_file() {
    let dir = TempDir::new().unwrap();
    let cartan = write(dir.path(), "a2.txt", "2 -1\n-1 2\n");
    let out = cofree(&["preset", "uqg", "--cartan", cartan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = write(dir.path(), "a2.ini", &stdout(&out));
    let c = cfg.to_str().unwrap();
    for what in ["yb", "alg", "yd"] {
        assert_eq!(cofree(&["--config", c, "check", what]).status.code(), Some(0), "{what}");
    }
    let out = cofree(&["--config", c, "star", "E1", "F1"]);
    assert_eq!(stdout(&out), "E1.K{1,0}[]F1.K{0,0} + q^-2 F1.K{1,0}[]E1.K{0,0} + xi1.K{0,0}\n");
    let out = cofree(&["--config", c, "star", "F1", "E1"]);
    assert_eq!(stdout(&out), "q^2 E1.K{1,0}[]F1.K{0,0} + F1.K{1,0}[]E1.K{0,0}\n");
}

#[test]
fn rota_baxter_commands() {
    let dir = TempDir::new().unwrap();
    let cfg = clifford2(&dir);
    let out = cofree(&["--config", &cfg, "--max-degree", "2", "check", "rb"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "check rb: pass\n"));
    let out = cofree(&["--config", &cfg, "rb-apply", "v1#eps - q^2"]);
    assert_eq!(stdout(&out), "one@v1#K{1} − q^2 one#K{0}\n");
    let out = cofree(&["--config", &cfg, "psi", "v1@v2"]);
    let lift = stdout(&out);
    let out = cofree(&["--config", &cfg, "phi", lift.trim()]);
    assert_eq!(stdout(&out), "v1@v2\n");
}
