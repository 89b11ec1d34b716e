use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chernlab"));
    c.env_remove("CHERNLAB_MAX_BASIS").env_remove("CHERNLAB_MAX_DEGREE").env_remove("CHERNLAB_TIMEOUT_SECS");
    c
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const WRONG_RHS: &str = r#"kind = "theorem-C"
ring = "5:2:grevlex"

[exterior]
lambda = [["1"]]
primes = [["x1", "x2"]]

[[exterior.pairs]]
i_gens = [["x1"]]

[[exterior.pairs]]
i_gens = [["x2"]]

[exterior.x]
rank = 1

[[theorem_c.rhs]]
rank = 1
relations = [["x1", "x2^2"]]

[[theorem_c.rhs]]
rank = 0

[[theorem_c.rhs]]
rank = 0

[[theorem_c.rhs]]
rank = 0
"#;

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let koszul = golden("koszul_l1.scn");

    let o = run(&["verify", "A", koszul.to_str().unwrap(), "--out", &out("k.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let wrong = dir.path().join("wrong.scn");
    std::fs::write(&wrong, WRONG_RHS).unwrap();
    let o = run(&["verify", "c", wrong.to_str().unwrap(), "--out", &out("w.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAILED]"));

    let o = run(&["run", golden("malformed_polynomial.scn").to_str().unwrap(), "--out", &out("m.json")]);
    assert_eq!(code(&o), 2);
    let o = run(&["run", golden("torsion_free_cokernel.scn").to_str().unwrap(), "--out", &out("t.json")]);
    assert_eq!(code(&o), 3);

    let o = run(&["--ring", "5:2:grevlex", "--limits", "max_basis=1", "groebner", "x1^2+x2", "x2^2", "x1*x2-1"]);
    assert_eq!(code(&o), 4);
    let o = bin()
        .args(["--ring", "5:2:grevlex", "groebner", "x1^2+x2", "x2^2", "x1*x2-1"])
        .env("CHERNLAB_MAX_BASIS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);

    // a theorem-B file is refused by the A verifier
    let o = run(&["verify", "a", golden("b01_scalar_diagonal.scn").to_str().unwrap(), "--out", &out("b.json")]);
    assert_eq!(code(&o), 2);
    let o = run(&["run", dir.path().join("missing.scn").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn certificates_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let p = dir.path().join(format!("{i}.json"));
        let o = run(&["--seed", "5", "verify", "A", golden("a_cokernel_quotient.scn").to_str().unwrap(), "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        texts.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(texts[0], texts[1]);

    let mut sums = Vec::new();
    for i in 0..2 {
        let d = dir.path().join(format!("suite{i}"));
        let o = run(&["--seed", "42", "--json", "--out", d.to_str().unwrap(), "suite", "exterior-corollary", "--count", "1"]);
        assert_eq!(code(&o), 0);
        sums.push((stdout(&o), std::fs::read(d.join("summary.json")).unwrap()));
    }
    assert_eq!(sums[0], sums[1]);
}

#[test]
fn json_output_is_the_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    let o = run(&["--json", "verify", "B", golden("b02_mixed_diagonal.scn").to_str().unwrap(), "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).into_bytes(), std::fs::read(&p).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["kind"], "theorem-B");
}

#[test]
fn oracle_subcommand() {
    let o = run(&["oracle", "dimension", "--gen", "x1^2", "--gen", "x1*x2", "--gen", "x2^3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("dimension 4"));

    let o = run(&["oracle", "membership", "--gen", "x1^2", "--poly", "x1^3", "--degree", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("member true"));

    let o = run(&["oracle", "dimension", "--gen", "x1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not finite-dimensional"));

    let o = run(&["oracle", "length", "--gen", "x1^2", "--gen", "x2^2", "--prime", "x1", "--prime", "x2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("length 4"));
}
