use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_weakhopf");

/// A fresh directory holding a copy of the bundled instance `name`.
fn workdir(test: &str, name: &str) -> (PathBuf, PathBuf) {
    let dir = std::env::temp_dir().join(format!("weakhopf-cli-{}-{test}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus/instances")
        .join(format!("{name}.json"));
    let dst = dir.join(format!("{name}.json"));
    fs::copy(src, &dst).unwrap();
    (dir, dst)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn status_of<'a>(r: &'a Value, id: &str) -> &'a str {
    r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["id"] == id)
        .unwrap_or_else(|| panic!("no entry {id}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn validate_reports_and_exit_codes() {
    let (dir, input) = workdir("validate", "pair_groupoid");
    let o = run(&["validate", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&dir.join("pair_groupoid.validate.report.json"));
    assert_eq!(r["millis"], 0);
    assert_eq!(r["values"]["dim_H"], "4");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(status_of(&r, "axioms.wb1.delta_multiplicative"), "pass");

    let (dir, input) = workdir("validate_broken", "broken_counit");
    let out = dir.join("custom.json");
    let o = run(&[
        "validate",
        input.to_str().unwrap(),
        "--report",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(status_of(&report(&out), "axioms.counit.left"), "fail");
}

#[test]
fn malformed_scalar_exits_with_input_error() {
    let (_, input) = workdir("malformed", "malformed_scalar");
    let o = run(&["validate", input.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/0"));
}

#[test]
fn build_then_cleft_then_reconstruct() {
    let (dir, input) = workdir("pipeline", "pair_groupoid");
    let o = run(&["build", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&dir.join("pair_groupoid.build.report.json"));
    assert_eq!(r["values"]["E_dim"], "4");
    assert_eq!(status_of(&r, "laws.E.assoc"), "pass");
    let built = dir.join("pair_groupoid.built.json");
    assert!(built.exists());
    for cmd in ["cleft", "reconstruct"] {
        let o = run(&[cmd, built.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let r = report(&dir.join("pair_groupoid.built.reconstruct.report.json"));
    assert_eq!(status_of(&r, "input.rho"), "pass");
    assert_eq!(status_of(&r, "input.f"), "pass");
    assert_eq!(r["values"]["Omega_rank"], "4");
}

#[test]
fn build_is_byte_identical_across_runs() {
    let (dir, input) = workdir("determinism", "hopf_z2");
    let paths = [
        dir.join("hopf_z2.build.report.json"),
        dir.join("hopf_z2.built.json"),
    ];
    assert_eq!(code(&run(&["build", input.to_str().unwrap()])), 0);
    let first: Vec<Vec<u8>> = paths.iter().map(|p| fs::read(p).unwrap()).collect();
    assert_eq!(code(&run(&["build", input.to_str().unwrap()])), 0);
    let second: Vec<Vec<u8>> = paths.iter().map(|p| fs::read(p).unwrap()).collect();
    assert_eq!(first, second);
}

#[test]
fn failed_hypothesis_halts_build() {
    let (dir, input) = workdir("preunit", "broken_preunit");
    let o = run(&["build", input.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("preunit2"));
    assert!(!dir.join("broken_preunit.built.json").exists());
}

#[test]
fn equivalence_of_unit_phi_is_identity() {
    let (dir, input) = workdir("equiv", "pair_groupoid");
    let o = run(&["equiv", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&dir.join("pair_groupoid.equiv.report.json"));
    assert_eq!(r["values"]["Phi"], "[1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1]");
}

#[test]
fn eval_expressions_and_identities() {
    let (_, input) = workdir("eval", "pair_groupoid");
    let sig = input.to_str().unwrap();
    let o = run(&[
        "eval",
        "--sig",
        sig,
        "--identity",
        "weak_bialgebra/wb1.delta_multiplicative",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("IDENTITY: pass"));
    let o = run(&[
        "eval",
        "--sig",
        sig,
        "--lhs",
        "mu",
        "--rhs",
        "swap(H,H) ; mu",
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("IDENTITY: fail at"));
    let o = run(&["eval", "--sig", sig, "--expr", "mu ;;"]);
    assert_eq!(code(&o), 2);
    let o = run(&["eval", "--sig", sig, "--expr", "eta ; epsilon"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains('2'));
}

#[test]
fn field_override_reads_scalars_mod_p() {
    let (dir, input) = workdir("field", "hopf_z2");
    let o = run(&["--field", "prime:7", "validate", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(dir.join("hopf_z2.validate.report.json").exists());
}

#[test]
fn bundled_instance_files_are_current() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/instances");
    for (name, file) in weakhopf::presentation::bundled_instances() {
        let on_disk = fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(
            on_disk,
            file.to_json(),
            "{name}: rerun the write_instances example"
        );
    }
}
