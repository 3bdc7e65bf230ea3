use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kcone"))
}

fn job(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "jobs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Writes `text` to a fresh file in the temp dir.
fn temp_job(tag: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("kcone-cli-{}-{tag}.toml", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(code(&run(&["check", &job("so44-u22.toml")])), 0);
    assert_eq!(code(&run(&["check", &job("so88-spin18.toml")])), 0);
    assert_eq!(code(&run(&["check", &job("d4-torus.toml")])), 1);
    assert_eq!(code(&run(&["check", &job("b2-derived-torus.toml")])), 1);
    assert_eq!(code(&run(&["check", &job("a1xa1-diagonal.toml")])), 0);
}

#[test]
fn truncated_enumeration_is_provisional() {
    let f = temp_job(
        "provisional",
        "[group]\ntype = \"A1xA1\"\n[subgroup]\nkind = \"general\"\nblocks = [\"diagonal\"]\n\
         [module]\nkind = \"monoid\"\ngenerators = [[1, 1]]\n",
    );
    let o = run(&["check", &f, "--bound", "1"]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provisional"], true);
    // Enough height finds the common ray (1,1).
    assert_eq!(code(&run(&["check", &f, "--bound", "4"])), 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&run(&["check", "/nonexistent/job.toml"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["check", &job("d4-torus.toml"), "--bound", "0"])), 3);
    let bad_type = temp_job("badtype", "[group]\ntype = \"Z9\"\n[subgroup]\nkind = \"whole\"\n");
    assert_eq!(code(&run(&["check", &bad_type])), 4);
    let unknown_key = temp_job("unknown", "[group]\ntype = \"A1\"\ncolour = 3\n");
    let o = run(&["check", &unknown_key]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    let not_dominant = temp_job(
        "notdom",
        "[group]\ntype = \"A2\"\n[subgroup]\nkind = \"maximal-torus\"\n[module]\nkind = \"monoid\"\ngenerators = [[-1, 0]]\n",
    );
    assert_eq!(code(&run(&["check", &not_dominant])), 4);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let f = job("so88-spin18.toml");
    let one = run(&["check", &f, "--jobs", "1"]);
    let four = run(&["check", &f, "--jobs", "4"]);
    let again = run(&["check", &f, "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn cone_and_support_commands() {
    let o = run(&["cone", &job("so44-u22.toml"), "--which", "ck"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["which"], "ck");
    assert_eq!(v["method"][0], "symmetric-pair");
    assert_eq!(v["standard"][0]["generators"].as_array().unwrap().len(), 2);

    let o = run(&["cone", &job("so44-u22.toml"), "--which", "as"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["saturated"], true);

    let o = run(&["support", &job("a1xa1-diagonal.toml"), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["saturated"], true);
    assert_eq!(v["generators"], serde_json::json!([["1", "1"]]));

    // A symmetric pair given by its involution has no restriction map.
    assert_eq!(code(&run(&["support", &job("so44-u22.toml")])), 4);
}

#[test]
fn table_output() {
    let o = run(&["check", &job("d4-torus.toml"), "--format", "table"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("status      not-admissible"));
    assert!(text.contains("witness"));
}

#[test]
fn extra_catalog_files() {
    let cat = temp_job("catalog", "[[entry]]\nname = \"diag\"\nkind = \"monoid\"\ngenerators = [[1, 1]]\n");
    let f = temp_job(
        "usescat",
        "[group]\ntype = \"A1xA1\"\n[subgroup]\nkind = \"general\"\nblocks = [\"diagonal\"]\n\
         [module]\nkind = \"catalog\"\nname = \"diag\"\n",
    );
    assert_eq!(code(&run(&["check", &f, "--catalog", &cat])), 1);
    assert_eq!(code(&run(&["check", &f])), 4);
}

#[test]
fn examples_pass_and_detect_a_broken_catalog() {
    let list = run(&["examples", "--list"]);
    assert_eq!(code(&list), 0);
    let names = String::from_utf8(list.stdout).unwrap();
    assert_eq!(names.lines().count(), 13);
    assert!(names.contains("so88-triality-cone"));

    let ok = run(&["examples"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    let outcomes: Vec<serde_json::Value> = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(outcomes.iter().all(|o| o["passed"] == true));

    let bad = run(&["examples", "--corrupt-catalog"]);
    assert_eq!(code(&bad), 1);
    let outcomes: Vec<serde_json::Value> = serde_json::from_slice(&bad.stdout).unwrap();
    let failed: Vec<&str> = outcomes.iter().filter(|o| o["passed"] == false).map(|o| o["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["so44-q-series-verdict", "so88-q-series-verdict"]);
}
