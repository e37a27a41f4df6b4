use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mangoldt"));
    c.env_remove("MANGOLDT_SIEVE_LIMIT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "--function", "Ld", "--n", "12"]), "4/3\n");
    assert_eq!(stdout(&["eval", "--function", "mangoldt:A", "--n", "49"]), "7\n");
    assert_eq!(stdout(&["eval", "--function", "Omega", "--n", "1"]), "0\n");
    assert_eq!(stdout(&["eval", "--function", "beta_-1", "--n", "6"]), "5/6\n");
    let v = json(&["eval", "--function", "log", "--n", "8", "--format", "json"]);
    assert_eq!(v["version"], 1);
    assert!((v["values"]["log"].as_f64().unwrap() - 8f64.ln()).abs() < 1e-11);
}

#[test]
fn eval_errors() {
    let out = run(&["eval", "--function", "nope", "--n", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Omega"));
    // beyond limit^2
    assert!(!run(&["--sieve-limit", "10", "eval", "--function", "Ld", "--n", "101"]).status.success());
    assert!(!run(&["eval", "--function", "mangoldt:tau", "--n", "4"]).status.success());
}

#[test]
fn table_csv_and_json() {
    assert_eq!(
        stdout(&["table", "--functions", "Omega,tau", "--range", "1..4"]),
        "n,Omega,tau\n1,0,1\n2,1,2\n3,1,2\n4,2,3\n"
    );
    let v = json(&["table", "--functions", "Omega,Ld", "--range", "5..6", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["Ld"], "5/6");
    assert_eq!(rows[0]["n"], 5);
    assert!(!run(&["table", "--functions", "", "--range", "1..4"]).status.success());
    assert!(!run(&["table", "--functions", "Omega", "--range", "4..1"]).status.success());
}

#[test]
fn mangoldt_and_convolve() {
    assert_eq!(stdout(&["mangoldt", "--function", "Ld", "--n", "9"]), "1/3\n");
    assert_eq!(
        stdout(&["mangoldt", "--function", "delta", "--n", "8", "--method", "all"]),
        "definition 1/2\nmobius 1/2\nnegated 1/2\n"
    );
    assert_eq!(stdout(&["convolve", "--left", "one", "--right", "mangoldt:Omega", "--n", "12"]), "3\n");
    assert_eq!(stdout(&["convolve", "--left", "tau", "--right", "e", "--n", "36"]), "9\n");
    assert!(!run(&["mangoldt", "--function", "tau", "--n", "4"]).status.success());
}

#[test]
fn verify_exit_contract() {
    assert!(run(&["verify", "--identity", "thm-2-1", "--function", "Ld", "--max-n", "3000"]).status.success());
    let v = json(&["verify", "--identity", "cor-LdOmega", "--max-n", "100"]);
    let r = &v["reports"][0];
    assert_eq!(r["expected"], "paper-erratum");
    assert_eq!(r["status"], "failed");
    assert_eq!(r["corrected_status"], "verified");
    let at4 = r["counterexamples"].as_array().unwrap().iter().find(|c| c["n"] == 4).unwrap();
    assert_eq!((at4["lhs"].as_str(), at4["rhs"].as_str(), at4["corrected_rhs"].as_str()), (Some("1/2"), Some("-1"), Some("1/2")));
    assert!(!run(&["verify", "--identity", "nonsense"]).status.success());
    // constraint violation: delta is not completely additive
    assert!(!run(&["verify", "--identity", "cor-2-2", "--function", "delta", "--max-n", "10"]).status.success());
}

#[test]
fn verify_report_file_and_jobs() {
    let dir = std::env::temp_dir().join(format!("mangoldt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["verify", "--identity", "thm-2-5", "--max-n", "500", "--report", path.to_str().unwrap()];
    let one = stdout(&args);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(one, written);
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    assert_eq!(stdout(&more), one);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn user_spec_file() {
    let dir = std::env::temp_dir().join(format!("mangoldt-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.spec");
    std::fs::write(&path, "# square over p\nname=sq\nf(p)=p^2\nh(p)=p\n").unwrap();
    let p = path.to_str().unwrap();
    // sq(12) = h(12) * (2 f(2)/h(2) + f(3)/h(3)) = 12 * (2*2 + 3)
    assert_eq!(stdout(&["--spec-file", p, "eval", "--function", "sq", "--n", "12"]), "84\n");
    assert_eq!(stdout(&["--spec-file", p, "eval", "--function", "mangoldt:sq", "--n", "25"]), "5\n");
    assert!(run(&["--spec-file", p, "verify", "--identity", "thm-2-1", "--function", "sq", "--max-n", "500"]).status.success());
    std::fs::write(&path, "name=Omega\nf(p)=1\n").unwrap();
    assert!(!run(&["--spec-file", p, "eval", "--function", "Omega", "--n", "2"]).status.success());
    std::fs::write(&path, "name=bad\nf(p)=p^p\n").unwrap();
    assert!(!run(&["--spec-file", p, "eval", "--function", "bad", "--n", "2"]).status.success());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn series_contract() {
    let v = json(&["series", "--identity", "thm-2-6", "--function", "Ld", "--s", "2", "--N", "10000"]);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["chunk_size"], 4096);
    let out = run(&["series", "--identity", "thm-4-4", "--s", "3", "--k", "1", "--N", "1000000"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("s > 3"));
    assert!(!run(&["series", "--identity", "thm-2-6", "--function", "A", "--s", "2"]).status.success());
    assert!(!run(&["series", "--identity", "thm-9-9", "--s", "2"]).status.success());
    // tails are part of the pass criterion, so a short sum still passes
    let v = json(&["series", "--identity", "thm-4-1", "--s", "3", "--N", "100", "--tol", "1e-15"]);
    let r = &v["result"];
    assert!(r["abs_difference"].as_f64().unwrap() <= 1e-15 + r["lhs_tail_bound"].as_f64().unwrap() + r["rhs_tail_bound"].as_f64().unwrap());
}

#[test]
fn sieve_limit_flag_beats_env() {
    let args = ["eval", "--function", "Ld", "--n", "200"];
    let env_only = bin().env("MANGOLDT_SIEVE_LIMIT", "10").args(args).output().unwrap();
    assert!(!env_only.status.success());
    let both = bin()
        .env("MANGOLDT_SIEVE_LIMIT", "10")
        .args(["--sieve-limit", "100"])
        .args(args)
        .output()
        .unwrap();
    assert!(both.status.success());
    assert!(!run(&["--sieve-limit", "1", "eval", "--function", "Ld", "--n", "2"]).status.success());
}

#[test]
fn output_is_byte_identical() {
    let args = ["table", "--functions", "Ld,log,mangoldt:delta", "--range", "1..300", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["series", "--identity", "thm-4-2", "--s", "3", "--k", "1", "--N", "20000"];
    assert_eq!(stdout(&args), stdout(&args));
}
