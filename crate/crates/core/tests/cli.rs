use std::path::Path;
use std::process::Command;

use afftrans::cli;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(&args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

/// Parses a `key=value ...` line; values never contain spaces except in
/// translated characters, which are not used here.
fn record(line: &str) -> Vec<(String, String)> {
    line.split(' ')
        .map(|kv| {
            let (k, v) = kv.split_once('=').expect("key=value");
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn json_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn golden_files_match_binary() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: &[(&str, &[&str], i32)] = &[
        ("tensor_a1", &["tensor", "A1", "[1]", "[1]"], 0),
        (
            "translate_char_a1",
            &["translate-char", "A1", "--level", "5/1", "--from", "[0]", "--to", "[2]", "--char", "e:1,saff:1"],
            0,
        ),
        ("dominant_unknown_type", &["dominant", "Z9", "--level", "5/1"], 2),
    ];
    for (name, args, code) in cases {
        let output = Command::new(env!("CARGO_BIN_EXE_afftrans"))
            .args(*args)
            .env_remove(cli::CAP_ENV)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(*code), "{name}");
        assert_eq!(output.stdout, std::fs::read(dir.join(format!("{name}.stdout"))).unwrap(), "{name}");
        assert_eq!(output.stderr, std::fs::read(dir.join(format!("{name}.stderr"))).unwrap(), "{name}");
    }
}

#[test]
fn records_and_json_lines_agree() {
    let invocations: &[&[&str]] = &[
        &["info", "A2"],
        &["orbit", "A1", "[1]"],
        &["orbit", "A1", "[0]", "--level", "3", "--bound", "10"],
        &["alcove", "A2", "[5,3]", "--level", "4"],
        &["dominant", "A2", "--level", "5"],
        &["tensor", "A2", "[1,0]", "[0,1]"],
        &["filtration", "A1", "[2]", "[0]", "--level", "5", "--project", "[2]"],
        &["datum", "A1", "--level", "5", "--left", "[0]", "--right", "[2]", "--lambda", "[2]"],
        &["translate-weyl", "A1", "--level", "5", "--g", "saff", "--from", "[0]", "--to", "[2]"],
        &["verify-lemma", "A1", "--level", "5", "--from", "[0]", "--to", "[2]", "--bound", "20"],
        &["admissible", "A2", "--level", "5"],
        &["generator", "A1", "--level", "5"],
        &["transport", "A1", "--level", "5", "--to", "[2]", "--labels", "saff"],
    ];
    for args in invocations {
        let records = ok(args);
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json-lines"]);
        let json = ok(&json_args);
        let (r, j): (Vec<&str>, Vec<&str>) = (records.lines().collect(), json.lines().collect());
        assert_eq!(r.len(), j.len(), "{args:?}");
        assert!(!r.is_empty(), "{args:?}");
        for (rl, jl) in r.iter().zip(&j) {
            let parsed: serde_json::Map<String, Value> = serde_json::from_str(jl).unwrap();
            let from_json: Vec<(String, String)> = parsed.iter().map(|(k, v)| (k.clone(), json_text(v))).collect();
            let mut from_records = record(rl);
            let mut from_json = from_json;
            from_records.sort();
            from_json.sort();
            assert_eq!(from_records, from_json, "{args:?}");
        }
    }
}

#[test]
fn spot_values() {
    assert_eq!(ok(&["tensor", "A2", "[1,0]", "[0,1]"]), "nu=[0,0] mult=1\nnu=[1,1] mult=1\n");
    assert_eq!(ok(&["tensor", "A2", "[1,0]", "[0,1]", "--oracle"]), "nu=[0,0] mult=1\nnu=[1,1] mult=1\n");
    assert_eq!(ok(&["generator", "A1", "--level", "5"]), "element=t[5]*s1 singular=[8]\n");
    assert_eq!(ok(&["generator", "A1", "--k", "3"]), "element=t[5]*s1 singular=[8]\n");
    assert_eq!(ok(&["translate-weyl", "A1", "--level", "5", "--g", "saff", "--from", "[0]", "--to", "[2]"]),
        "element=t[5]*s1 source=[8] target=[6]\n");
    assert_eq!(ok(&["dominant", "A1", "--level", "4"]), "lambda=[0]\nlambda=[1]\nlambda=[2]\n");
    let first = ok(&["info", "A2"]).lines().next().unwrap().to_string();
    assert!(first.contains("dual_coxeter=3"));
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["tensor", "A1", "[x]", "[1]"]).0, 2);
    assert_eq!(run(&["tensor", "Z9", "[1]", "[1]"]).0, 2);
    assert_eq!(run(&["orbit", "A1", "[0]", "--level", "3"]).0, 2);
    assert_eq!(run(&["generator", "A1", "--level", "5", "--k", "3"]).0, 2);
    assert_eq!(run(&["generator", "A1", "--level", "banana"]).0, 2);
    assert_eq!(run(&["info", "A2", "--format", "xml"]).0, 2);
    // domain errors
    assert_eq!(run(&["tensor", "A1", "[1]", "[1,2]"]).0, 1);
    assert_eq!(run(&["tensor", "A1", "[-1]", "[1]"]).0, 1);
    assert_eq!(run(&["tensor", "A2", "[9,9]", "[9,9]", "--cap", "10"]).0, 1);
    assert_eq!(run(&["translate-weyl", "A1", "--level", "5", "--g", "saff", "--from", "[4]", "--to", "[2]"]).0, 1);
    // help and version
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn errors_go_to_stderr_only() {
    let (code, out, err) = run(&["tensor", "A1", "[1]", "[1,2]"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn non_simply_laced_fractional_level_warns() {
    let (code, out, err) = run(&["dominant", "B2", "--level", "7/2"]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"));
    assert_eq!(err.lines().count(), 1);
    let (_, plain, plain_err) = run(&["dominant", "B2", "--level", "7"]);
    assert!(plain_err.is_empty());
    assert!(!plain.is_empty());
    assert!(!out.contains("warning"));
}

#[test]
fn malformed_arguments_never_panic() {
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let commands = [
        "info", "orbit", "alcove", "dominant", "tensor", "filtration", "datum", "translate-weyl",
        "translate-char", "verify-lemma", "admissible", "generator", "transport",
    ];
    let flags = [
        "--level", "--k", "--bound", "--cap", "--g", "--from", "--to", "--char", "--labels", "--left",
        "--right", "--lambda", "--project", "--dot", "--verma", "--oracle", "--format",
    ];
    let atoms = [
        "A1", "A2", "B2", "G2", "Z9", "A0", "E9", "[0]", "[1]", "[2]", "[1,0]", "[-1]", "[1/2]", "[", "]", "[,]",
        "[1,,2]", "5", "5/1", "7/2", "0", "-3", "1/0", "x", "", "e", "saff", "s1s2", "s9", "t[1]*s1", "t[",
        "e:1,saff:-2", "e:", ":1", "json-lines", "records", "99999999999999999999",
    ];
    let mut rng = StdRng::seed_from_u64(0x00c1_1f22);
    for _ in 0..2000 {
        let mut args: Vec<String> = vec![commands.choose(&mut rng).unwrap().to_string()];
        for _ in 0..rng.gen_range(0..7) {
            let pool: &[&str] = if rng.gen_bool(0.4) { &flags } else { &atoms };
            args.push(pool.choose(&mut rng).unwrap().to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            cli::run(&args, &mut out, &mut err)
        }));
        let code = result.unwrap_or_else(|_| panic!("panicked on {args:?}"));
        assert!((0..=2).contains(&code), "{args:?}");
        if code != 0 {
            assert!(!err.is_empty(), "{args:?}");
        }
    }
}
