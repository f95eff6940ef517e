use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lambek(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambek"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_instance(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn prove_exit_codes() {
    let o = lambek(&["prove", "--mode", "l", "np, np\\s => s"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\\L [0,1]"));

    let o = lambek(&["prove", "x => y"]);
    assert_eq!(code(&o), 1);

    let o = lambek(&["prove", "a, => b"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("syntax error"));

    let o = lambek(&["prove", "--budget", "0", "a => a"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn prove_json_shows_insert_position() {
    let o = lambek(&[
        "prove",
        "--mode",
        "sdl",
        "--output",
        "json",
        "s/c, b\\c => b -o s",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rule"], "-oR");
    assert_eq!(v["insert"], 1);
    assert_eq!(v["premises"][0]["sequent"], "s/c, b, b\\c => s");
}

#[test]
fn prove_reports_lolli_violations() {
    let o = lambek(&["prove", "--mode", "l", "s/c, b\\c => b -o s"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("-o is not part of L"));

    // A negative -o is only a warning: the answer is simply "no".
    let o = lambek(&["prove", "a -o b => a -o b"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn prove_budget_exhaustion_is_unknown() {
    let s = "x/(c -o (b -o x)), x/(c -o (b -o y)), (y/b)/y, (y/b)/z, (z/c)/z, z/c => x";
    let o = lambek(&["prove", "--budget", "2", s]);
    assert_eq!(code(&o), 3);
    let o = lambek(&["prove", s]);
    assert_eq!(code(&o), 0);
}

#[test]
fn parse_builtin() {
    let o = lambek(&["parse", "--builtin", "anbncn", "a a b b c c"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("member"));

    let o = lambek(&["parse", "--builtin", "anbncn", "a b b c"]);
    assert_eq!(code(&o), 1);

    let o = lambek(&[
        "parse",
        "--builtin",
        "anbncn",
        "--budget",
        "1",
        "a a b b c c",
    ]);
    assert_eq!(code(&o), 3);

    let o = lambek(&["parse", "--builtin", "anbncn", "a d"]);
    assert_eq!(code(&o), 2);

    let o = lambek(&[
        "parse",
        "--builtin",
        "anbncn",
        "--output",
        "json",
        "--proof",
        "a b c",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["assignment"].as_array().unwrap().len(), 3);
    assert_eq!(v["proof"]["sequent"], "x/(c -o (b -o y)), y/b/z, z/c => x");
}

#[test]
fn parse_grammar_files() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.lmb");
    fs::write(
        &g,
        "# toy\nstart: s\njohn: np\nsleeps: np\\s\nsees: (np\\s)/np\n",
    )
    .unwrap();
    let g = g.to_str().unwrap();
    assert_eq!(
        code(&lambek(&["parse", "--mode", "l", g, "john sees john"])),
        0
    );
    assert_eq!(
        code(&lambek(&["parse", "--mode", "l", g, "john john sees"])),
        1
    );
    assert_eq!(code(&lambek(&["parse", g])), 2);

    let c = dir.path().join("g.cfg");
    fs::write(&c, "S -> a S B | a B\nB -> b\n").unwrap();
    let c = c.to_str().unwrap();
    assert_eq!(code(&lambek(&["parse", "--cfg", c, "a a b b"])), 0);
    assert_eq!(code(&lambek(&["parse", "--cfg", c, "a b b"])), 1);
}

#[test]
fn reduce_then_parse() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(dir.path(), "i.json", r#"{"m":1,"N":12,"sizes":[4,4,4]}"#);
    let prefix = dir.path().join("r");
    let o = lambek(&["reduce", &inst, prefix.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "v w1 w2 w3");
    let grammar = dir.path().join("r.grammar");
    let word = fs::read_to_string(dir.path().join("r.word")).unwrap();
    assert_eq!(word.trim(), "v w1 w2 w3");
    let text = fs::read_to_string(&grammar).unwrap();
    let terminals = text
        .lines()
        .filter(|l| !l.starts_with("start:") && l.contains(':'))
        .count();
    assert_eq!(terminals, 4);
    assert_eq!(
        code(&lambek(&["parse", grammar.to_str().unwrap(), word.trim()])),
        0
    );

    let bad = write_instance(dir.path(), "bad.json", r#"{"m":1,"N":12,"sizes":[3,4,5]}"#);
    let o = lambek(&["reduce", &bad, prefix.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not strictly greater than N/4"));

    let unsolvable = write_instance(
        dir.path(),
        "u.json",
        r#"{"m":2,"N":16,"sizes":[5,5,5,5,5,7]}"#,
    );
    let prefix = dir.path().join("u");
    assert_eq!(
        code(&lambek(&["reduce", &unsolvable, prefix.to_str().unwrap()])),
        0
    );
    let grammar = dir.path().join("u.grammar");
    let word = fs::read_to_string(dir.path().join("u.word")).unwrap();
    assert_eq!(
        code(&lambek(&["parse", grammar.to_str().unwrap(), word.trim()])),
        1
    );
}

#[test]
fn solve3p() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"m":1,"N":12,"sizes":[4,4,4]}"#, 0, "[[1,2,3]]"),
        (r#"{"m":2,"N":16,"sizes":[5,5,5,5,5,7]}"#, 1, "null"),
        (
            r#"{"m":2,"N":12,"sizes":[4,4,4,4,4,4]}"#,
            0,
            "[[1,2,3],[4,5,6]]",
        ),
    ];
    for (i, (json, expected, out)) in cases.iter().enumerate() {
        let inst = write_instance(dir.path(), &format!("{i}.json"), json);
        let o = lambek(&["solve3p", &inst]);
        assert_eq!(code(&o), *expected, "{json}");
        assert_eq!(stdout(&o).trim(), *out);
    }
    let bad = write_instance(dir.path(), "bad.json", r#"{"m":1,"N":12,"sizes":[4,4]}"#);
    assert_eq!(code(&lambek(&["solve3p", &bad])), 2);
    let junk = write_instance(dir.path(), "junk.json", "not json");
    assert_eq!(code(&lambek(&["solve3p", &junk])), 2);
}

#[test]
fn generate_lists_instances() {
    let o = lambek(&["generate", "--max-m", "1", "--max-bound", "12"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines
        .iter()
        .any(|v| v["N"] == 12 && v["sizes"] == serde_json::json!([4, 4, 4])));
    assert!(lines.iter().all(|v| v["m"] == 1));
}

#[test]
fn check_round_trips_prover_output() {
    let dir = TempDir::new().unwrap();
    let o = lambek(&["prove", "--output", "json", "s/c, b\\c => b -o s"]);
    let path = dir.path().join("p.json");
    fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&lambek(&["check", "--mode", "sdl", p])), 0);
    assert_eq!(code(&lambek(&["check", "--mode", "l", p])), 1);

    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    v["insert"] = 0.into();
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&lambek(&["check", p])), 1);

    fs::write(&path, r#"{"rule":"Cut","sequent":"a => a","premises":[]}"#).unwrap();
    assert_eq!(code(&lambek(&["check", p])), 2);
}

#[test]
fn deterministic_reruns() {
    let args = [
        "prove",
        "--output",
        "json",
        "(np\\np)/(s/np), np, (np\\s)/np => np\\np",
    ];
    let a = lambek(&args);
    let b = lambek(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
