use std::process::{Command, Output};

use nilflat::exactmath::{parse_rational, rat, LaurentPoly, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilflat"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["validate", "--catalog", "5321:2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["validate", "(0,0,e^{12},e^{12})"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["validate", "(0,0,e^{12},0,e^{34})"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["ricci"]).status.code(), Some(2));
    assert_eq!(run(&["lookup", "no-such-entry"]).status.code(), Some(2));
    let o = run(&["ricci", "--catalog", "5321:2", "--sigma", "(1 9)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn validate_reports_diagram() {
    let o = run(&["validate", "--catalog", "5321:2"]);
    let out = stdout(&o);
    assert!(out.contains("nice: yes"));
    assert!(out.contains("2 -[3]-> 5"));
    for c in ["Acyclic", "NoDuplicate", "N1", "N2", "N3", "N4"] {
        assert!(out.contains(&format!("{c}: ok")), "{c}");
    }
}

#[test]
fn deterministic_output() {
    let args = ["involutions", "--gen", "parabolic:B:3", "--max", "20"];
    let first = stdout(&run(&args));
    assert!(!first.is_empty());
    for jobs in ["1", "4"] {
        let mut a = args.to_vec();
        a.extend(["--jobs", jobs]);
        assert_eq!(stdout(&run(&a)), first);
    }
    let r = ["riemann", "--catalog", "64321:4"];
    assert_eq!(stdout(&run(&r)), stdout(&run(&r)));
}

#[test]
fn empty_search() {
    let o = run(&["involutions", "--catalog", "64321:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none found (searched 76 involutions)");
}

#[test]
fn involution_listing() {
    let out = stdout(&run(&["involutions", "--catalog", "421:1"]));
    assert!(out.lines().next().unwrap().contains("(1 4)(2 3)"), "{out}");
    assert!(
        out.trim_end().ends_with("found (searched 10 involutions)"),
        "{out}"
    );
}

#[test]
fn verify_tables() {
    let o = run(&["verify", "--all-tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().contains(" 0 failed"));
}

fn point_value(p: &Value) -> Rational {
    parse_rational(p.as_str().unwrap()).unwrap()
}

#[test]
fn numeric_ricci_matches_symbolic() {
    let values = [
        ("g1", rat(1, 1)),
        ("g2", rat(2, 1)),
        ("g4", rat(3, 1)),
        ("g6", rat(5, 1)),
    ];
    let assignment: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let sym = json(&["ricci", "--catalog", "64321:5"]);
    let num = json(&[
        "ricci",
        "--catalog",
        "64321:5",
        "--numeric",
        &assignment.join(","),
    ]);
    let mut point = vec![rat(1, 1); 6];
    for (k, v) in &values {
        point[k[1..].parse::<usize>().unwrap() - 1] = v.clone();
    }
    let sym = sym["ricci"].as_array().unwrap();
    let num = num["ricci"].as_array().unwrap();
    assert_eq!(sym.len(), num.len());
    for (s, n) in sym.iter().zip(num) {
        assert_eq!((&s["i"], &s["j"]), (&n["i"], &n["j"]));
        let p = LaurentPoly::parse(s["poly"].as_str().unwrap()).unwrap();
        assert_eq!(p.eval(&point).unwrap(), point_value(&n["poly"]));
    }
}

#[test]
fn flatness_and_params() {
    let out = stdout(&run(&["flatness", "--catalog", "64321:4"]));
    assert!(out.contains("flat exactly where g1 - g3 = 0"), "{out}");
    let v = json(&["params", "--catalog", "52:1"]);
    assert_eq!(v["parameters"], 1);
    let out = stdout(&run(&[
        "signature",
        "--sigma",
        "(1 7)(2 6)(3 5)",
        "--nodes",
        "7",
    ]));
    assert!(out.contains("(4,3)"), "{out}");
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("nilflat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h3.txt");
    std::fs::write(&path, "# Heisenberg\n(0,0,e^{12})\n").unwrap();
    let o = run(&[
        "flatness",
        "--file",
        path.to_str().unwrap(),
        "--sigma",
        "(1 3)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identically flat"), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
