use std::io::Write;
use std::process::{Command, Stdio};

use num_bigint::BigInt;
use polyfract_cli::format::{emit_polynomial, emit_problem, parse_polynomial, parse_problem};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn run(args: &[&str], stdin: Option<&str>) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyfract"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

#[test]
fn mixed_radix_fixture_decodes_first_coordinate_most_significant() {
    let f = parse_problem(&std::fs::read_to_string(fixture("mixed_radix.json")).unwrap()).unwrap();
    for a in 0..2u64 {
        for b in 0..3u64 {
            let want = [BigInt::from((a + 1) % 4), BigInt::from((2 * b) % 3)];
            assert_eq!(f.get(&[a, b]), want, "({a},{b})");
        }
    }
    // value code 5 at index 1 is the tuple (1, 2) at the point (0, 1)
    assert_eq!(f.values()[1], [BigInt::from(1), BigInt::from(2)]);
}

#[test]
fn problem_files_are_stable_under_parse_and_emit() {
    for name in ["opening.json", "mixed_radix.json", "product_domain.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let once = emit_problem(&parse_problem(&text).unwrap());
        let twice = emit_problem(&parse_problem(&once).unwrap());
        assert_eq!(once, twice, "{name}");
        assert_eq!(parse_problem(&once).unwrap(), parse_problem(&text).unwrap());
    }
}

#[test]
fn polynomial_files_are_stable_under_parse_and_emit() {
    for args in [
        vec!["represent", "--merge"],
        vec!["represent", "--merge", "--basis", "monomial"],
        vec!["represent"],
        vec!["represent", "--basis", "monomial"],
    ] {
        for name in ["opening.json", "mixed_radix.json", "product_domain.json"] {
            let path = fixture(name);
            let mut full = args.clone();
            full.push(&path);
            let (out, err, code) = run(&full, None);
            if args.contains(&"--merge") && name != "opening.json" {
                assert_eq!(code, 3, "non-cyclic merge: {err}");
                continue;
            }
            assert_eq!(code, 0, "{full:?}: {err}");
            let reparsed = emit_polynomial(&parse_polynomial(&out).unwrap());
            assert_eq!(reparsed, out);
            assert_eq!(parse_polynomial(&reparsed).unwrap(), parse_polynomial(&out).unwrap());
        }
    }
}

#[test]
fn product_domain_fixture_is_polyfractal_and_reproduced() {
    let (out, _, code) = run(&["classify", &fixture("product_domain.json")], None);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("polyfractal: yes"));
    let (rep, _, code) = run(&["represent", &fixture("product_domain.json")], None);
    assert_eq!(code, 0);
    let poly = fixture_tmp("product_rep.json", &rep);
    // values come out in the codomain components Z_4 x Z_3 x Z_1: 5 and 11
    for (a, b, want) in [(0, 0, "1 2 0"), (1, 0, "3 2 0"), (0, 7, "1 2 0"), (1, 24, "3 2 0")] {
        // one variable per (prime, factor) pair, ordered by prime then factor:
        // Z_2, Z_1 | Z_1, Z_1 | Z_1, Z_25
        let (a, b) = (a.to_string(), b.to_string());
        let (v, err, code) = run(&["eval", &poly, &a, "0", "0", "0", "0", &b], None);
        assert_eq!(code, 0, "{err}");
        assert_eq!(v.trim(), want);
    }
}

fn fixture_tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("polyfract-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verdict_first_line_and_counterexample() {
    let (out, _, code) = run(
        &["classify", "-"],
        Some(
            r#"{"domain":[50],"codomain":[12],"values":[0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1,0,1]}"#,
        ),
    );
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "polyfractal: no");
    assert_eq!(lines[1], "counterexample: prime 3");
}

#[test]
fn oracle_cross_check_agrees() {
    for values in ["[0,1,2,3]", "[1,1,1,1]"] {
        let problem = format!(r#"{{"domain":[4],"codomain":[6],"values":{values}}}"#);
        let (out, err, code) = run(&["classify", "--oracle", "-"], Some(&problem));
        assert_eq!(code, 0, "{err}");
        assert!(out.ends_with("oracle: agrees\n"));
    }
}

#[test]
fn exit_codes() {
    // success
    assert_eq!(run(&["count", "--domain", "50", "--codomain", "12"], None), ("48\n".into(), String::new(), 0));
    assert_eq!(run(&["cofract", "5", "4", "8", "-1"], None).2, 0);
    // parse and validation errors
    assert_eq!(run(&["classify", "-"], Some("{not json")).2, 2);
    assert_eq!(run(&["classify", "-"], Some(r#"{"domain":[3],"codomain":[2],"values":[0,1]}"#)).2, 2);
    assert_eq!(run(&["classify", "-"], Some(r#"{"domain":[3],"codomain":[2],"values":[0,1,2]}"#)).2, 2);
    assert_eq!(run(&["lagrange", "4", "1", "1", "0"], None).2, 2);
    assert_eq!(run(&["frobnicate"], None).2, 2);
    assert_eq!(run(&["classify", "/definitely/missing.json"], None).2, 2);
    // precondition failures
    assert_eq!(run(&["represent", "-"], Some(r#"{"domain":[3],"codomain":[2],"values":[0,1,0]}"#)).2, 3);
    assert_eq!(run(&["interp", "-"], Some(r#"{"domain":[6],"codomain":[2],"values":[0,1,0,1,0,1]}"#)).2, 3);
    let taylor = run(
        &["taylor", "--degree-bound-override", "1", "-"],
        Some(r#"{"domain":[4],"codomain":[4],"values":[0,1,0,0]}"#),
    );
    assert_eq!(taylor.2, 3, "{taylor:?}");
    // search guard
    let big = format!(r#"{{"domain":[8],"codomain":[8],"values":{:?}}}"#, vec![0; 8]);
    assert_eq!(run(&["classify", "--oracle", "--max-search", "10", "-"], Some(&big)).2, 4);
}

#[test]
fn eval_with_modulus_and_monomial_basis() {
    let (rep, _, _) = run(&["represent", "--merge", "--basis", "monomial", &fixture("opening.json")], None);
    let poly = fixture_tmp("opening_monomial.json", &rep);
    for x in -4..10i64 {
        let (out, err, code) = run(&["eval", &poly, &x.to_string()], None);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.trim(), if x.rem_euclid(3) == 0 { "1" } else { "0" });
    }
    let (out, _, code) = run(&["eval", "--modulus", "3", &poly, "3"], None);
    assert_eq!((out.trim(), code), ("1", 0));

    let (rep, _, _) = run(&["lagrange", "2", "2", "2", "1"], None);
    let poly = fixture_tmp("lagrange.json", &rep);
    assert_eq!(run(&["eval", &poly, "5"], None).0.trim(), "1");
    assert_eq!(run(&["eval", "--modulus", "2", &poly, "6"], None).0.trim(), "0");
    assert_eq!(run(&["eval", "--modulus", "3", &poly, "6"], None).2, 2);
}

#[test]
fn certify_passes() {
    let (out, err, code) = run(&["certify", "--seed", "7"], None);
    assert_eq!(code, 0, "{out}{err}");
    assert_eq!(out.lines().last(), Some("certify: PASS"));
}
