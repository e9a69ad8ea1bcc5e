use std::path::{Path, PathBuf};
use std::process::Command;

use maxcsp_cli::{
    cmd_classify, cmd_count, cmd_encode_bis, cmd_gadget, cmd_reduce, cmd_witness, CountMode,
    CountOptions, MethodChoice,
};
use maxcsp_core::{parse, ApproxComplexity, ExactComplexity, GadgetCase, Method};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn count(name: &str, mode: CountMode, method: MethodChoice) -> (String, Method) {
    let options = CountOptions {
        mode,
        method,
        verify: true,
        ..CountOptions::default()
    };
    let c = cmd_count(&fixture(name), options).unwrap().count.unwrap();
    (c.value, c.method)
}

fn maxcsp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_maxcsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn classify_fixtures() {
    let cases = [
        (
            "implies.txt",
            ExactComplexity::SharpPComplete,
            ApproxComplexity::BisEquivalent,
        ),
        (
            "or.txt",
            ExactComplexity::Polynomial,
            ApproxComplexity::FpMonotone,
        ),
        (
            "parity.txt",
            ExactComplexity::Polynomial,
            ApproxComplexity::FpAffine,
        ),
        (
            "nand.txt",
            ExactComplexity::SharpPComplete,
            ApproxComplexity::SatEquivalent,
        ),
    ];
    for (file, exact, approx) in cases {
        let c = cmd_classify(&fixture(file))
            .unwrap()
            .classification
            .unwrap();
        assert_eq!((c.exact, c.approx), (exact, approx), "{file}");
    }
}

#[test]
fn count_methods() {
    use CountMode::*;
    use MethodChoice::*;
    assert_eq!(count("worked.txt", Max, Brute), ("3".into(), Method::Brute));
    assert_eq!(count("worked.txt", All, Brute).0, "12");
    assert_eq!(
        count("implies_edge.txt", Max, Im2),
        ("1".into(), Method::Im2Pipeline)
    );
    assert_eq!(
        count("implies_edge.txt", All, Auto),
        ("3".into(), Method::Im2Pipeline)
    );
    assert_eq!(
        count("parity_instance.txt", Max, Affine),
        ("4".into(), Method::Affine)
    );
    assert_eq!(count("parity_instance.txt", Max, Auto).1, Method::Affine);
    assert_eq!(
        count("nand_path.txt", Max, Auto),
        ("2".into(), Method::Brute)
    );
    assert_eq!(
        count("or_instance.txt", Max, Auto),
        ("1".into(), Method::Monotone)
    );
}

#[test]
fn forced_method_must_match_language() {
    let options = CountOptions {
        method: MethodChoice::Affine,
        ..CountOptions::default()
    };
    let err = cmd_count(&fixture("implies_edge.txt"), options).unwrap_err();
    assert!(err.to_string().contains("not affine"), "{err}");
}

#[test]
fn brute_force_respects_the_cap() {
    let options = CountOptions {
        method: MethodChoice::Brute,
        cap: 4,
        ..CountOptions::default()
    };
    let err = cmd_count(&fixture("worked.txt"), options).unwrap_err();
    assert!(err.to_string().contains("above the cap of 4"), "{err}");
}

#[test]
fn gadget_for_nand() {
    let g = cmd_gadget(&fixture("nand.txt"), "NAND")
        .unwrap()
        .gadget
        .unwrap();
    assert_eq!(g.case, GadgetCase::Case2a);
    assert_eq!(
        (g.profile.n_max0, g.profile.n_max1, g.profile.n_bad),
        (1, 1, 0)
    );
    assert_eq!(g.constraints, ["NAND(w,w)", "NAND(x,r)"]);
    assert!(cmd_gadget(&fixture("or.txt"), "OR").is_err());
    assert!(cmd_gadget(&fixture("nand.txt"), "XOR").is_err());
}

#[test]
fn witness_for_implies() {
    let w = cmd_witness(&fixture("implies.txt"))
        .unwrap()
        .witnesses
        .unwrap();
    assert_eq!(w.witnesses.non_im2, None);
    assert_eq!(w.witnesses.non_affine.as_deref(), Some("Implies"));
    assert!(w.bis_product.is_some());
    assert!(w.sat_product.is_none());
}

#[test]
fn reduce_writes_a_parsable_instance_with_the_same_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reduced.txt");
    let report = cmd_reduce(&fixture("nand_path.txt"), "NAND", &out).unwrap();
    assert_eq!(report.output.unwrap().variables, 9);
    let reduced = parse(&std::fs::read_to_string(&out).unwrap())
        .unwrap()
        .instance
        .unwrap();
    assert_eq!(reduced.variable_count(), 9);
    let options = CountOptions {
        method: MethodChoice::Brute,
        ..CountOptions::default()
    };
    let max = cmd_count(&out, options).unwrap().count.unwrap().value;
    let all = count("nand_path.txt", CountMode::All, MethodChoice::Brute).0;
    assert_eq!(max, all);

    // The output uses the reserved infix, so it cannot be reduced again.
    let err = cmd_reduce(&out, "NAND", &dir.path().join("again.txt")).unwrap_err();
    assert!(err.to_string().contains("reserved"), "{err}");
}

#[test]
fn encode_bis_writes_an_implication_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bis.txt");
    cmd_encode_bis(&fixture("single_edge.txt"), &out).unwrap();
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "relation Implies 2 00 01 11\nvar u v\nconstraint Implies u v\n"
    );
}

#[test]
fn binary_reports_are_stable_and_exit_codes_match() {
    let file = fixture("worked.txt");
    let args = [
        "count",
        "--instance",
        file.to_str().unwrap(),
        "--mode",
        "max",
    ];
    let first = maxcsp(&args);
    let second = maxcsp(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let unsat = fixture("unsat.txt");
    let zero = maxcsp(&[
        "count",
        "--instance",
        unsat.to_str().unwrap(),
        "--mode",
        "all",
    ]);
    assert!(zero.status.success());
    assert!(String::from_utf8_lossy(&zero.stdout).contains("\"value\": \"0\""));

    let bad = fixture("bad_width.txt");
    let failed = maxcsp(&["classify", "--language", bad.to_str().unwrap()]);
    assert!(!failed.status.success());
    assert!(failed.stdout.is_empty());
    let stderr = String::from_utf8_lossy(&failed.stderr);
    assert!(stderr.contains("bad_width.txt:1:17:"), "{stderr}");
}
