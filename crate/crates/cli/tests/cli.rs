use std::process::Command;

use mfhh_cli::report::{to_json, GroupJson, MilnorJson};
use mfhh_cli::{run, JsonReport, EXIT_ARITHMETIC, EXIT_HYPOTHESES, EXIT_OK, EXIT_USAGE};
use mfhh_core::EngineKind;

fn mfhh(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("mfhh").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn hh_json_example() {
    let (code, out, _) = mfhh(&["hh", "--exponents", "2,2,3,5", "--stabilize", "--k-min", "0", "--k-max", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.hh.len(), 4);
    assert_eq!(rep.hh[0].k, 0);
    assert_eq!(rep.hh[0].dim, 2);
    assert_eq!(rep.hh[3].dim, 8);
    assert_eq!(rep.engine, EngineKind::ClosedForm);
    assert_eq!(rep.kerchi_order, 60);
    assert_eq!(rep.milnor, 8);
    assert!(out.contains("\"engine\": \"closed-form\""));
}

#[test]
fn json_round_trips_byte_for_byte() {
    let (_, out, _) = mfhh(&["hh", "--exponents", "2,2,3,5", "--stabilize", "--format", "json", "--witnesses"]);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    assert_eq!(to_json(&rep), out);
    let w = &rep.hh.iter().find(|d| d.k == 3).unwrap().witnesses.as_ref().unwrap()[0];
    assert!(w.phases.iter().all(|p| p.contains('/')));
}

#[test]
fn milnor_number() {
    let (code, out, _) = mfhh(&["milnor", "--exponents", "2,2,3,5"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "8\n"));
    let (_, out, _) = mfhh(&["milnor", "--exponents", "2,2,5,7,11,13", "--format", "json"]);
    let m: MilnorJson = serde_json::from_str(&out).unwrap();
    assert_eq!(m.milnor, 2880);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(mfhh(&["verify", "--exponents", "2,2,3,5", "--stabilize"]).0, EXIT_OK);
    assert_eq!(mfhh(&["verify", "--exponents", "5,2,3,2", "--stabilize"]).0, EXIT_OK);
    assert_eq!(mfhh(&["verify", "--exponents", "2,2,4,5", "--stabilize"]).0, EXIT_HYPOTHESES);
    assert_eq!(mfhh(&["verify", "--exponents", "2,2,3,3", "--stabilize"]).0, EXIT_HYPOTHESES);
    assert_eq!(mfhh(&["verify", "--exponents", "2,2,3,5"]).0, EXIT_HYPOTHESES);
}

#[test]
fn parallel_output_is_identical() {
    let base = ["hh", "--exponents", "2,2,3,5,7", "--stabilize", "--format", "json", "--witnesses"];
    let (_, one, _) = mfhh(&base);
    for n in ["2", "5"] {
        let (_, many, _) = mfhh(&[&base[..], &["--parallel", n]].concat());
        assert_eq!(many, one);
    }
}

#[test]
fn csv_and_table_formats() {
    let (code, out, _) = mfhh(&["hh", "--exponents", "2,2,3", "--stabilize", "--k-min", "0", "--k-max", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "k,dim\n0,2\n1,2\n2,2\n");
    let (code, out, _) = mfhh(&["hh", "--exponents", "2,2,3", "--stabilize"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.is_empty());
}

#[test]
fn usage_errors() {
    for args in [
        &["hh"][..],
        &["hh", "--exponents", "2,1"],
        &["hh", "--exponents", "2,3", "--k-min", "3", "--k-max", "1"],
        &["hh", "--exponents", "2,3", "--format", "xml"],
        &["frobnicate", "--exponents", "2,3"],
        &["hh", "--exponents", "2,3", "--parallel", "0"],
    ] {
        let (code, _, err) = mfhh(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn arithmetic_errors() {
    let (code, _, err) = mfhh(&["hh", "--exponents", "3,3,3", "--stabilize"]);
    assert_eq!(code, EXIT_ARITHMETIC);
    assert!(err.contains("AmbiguousGrading"), "{err}");

    let (code, _, err) = mfhh(&["milnor", "--exponents", "4000000000,4000000000,4000000000"]);
    assert_eq!(code, EXIT_ARITHMETIC);
    assert!(err.contains("Overflow"), "{err}");
}

#[test]
fn oracle_agrees() {
    let (code, out, _) = mfhh(&["oracle", "--exponents", "2,2,3,5", "--stabilize", "--k-min", "-4", "--k-max", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("agreement: yes"));
    let (_, out, _) = mfhh(&["oracle", "--exponents", "2,2,3", "--stabilize", "--format", "json"]);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.engine, EngineKind::Oracle);
}

#[test]
fn group_output() {
    let (code, out, _) = mfhh(&["group", "--exponents", "2,2,3,5", "--stabilize", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let g: GroupJson = serde_json::from_str(&out).unwrap();
    assert_eq!(g.kerchi_order, 60);
    assert_eq!(g.elements.len(), 60);
    assert_eq!(g.quotient_by_chi.free_rank, 0);
    assert_eq!(g.quotient_by_chi.torsion.iter().product::<i64>(), 60);
    assert_eq!(g.character_group.free_rank, 1);
    assert_eq!(g.elements[0].phases.iter().filter(|p| *p == "0/1").count(), 5);

    let (code, out, _) = mfhh(&["group", "--exponents", "2,2,3,5", "--stabilize"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("60"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = mfhh(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("--exponents"));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mfhh");
    let ok = Command::new(bin).args(["milnor", "--exponents", "2,3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2\n");
    let bad = Command::new(bin).args(["verify", "--exponents", "2,2,4,5", "--stabilize"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_HYPOTHESES));
    let amb = Command::new(bin).args(["hh", "--exponents", "3,3,3", "--stabilize"]).output().unwrap();
    assert_eq!(amb.status.code(), Some(EXIT_ARITHMETIC));
}
