//! The installed binary, driven end to end.

use std::process::Command;

use serde_json::Value;

fn gradiv(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradiv")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().unwrap(), json)
}

#[test]
fn oracle_equivalence_with_witness() {
    let (code, v) = gradiv(&["equiv", "D(2,2;-,-) * D(2,2;-,-)", "D(2,2;+,+) * D(2,2;+,+)", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "gradiv.equiv/1");
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["witness"]["gen_images"].as_array().unwrap().len(), 4);
}

#[test]
fn non_equivalence_carries_a_certificate() {
    let (code, v) = gradiv(&["equiv", "H4", "M2_4"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "not_equivalent");
    assert!(v["certificate"]["invariant"].is_string());
}

#[test]
fn normalize_reports_label_and_trace() {
    let (code, v) = gradiv(&["normalize", "C(2;-) * C(4;-)"]);
    assert_eq!(code, 0);
    assert_eq!(v["label"], "RC[C(2;-)*RG[Z2]]");
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn classes_over_the_klein_group() {
    let (code, v) = gradiv(&["classes", "--group", "Z2xZ2"]);
    assert_eq!(code, 0);
    let labels: Vec<&str> = v["classes"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels.len(), 13);
    let mut dedup = labels.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), labels.len());
}

#[test]
fn lemma_table_and_decomposition() {
    let (code, v) = gradiv(&["verify-lemmas", "--max-exp", "3"]);
    assert_eq!(code, 0);
    let statuses: Vec<&str> = v["rules"].as_array().unwrap().iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert!(statuses.iter().all(|s| *s == "pass" || *s == "discrepancy"), "{statuses:?}");
    let (code, v) = gradiv(&["decompose", "C(2;+) * C(2;+)"]);
    assert_eq!(code, 0);
    assert_eq!((v["real"].as_u64(), v["complex"].as_u64()), (Some(4), Some(0)));
}

#[test]
fn bad_input_exits_three() {
    let (code, v) = gradiv(&["normalize", "Q(1)"]);
    assert_eq!(code, 3);
    assert_eq!((v["error"].as_str(), v["position"].as_u64()), (Some("syntax"), Some(0)));
    let (code, v) = gradiv(&["normalize", "E(6;+)"]);
    assert_eq!(code, 3);
    assert_eq!(v["schema"], "gradiv.error/1");
}
