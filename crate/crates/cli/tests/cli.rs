use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn permcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn group_info_s4() {
    let o = permcheck(&["group-info", "S:4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order: 24"));
    assert!(s.contains("solvable: true"));
    assert!(s.contains("nilpotent: false"));
    assert!(s.contains("radical order: 24"));
    assert!(s.contains("sylow 2: 8"));
}

#[test]
fn group_info_psl27_json() {
    let v = json(&permcheck(&["group-info", "PSL2:7", "--format", "json"]));
    assert_eq!(v["order"], 168);
    assert_eq!(v["solvable"], false);
    assert_eq!(v["radical_order"], 1);
    assert_eq!(v["sylow_orders"]["7"], 7);
}

#[test]
fn group_info_m12_class_count() {
    let v = json(&permcheck(&["group-info", "M:12", "--format", "json"]));
    assert_eq!(v["order"], 95040);
    assert_eq!(v["class_count"], 15);
}

#[test]
fn group_info_over_cap_is_partial() {
    let o = permcheck(&["group-info", "A:7", "--cap", "100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["order"], 2520);
    assert!(v["class_count"].is_null());
    assert!(v["unavailable"]["class_count"].is_string());
}

#[test]
fn class_graph_of_s3_to_dot() {
    let o = permcheck(&["graph", "S:3", "--kind", "class", "--relation", "solvable"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("[label=").count(), 2);
    assert_eq!(s.matches(" -- ").count(), 1);
}

#[test]
fn commuting_graph_of_c4_is_complete() {
    let v = json(&permcheck(&[
        "graph",
        "C:4",
        "--relation",
        "commuting",
        "--format",
        "json",
    ]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn generating_class_graph_is_a_usage_error() {
    let o = permcheck(&[
        "graph",
        "S:3",
        "--kind",
        "class",
        "--relation",
        "generating",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_a5_thm_solvable_has_witness() {
    let o = permcheck(&["verify", "A:5", "--checks", "thm-solvable"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["check"], "thm-solvable");
    assert_eq!(reports[0]["outcome"]["status"], "consistent");
    assert!(!reports[0]["witness"].as_array().unwrap().is_empty());
    assert_eq!(reports[0]["stats"]["millis"], 0);
}

#[test]
fn verify_over_cap_is_skipped_not_failed() {
    let o = permcheck(&["verify", "A:10", "--checks", "property-star"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["outcome"]["status"], "skipped");
    assert!(v[0]["outcome"]["reason"].as_str().unwrap().contains("cap"));
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = permcheck(&[
            "verify",
            "S:4",
            "A:5",
            "PSL2:7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names.len(), 2, "no temporary files left behind: {names:?}");
}

#[test]
fn verify_reads_manifest_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("groups.txt");
    fs::write(&m, "# small groups\nS:3\n\nD:5  # dihedral of order 10\n").unwrap();
    let o = permcheck(&[
        "verify",
        "--manifest",
        m.to_str().unwrap(),
        "--checks",
        "thm-nilpotent,minimal-non-nilpotent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn verify_default_corpus_exits_zero() {
    let o = permcheck(&["verify", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(!s.contains("inconsistent"));
    assert!(s.contains("M:22"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        permcheck(&["verify", "--checks", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(permcheck(&["group-info", "X:9"]).status.code(), Some(1));
    assert_eq!(
        permcheck(&["group-info", "S:4", "--cap", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        permcheck(&["table", "B", "--format", "dot"]).status.code(),
        Some(1)
    );
    assert_eq!(permcheck(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn table_b_full_range() {
    let o = permcheck(&["table", "B", "--range", "5..41"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = |n: usize| {
        s.lines()
            .find(|l| l.starts_with(&format!("A{n}:")))
            .unwrap()
            .to_string()
    };
    assert_eq!(line(24), "A24: EMPTY");
    assert!(line(12).contains("(9, 27)"));
    assert!(line(16).contains("(13, 39)"));
    assert!(line(23).contains("(11, 121)"));
    assert!(line(35).contains("(25, 625)"));
}

#[test]
fn table_b_csv_marks_empty() {
    let o = permcheck(&["table", "B", "--range", "24..24", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,order,centralizer,cycle_type\n24,EMPTY,,\n");
}

#[test]
fn table_c_subset_has_psl33_row() {
    let s = stdout(&permcheck(&["table", "C-subset", "--format", "csv"]));
    assert!(s.contains("PSL3:3,3B,3,9"));
    assert!(s.contains("PSL2:7,3A,3,3"));
}

#[test]
fn table_a_subset_json() {
    let v = json(&permcheck(&["table", "A-subset", "--format", "json"]));
    assert!(v["M:12"].as_array().unwrap().is_empty());
    let m11 = v["M:11"].as_array().unwrap();
    assert!(m11
        .iter()
        .any(|r| r["element_order"] == 5 && r["centralizer_order"] == 5));
}

#[test]
fn table_d_m11_orders() {
    let v = json(&permcheck(&["table", "D-m11", "--format", "json"]));
    assert_eq!(v["solvable_pairs"], 0);
    for o in v["subgroup_orders"].as_array().unwrap() {
        assert!(o == 660 || o == 7920, "unexpected order {o}");
    }
}
