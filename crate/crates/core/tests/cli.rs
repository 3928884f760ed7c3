use std::process::Command;

use cdlattice::cli::{self, CdReport};
use cdlattice::lattice::FiniteLattice;
use cdlattice::{BruteEngine, SubgroupSet};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["cdlattice"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn cd_reports_for_builtins() {
    let (code, text, _) = run(&["cd", "dihedral:8"]);
    assert_eq!(code, 0);
    let report = CdReport::parse(&text).unwrap();
    assert_eq!(report.members.len(), 5);
    assert_eq!(report.max_measure.to_string(), "2^4");
    assert_eq!(report.max_measure_value, 16);
    assert_eq!(report.covers.len(), 6);

    let (code, text, _) = run(&["cd", "builtin:paper_Gn?p=2&n=2"]);
    assert_eq!(code, 0);
    let report = CdReport::parse(&text).unwrap();
    assert_eq!(report.members.len(), 5);
    assert_eq!(report.max_measure.to_string(), "2^12");
    assert_eq!(report.engine, "class2");

    let (_, text, _) = run(&["cd", "cyclic:12"]);
    let report = CdReport::parse(&text).unwrap();
    assert_eq!(report.max_measure.to_string(), "144");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for group in [
        "dihedral:8",
        "paper_Gn?p=3&n=2",
        "extraspecial?p=2&n=2&type=minus&repr=cayley",
    ] {
        let (_, a, _) = run(&["cd", group]);
        let (_, b, _) = run(&["cd", group]);
        assert_eq!(a, b, "{group}");
    }
}

#[test]
fn report_round_trips_through_export_and_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.json");
    let (code, _, _) = run(&["cd", "dihedral:8", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report = CdReport::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();

    let g = cdlattice::constructions::dihedral(8).unwrap();
    let cd = BruteEngine::new(&g).cd_lattice().unwrap();
    let from_report = report.lattice().unwrap();
    let members: Vec<SubgroupSet> = cd.subgroups().cloned().collect();
    let from_family = FiniteLattice::from_subgroup_family(
        &members,
        |a, b| a.is_subset(b),
        |a, b| g.intersect(a, b),
        |a, b| g.join(a, b),
    )
    .unwrap();
    assert_eq!(from_report.covers(), from_family.covers());
    assert_eq!(from_report.covers(), cd.to_lattice().covers());

    let (code, dot, _) = run(&["export", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("->").count(), 6);
    assert_eq!(dot.matches("[label=").count(), 5);
    assert!(dot.contains("order=2^3, m=2^4"));
    let (_, again, _) = run(&["export", path.to_str().unwrap()]);
    assert_eq!(dot, again);
}

#[test]
fn export_edge_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (group, nodes, edges) in [("paper_P:2", 2, 1), ("paper_Gn?p=3&n=2", 6, 8)] {
        let path = dir.path().join("r.json");
        assert_eq!(run(&["cd", group, "-o", path.to_str().unwrap()]).0, 0);
        let (code, dot, _) = run(&["export", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(dot.matches("[label=").count(), nodes, "{group}");
        assert_eq!(dot.matches("->").count(), edges, "{group}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind": "cayley", "order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 2, 1]]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["cd", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("row 2"), "{err}");

    assert_eq!(run(&["verify", "no-such-check"]).0, 2);
    assert_eq!(run(&["cd", "cyclic:200"]).0, 2);
    assert_eq!(run(&["cd", "dihedral:8", "--engine", "class2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"group": "x"}"#).unwrap();
    assert_eq!(run(&["export", broken.to_str().unwrap()]).0, 2);

    let (code, text, _) = run(&["verify", "theorem-b", "--p", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("pass"), "{text}");
    let (code, text, _) = run(&["verify", "scalar-matrix-lemma", "--n", "2", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("not_applicable"), "{text}");
}

#[test]
fn class2_spec_file_through_both_engines() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("heis.json");
    std::fs::write(
        &spec,
        r#"{"kind": "class2", "name": "heisenberg3", "p": 3, "r": 2, "s": 1, "commutators": [[1, 0, [1]]]}"#,
    )
    .unwrap();
    let (_, a, _) = run(&["cd", spec.to_str().unwrap(), "--engine", "class2"]);
    let (_, b, _) = run(&["cd", spec.to_str().unwrap(), "--engine", "brute"]);
    let (a, b) = (CdReport::parse(&a).unwrap(), CdReport::parse(&b).unwrap());
    assert_eq!(a.group, "heisenberg3");
    assert_eq!(a.max_measure, b.max_measure);
    assert_eq!(a.covers, b.covers);
    let orders = |r: &CdReport| {
        r.members
            .iter()
            .map(|m| m.order.clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(orders(&a), orders(&b));
}

#[test]
fn binary_entry_point() {
    let bin = env!("CARGO_BIN_EXE_cdlattice");
    let out = Command::new(bin)
        .args(["cd", "quaternion:8", "--format", "text"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("5 members"));
    let out = Command::new(bin).args(["verify", "all"]).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let status = Command::new(bin)
        .args(["cd", "nonsense:1"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}
