use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use cubical::boxcat::BoxMap;
use cubical::io::{parse_map, parse_presheaf, serialize_map, serialize_presheaf};
use cubical::model::{q_generator, Shape};
use cubical::presheaf::{Presheaf, PresheafMap};
use cubical::qshape::{cube_map, pi, q_object};
use cubical::Flavor;
use tempfile::TempDir;

fn cubical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn box_enum_counts() {
    let o = cubical(&["box", "enum", "1", "2"]);
    assert!(o.status.success());
    // Two constant or one Max coordinate each, with increasing supports.
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), BoxMap::enumerate(1, 2).len());
    assert!(lines.contains(&"(0, max{1})".to_string()));
}

#[test]
fn box_compose_and_nf() {
    let o = cubical(&["box", "compose", "1", "s2", "d1^0"]);
    assert_eq!(stdout(&o), "(0)\n");
    let o = cubical(&["box", "nf", "2", "(max{1,2})"]);
    assert_eq!(stdout(&o), "g1\n");
    let o = cubical(&["box", "nf", "2", "(max{3})"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn q_cells_matches_library() {
    let o = cubical(&["q", "cells", "2", "--max-dim", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), serialize_presheaf(&q_object(2, 2)));
}

#[test]
fn functor_pipeline() {
    let dir = TempDir::new().unwrap();
    let q2 = write(dir.path(), "q2.json", &serialize_presheaf(&q_object(2, 2)));
    let iq2 = dir.path().join("iq2.json");
    let o = cubical(&["functor", "int", "--max-dim", "2", "--input", s(&q2), "--output", s(&iq2)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let simplex = parse_presheaf(&std::fs::read_to_string(&iq2).unwrap()).unwrap();
    assert_eq!(simplex.nondegenerate_counts(), vec![3, 3, 1]);

    let o = cubical(&["functor", "q", "--max-dim", "2", "--input", s(&iq2)]);
    let back = parse_presheaf(&stdout(&o)).unwrap();
    assert_eq!(back.counts(), q_object(2, 2).counts());

    let tq2 = dir.path().join("tq2.json");
    cubical(&["functor", "tri", "--max-dim", "3", "--input", s(&q2), "--output", s(&tq2)]);
    let o = cubical(&["homology", "--reduced", "--input", s(&tq2)]);
    assert_eq!(stdout(&o), "H_-1 = 0\nH_0 = 0\nH_1 = 0\nH_2 = 0\n");

    let o = cubical(&["functor", "cmp-product", "--max-dim", "2", "--input", s(&iq2), "--input", s(&iq2)]);
    assert!(parse_map(&stdout(&o)).unwrap().is_mono());
    let o = cubical(&["functor", "gprod", "--max-dim", "2", "--input", s(&q2)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn functor_requires_max_dim() {
    let o = cubical(&["functor", "q", "--input", "x.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_at_truncation_is_refused() {
    let dir = TempDir::new().unwrap();
    let d2 = write(dir.path(), "d2.json", &serialize_presheaf(&Presheaf::representable(Flavor::Simplicial, 2, 2)));
    let o = cubical(&["homology", "--input", s(&d2)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"kind\": \"cubical\",");
    let o = cubical(&["homology", "--input", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

fn lift_files(dir: &Path, i: &PresheafMap, p: &PresheafMap, top: &PresheafMap, bottom: &PresheafMap) -> Vec<String> {
    let mut args = Vec::new();
    for (flag, m) in [("--i", i), ("--p", p), ("--top", top), ("--bottom", bottom)] {
        let path = write(dir, &format!("{}.json", &flag[2..]), &serialize_map(m));
        args.push(flag.to_string());
        args.push(s(&path).to_string());
    }
    args
}

#[test]
fn lift_found_and_enumerated() {
    let dir = TempDir::new().unwrap();
    let point = Arc::new(Presheaf::representable(Flavor::Cubical, 0, 2));
    let interval = Arc::new(Presheaf::representable(Flavor::Cubical, 1, 2));
    let end = cube_map(&BoxMap::vertex(0, 1, 1), 2);
    let args = lift_files(
        dir.path(),
        &PresheafMap::from_empty(point),
        &PresheafMap::identity(interval.clone()),
        &PresheafMap::from_empty(interval),
        &end,
    );
    let mut argv = vec!["lift"];
    argv.extend(args.iter().map(String::as_str));
    let o = cubical(&argv);
    assert!(o.status.success());
    assert_eq!(parse_map(&stdout(&o)).unwrap(), end);
    argv.push("--all");
    let o = cubical(&argv);
    assert!(stdout(&o).starts_with("[\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 lift"));
}

#[test]
fn no_lift_exits_one() {
    let dir = TempDir::new().unwrap();
    let g = q_generator(Shape::BoundarySimplex { n: 2 }, 2).unwrap();
    let cube = Arc::new(Presheaf::representable(Flavor::Cubical, 2, 2));
    let args = lift_files(
        dir.path(),
        &PresheafMap::from_empty(cube),
        &g.map,
        &PresheafMap::from_empty(g.map.source().clone()),
        &pi(2, 2),
    );
    let mut argv = vec!["lift"];
    argv.extend(args.iter().map(String::as_str));
    assert_eq!(cubical(&argv).status.code(), Some(1));
}

#[test]
fn check_machine_report() {
    let o = cubical(&["check", "boxcat", "--format", "machine"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let ids: Vec<_> = out.lines().map(|l| l.split('\t').collect::<Vec<_>>()).collect();
    assert_eq!(ids.len(), 3);
    assert!(ids.iter().all(|f| f.len() == 3 && f[1] == "pass"));
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(sorted, ids);
}

#[test]
fn check_reports_are_deterministic() {
    let a = cubical(&["check", "qshape", "--format", "machine"]);
    let b = cubical(&["check", "qshape", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_with_fault_fails() {
    let o = cubical(&["check", "coreflection", "--inject-fault", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("coreflection.counit-mono")).unwrap();
    assert!(line.contains("\tfail\tQ^2"), "{line}");
}

#[test]
fn check_unknown_suite() {
    assert_eq!(cubical(&["check", "nope"]).status.code(), Some(2));
}

#[test]
fn check_pushout_squares_alias() {
    let o = cubical(&["check", "pushout-squares", "--k", "2", "--format", "machine"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("model.degeneracy-pushouts\tpass"));
}
