mod common;

use std::process::Command;

use common::*;
use hfk::{emit_report, parse_machine, run, Format, Input, Mode, RingKind, RunConfig, Strategy};
use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hfk"))
}

fn braid(w: &str) -> RunConfig {
    RunConfig::new(Input::Braid(w.into()))
}

#[test]
fn unknot_run() {
    let r = run(&braid("1")).unwrap();
    assert_eq!(r.n, 2);
    let text = emit_report(&r, Format::Text);
    assert_eq!(text, format!("(0, 0): Z\ngenus 0, fibered true, torsion free true, total rank 1  [{} n=2 z]\n", r.pipeline));
    let m = emit_report(&r, Format::Machine);
    assert!(m.lines().any(|l| l == "0 0 1"));
    assert_eq!(parse_machine(&m).unwrap(), r);
}

#[test]
fn genus_mode_agrees_with_full_run() {
    for name in ["3_1", "4_1", "5_2"] {
        let w: Vec<String> = fixture(name).iter().map(|l| l.to_string()).collect();
        let full = run(&braid(&w.join(" "))).unwrap();
        for mode in [Mode::Genus, Mode::Fibered] {
            let mut c = braid(&w.join(" "));
            c.mode = mode;
            let r = run(&c).unwrap();
            assert_eq!((r.genus, r.fibered), (full.genus, full.fibered), "{name}");
            assert!(r.table.is_none());
        }
    }
}

#[test]
fn trefoil_machine_records() {
    let mut c = braid("1 1 1");
    c.mode = Mode::Torsion;
    let r = run(&c).unwrap();
    let m = emit_report(&r, Format::Machine);
    let records: Vec<&str> = m.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(records, vec!["1 0 1", "0 -1 1", "-1 -2 1"]);
    assert!(records.iter().all(|l| l.split_whitespace().count() == 3));
    assert_eq!(parse_machine(&m).unwrap(), r);
}

#[test]
fn strategies_and_rings_agree() {
    let base = run(&braid("1 1 1")).unwrap().table.unwrap();
    for s in [Strategy::Faithful, Strategy::Fast, Strategy::Paths] {
        for coeff in [RingKind::Integers, RingKind::Mod2] {
            let mut c = braid("1 1 1");
            c.strategy = Some(s);
            c.coeff = coeff;
            c.simplify_budget = 0;
            let t = run(&c).unwrap().table.unwrap();
            let ranks = |t: &hfk::HFKTable| t.groups.iter().map(|(k, g)| (*k, g.rank)).collect::<Vec<_>>();
            assert_eq!(ranks(&t), ranks(&base));
        }
    }
}

#[test]
fn parse_errors() {
    assert!(parse_machine("# ring z\n0 0\n").is_err());
    assert!(parse_machine("# ring q\n").is_err());
    assert!(parse_machine("0 0 1\n").is_err());
    assert!(run(&braid("1 1")).is_err());
    assert!(run(&braid("x")).is_err());
}

#[test]
fn binary_text_and_machine() {
    let out = bin().args(["--braid", "1 1 1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("genus 1, fibered true"));
    let out = bin().args(["--braid", "1 1 1", "--format", "machine", "--strategy", "paths", "--crosscheck", "off"]).output().unwrap();
    assert!(out.status.success());
    let r = parse_machine(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.table.unwrap().total_rank(), 3);
}

#[test]
fn binary_errors_exit_nonzero() {
    for args in [
        vec!["--braid", "1 1"],
        vec!["--braid", "1", "--mode", "torsion", "--coeff", "z2"],
        vec!["--grid", "/nonexistent/grid.txt"],
        vec![],
        vec!["--braid", "1", "--strategy", "slow"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn grid_file_input() {
    let dir = std::env::temp_dir().join(format!("hfk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("trefoil.txt");
    std::fs::write(&grid, trefoil_grid().to_text()).unwrap();
    let word = dir.join("word.txt");
    std::fs::write(&word, "1 1 1\n").unwrap();
    let a = run(&RunConfig::new(Input::File(grid.clone()))).unwrap();
    let b = run(&RunConfig::new(Input::File(word))).unwrap();
    assert_eq!(a.table.as_ref().unwrap().total_rank(), 3);
    // mirror images: same ranks, reflected gradings
    let flip: std::collections::BTreeMap<_, _> = b.table.unwrap().groups.into_iter().map(|((x, m), g)| ((-x, -m), g)).collect();
    assert_eq!(flip, a.table.unwrap().groups);
    let out = bin().args(["--grid", grid.to_str().unwrap(), "--dump-arrangement"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("pieces"));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn machine_round_trip(groups in prop::collection::btree_map((-6i32..=6, -8i32..=8), (0u64..4, prop::collection::vec(2u64..9, 0..2)), 1..8)) {
        let groups: hfk::homology::GradedGroups = groups
            .into_iter()
            .map(|((a, m), (rank, torsion))| ((2 * a, m), hfk::homology::Group { rank: rank.max(1), torsion }))
            .collect();
        let t = hfk::HFKTable::from_groups(RingKind::Integers, groups).unwrap();
        let r = hfk::Report {
            knot: "braid 1".into(),
            n: 2,
            pipeline: "mos".into(),
            ring: RingKind::Integers,
            mode: Mode::Hfk,
            genus: t.genus,
            fibered: t.fibered,
            table: Some(t),
        };
        prop_assert_eq!(parse_machine(&emit_report(&r, Format::Machine)).unwrap(), r);
    }
}
