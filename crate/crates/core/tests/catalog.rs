use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use proptest::prelude::*;

use sylsplit::catalog::{load_catalog, GroupFile};
use sylsplit::report::{emit_report, parse_report, Format, ReportRecord};
use sylsplit::theorem::{CaseTag, CheckStatus, Mode, Verdict};
use sylsplit::Error;

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

#[test]
fn shipped_catalog() {
    let entries = load_catalog(&catalog_dir()).unwrap();
    assert!(entries.len() >= 25);
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.iter().collect::<HashSet<_>>().len(), names.len());
    let example = entries.iter().find(|e| e.name == "a6-c4-example").unwrap();
    assert!(example.has_tag("counterexample"));
    assert_eq!(entries.iter().filter(|e| e.has_tag("counterexample")).count(), 1);
    for e in &entries {
        assert!(e.to_group().is_ok(), "{}", e.name);
    }
}

#[test]
fn single_file_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(catalog_dir().join("s4.json"), dir.path().join("s4.json")).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let entries = load_catalog(dir.path()).unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].degree, 4);
    assert_eq!(entries[0].generators.len(), 2);
    assert_eq!(load_catalog(&dir.path().join("s4.json")).unwrap(), entries);
}

#[test]
fn duplicate_names_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(catalog_dir().join("s4.json"), dir.path().join("a.json")).unwrap();
    std::fs::copy(catalog_dir().join("s4.json"), dir.path().join("b.json")).unwrap();
    match load_catalog(dir.path()) {
        Err(Error::Catalog { file, token, .. }) => {
            assert!(file.ends_with("b.json"));
            assert_eq!(token, "s4");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn out_of_range_point_names_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let group = GroupFile {
        name: "bad".into(),
        degree: 6,
        generators: vec!["(1,2)".into(), "(3,7)".into()],
        tags: None,
    };
    std::fs::write(dir.path().join("bad.json"), serde_json::to_string_pretty(&group).unwrap()).unwrap();
    match load_catalog(dir.path()) {
        Err(Error::Catalog { line, token, file, .. }) => {
            assert!(file.ends_with("bad.json"));
            assert_eq!(token, "7");
            assert_eq!(line, 6);
        }
        other => panic!("{other:?}"),
    }
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![
        Just(Verdict::Verified),
        Just(Verdict::Counterexample),
        Just(Verdict::HypothesisNotSatisfied),
        Just(Verdict::Error),
    ]
}

fn case() -> impl Strategy<Value = CaseTag> {
    prop_oneof![
        Just(CaseTag::SylowNormal),
        Just(CaseTag::Solvable),
        Just(CaseTag::ZInO22),
        Just(CaseTag::OddP),
        Just(CaseTag::None),
    ]
}

fn status() -> impl Strategy<Value = CheckStatus> {
    prop_oneof![Just(CheckStatus::Pass), Just(CheckStatus::Fail), Just(CheckStatus::Skipped)]
}

fn factors() -> impl Strategy<Value = Option<Vec<u64>>> {
    proptest::option::of(proptest::collection::vec(1u64..1000, 0..4))
}

prop_compose! {
    fn record()(
        group in "[a-z0-9-]{1,12}",
        prime in 2u64..100,
        mode in prop_oneof![Just(Mode::Wgs), Just(Mode::Zf), Just(Mode::All)],
        case in proptest::option::of(case()),
        verdicts in (verdict(), proptest::option::of(verdict()), proptest::option::of(verdict())),
        zs in factors(), w in factors(), kernel in factors(),
        checks in proptest::collection::btree_map("[a-z_]{1,10}", status(), 0..4),
        error in proptest::option::of(".{0,20}"),
        timing in proptest::option::of(0.0f64..1e6),
    ) -> ReportRecord {
        ReportRecord {
            group, prime, mode, case,
            verdict: verdicts.0, wgs_verdict: verdicts.1, zf_verdict: verdicts.2,
            zs_factors: zs, w_factors: w, kernel_factors: kernel,
            cross_checks: checks.into_iter().collect::<BTreeMap<_, _>>(),
            error, timing_ms: timing,
        }
    }
}

proptest! {
    #[test]
    fn records_round_trip(records in proptest::collection::vec(record(), 0..5)) {
        let text = emit_report(&records, Format::Json);
        prop_assert_eq!(parse_report(&text).unwrap(), records.clone());
        // stable rendering
        prop_assert_eq!(emit_report(&records, Format::Json), text);
        let md = emit_report(&records, Format::Markdown);
        prop_assert_eq!(md.lines().skip(2).take_while(|l| l.starts_with("| ")).count(), records.len());
    }
}
