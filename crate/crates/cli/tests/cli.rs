//! Integration tests of the command layer: file handling, witnesses, output
//! artifacts, determinism, and process exit codes.

use disjoint_kit_cli::commands::{self, CausalOpts, ChiralOpts};
use disjoint_kit_cli::report::Status;
use disjoint_kit_cli::schema::{self, ModelFile};
use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disjoint-kit"))
}

#[test]
fn verify_axioms_passes_on_the_setwise_fixture() {
    let report = commands::cmd_verify_axioms(&fixture("setwise_small.json")).unwrap();
    assert!(report.passed);
}

#[test]
fn verify_axioms_passes_vacuously_on_the_empty_category() {
    let report = commands::cmd_verify_axioms(&fixture("empty_category.json")).unwrap();
    assert!(report.passed);
}

#[test]
fn seeded_violation_fails_and_its_witness_revalidates() {
    let report = commands::cmd_verify_axioms(&fixture("seeded_violation.json")).unwrap();
    assert!(!report.passed);

    // feed the reported witness back through the library operation
    let ModelFile::Disjointness(d) = schema::load(&fixture("seeded_violation.json")).unwrap() else {
        panic!("fixture kind");
    };
    let (cat, table, _) = d.to_core().unwrap();
    let violations = disjoint_kit::disjoint::verify_disjointness_axioms(&cat, &table).violations;
    assert!(!violations.is_empty());
    for v in &violations {
        match v.law.as_str() {
            "pre-composition-stability" => {
                let [f1, f2, g1, g2] = v.witnesses[..] else { panic!("witness shape") };
                assert!(table.related(f1, f2));
                let c1 = cat.compose(f1, g1).unwrap();
                let c2 = cat.compose(f2, g2).unwrap();
                assert!(!table.related(c1, c2), "witness must be a genuine counterexample");
            }
            "iso-post-composition-stability" => {
                let [f1, f2, h] = v.witnesses[..] else { panic!("witness shape") };
                assert!(table.related(f1, f2));
                let c1 = cat.compose(h, f1).unwrap();
                let c2 = cat.compose(h, f2).unwrap();
                assert!(!table.related(c1, c2));
            }
            other => panic!("unexpected law {other}"),
        }
    }
}

#[test]
fn overlap_monics_lists_exactly_the_injective_morphisms() {
    let ModelFile::Disjointness(d) = schema::load(&fixture("setwise_small.json")).unwrap() else {
        panic!("fixture kind");
    };
    let (cat, table, concrete) = d.to_core().unwrap();
    let concrete = concrete.expect("fixture is concrete");
    let ortho = disjoint_kit::disjoint::overlap_monic_subcategory(&cat, &table).unwrap();
    let injective: Vec<usize> = (0..cat.morphism_count())
        .filter(|&f| concrete.maps[f].is_injective())
        .collect();
    assert_eq!(ortho.morphism_map, injective);
}

#[test]
fn overlap_monics_dot_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let dot_path = dir.path().join("category.dot");
    let report =
        commands::cmd_overlap_monics(&fixture("setwise_small.json"), Some(&dot_path)).unwrap();
    assert!(report.passed);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    // structural round-trip: node and edge counts match the category
    let ModelFile::Disjointness(d) = schema::load(&fixture("setwise_small.json")).unwrap() else {
        panic!("fixture kind");
    };
    let (cat, _, _) = d.to_core().unwrap();
    let nodes = dot.lines().filter(|l| l.trim_start().starts_with('o') && !l.contains("->")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!(nodes, cat.object_count());
    let non_identity = (0..cat.morphism_count()).filter(|&f| !cat.is_identity(f)).count();
    assert_eq!(edges, non_identity);
}

#[test]
fn causal_command_reports_classification_and_antichains() {
    let report = commands::cmd_causal(
        &fixture("block5.json"),
        &CausalOpts { classify: true, cauchy: true, ..Default::default() },
    )
    .unwrap();
    assert!(report.passed);
    assert!(report.outcomes.iter().any(|o| o.name.contains("GloballyHyperbolic")));
}

#[test]
fn punctured_theorems_report_the_closure_gap_pair() {
    let report = commands::cmd_causal(
        &fixture("punctured_block.json"),
        &CausalOpts { theorems: true, ..Default::default() },
    )
    .unwrap();
    assert!(report.passed);
    let gap = report
        .outcomes
        .iter()
        .find(|o| o.name.starts_with("closure-gap"))
        .expect("gap outcome present");
    assert!(gap.name.contains("((0, -1), (0, 1))"), "gap pair missing: {}", gap.name);
}

#[test]
fn chiral_quotient_and_fermion_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let bundle_path = dir.path().join("bundle.json");
    let field_path = dir.path().join("field.json");
    let report = commands::cmd_chiral(
        &fixture("chiral_block.json"),
        &ChiralOpts {
            quotient: Some(bundle_path.clone()),
            fermion: Some(fixture("column_data.json")),
            fermion_out: Some(field_path.clone()),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(report.passed);

    let bundle: ModelFile = serde_json::from_str(&std::fs::read_to_string(&bundle_path).unwrap()).unwrap();
    let ModelFile::Bundle(b) = bundle else { panic!("bundle kind") };
    assert_eq!(b.chains, vec![4]);

    let field: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&field_path).unwrap()).unwrap();
    for entry in field["field"].as_array().unwrap() {
        let point = entry["point"].as_array().unwrap();
        assert_eq!(entry["value"].as_f64().unwrap(), point[0].as_f64().unwrap());
    }
}

#[test]
fn chiral_quotient_rejects_non_initial_patches() {
    let err = commands::cmd_chiral(
        &fixture("chiral_cylinder.json"),
        &ChiralOpts {
            quotient: Some(std::env::temp_dir().join("never_written.json")),
            ..Default::default()
        },
    )
    .unwrap_err();
    assert!(err.to_string().contains("precondition"));
}

#[test]
fn suite_reports_are_deterministic() {
    let a = commands::cmd_suite(&fixture("failing_manifest.json")).unwrap();
    let b = commands::cmd_suite(&fixture("failing_manifest.json")).unwrap();
    assert_eq!(a.normalized_json(), b.normalized_json());

    let a = commands::cmd_suite(&fixture("empty_manifest.json")).unwrap();
    assert!(a.passed);
    assert!(a.outcomes.is_empty());
}

#[test]
fn wrong_kind_is_rejected_with_a_diagnostic() {
    let err = commands::cmd_verify_axioms(&fixture("block5.json")).unwrap_err();
    assert!(err.to_string().contains("expected disjointness"));
}

#[test]
fn process_exit_codes() {
    let ok = bin()
        .args(["verify-axioms"])
        .arg(fixture("setwise_small.json"))
        .output()
        .unwrap();
    assert!(ok.status.success());

    let fail = bin()
        .args(["verify-axioms"])
        .arg(fixture("seeded_violation.json"))
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"relation\", \"version\": \"1\"").unwrap();
    let parse = bin().args(["verify-axioms"]).arg(&bad).output().unwrap();
    assert_eq!(parse.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&parse.stderr);
    assert!(stderr.contains("parse error"), "diagnostic missing: {stderr}");
}

#[test]
fn json_format_emits_the_full_report() {
    let out = bin()
        .args(["verify-axioms"])
        .arg(fixture("setwise_small.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suite"], "verify-axioms");
    assert_eq!(report["passed"], true);
    assert!(report["timing"]["total_ms"].is_number());
}

#[test]
fn fail_outcomes_always_carry_witnesses() {
    let report = commands::cmd_verify_axioms(&fixture("seeded_violation.json")).unwrap();
    for o in &report.outcomes {
        if o.status == Status::Fail {
            assert!(!o.witnesses.is_empty());
        }
    }
}

#[test]
fn relation_and_category_schemas_round_trip() {
    use disjoint_kit_cli::schema::{CarrierSchema, RelationFile};
    let file = RelationFile {
        version: "1".into(),
        carrier: CarrierSchema { size: 3, labels: Some(vec!["a".into(), "b".into(), "c".into()]) },
        pairs: vec![(0, 1), (1, 2)],
        basis: Some(vec![vec![vec![0]], vec![vec![1, 0]], vec![vec![2]]]),
    };
    let json = serde_json::to_string(&ModelFile::Relation(file)).unwrap();
    let parsed: ModelFile = serde_json::from_str(&json).unwrap();
    let ModelFile::Relation(r) = parsed else { panic!("kind") };
    let (rel, basis) = r.to_core().unwrap();
    assert!(rel.contains(0, 1) && rel.contains(1, 2) && !rel.contains(2, 0));
    let basis = basis.unwrap();
    assert!(basis.is_filter_base());

    // a category file is the disjointness body without the table
    let ModelFile::Disjointness(d) = schema::load(&fixture("setwise_small.json")).unwrap() else {
        panic!("kind");
    };
    let cat_file = ModelFile::Category(disjoint_kit_cli::schema::CategoryFile {
        version: "1".into(),
        body: d.category.clone(),
    });
    let json = serde_json::to_string(&cat_file).unwrap();
    let parsed: ModelFile = serde_json::from_str(&json).unwrap();
    let ModelFile::Category(c) = parsed else { panic!("kind") };
    let (cat, concrete) = c.body.to_core().unwrap();
    assert!(disjoint_kit::fincat::validate_category(&cat).is_valid());
    assert!(concrete.unwrap().validate(&cat).is_valid());
}
