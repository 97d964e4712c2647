use std::collections::BTreeSet;
use std::process::Command;

use gleason_lab::scalar::Algebra;
use gleason_lab_cli::{
    emit_report, parse_report, run_suite, Format, RunConfig, Status, SuiteReport,
};
use serde_json::Value;

fn cfg(algebras: &[Algebra], dims: &[usize], trials: usize) -> RunConfig {
    RunConfig {
        algebras: algebras.to_vec(),
        dims: dims.to_vec(),
        trials,
        ..RunConfig::default()
    }
    .validated()
    .unwrap()
}

fn records<'a>(r: &'a SuiteReport, name: &str) -> Vec<&'a gleason_lab_cli::Record> {
    r.records.iter().filter(|rec| rec.name == name).collect()
}

#[test]
fn quaternionic_dim_three_passes() {
    let r = run_suite(&cfg(&[Algebra::Quaternion], &[3], 10));
    assert_eq!(
        r.summary.failed,
        0,
        "{:#?}",
        r.records.iter().filter(|x| !x.pass()).collect::<Vec<_>>()
    );
    assert_eq!(r.exit_code(), 0);
    assert!(r
        .records
        .iter()
        .all(|x| x.status != Status::Skipped || x.note.is_some()));
    assert_eq!(records(&r, "gleason.round_trip")[0].status, Status::Pass);
}

#[test]
fn dim_two_skips_round_trip_and_shows_counterexample() {
    let r = run_suite(&cfg(&Algebra::ALL, &[2], 5));
    for rec in records(&r, "gleason.round_trip") {
        assert_eq!(rec.status, Status::Skipped);
        assert_eq!(rec.note.as_deref(), Some("dim>2 required"));
        assert_eq!(rec.max_residual, None);
    }
    for rec in records(&r, "counterexample.dim2_measure") {
        assert_eq!(rec.status, Status::Pass);
        assert!(rec.observed.unwrap() > 0.05);
    }
    assert_eq!(r.summary.failed, 0);
}

#[test]
fn real_dim_four_gap_is_four() {
    let r = run_suite(&cfg(&[Algebra::Real], &[4], 10));
    let rec = records(&r, "counterexample.real_absolute_sum")[0];
    assert_eq!(rec.status, Status::Pass);
    assert!((rec.observed.unwrap() - 4.0).abs() < 1e-10);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let c = RunConfig {
        seeds: vec![3, 5],
        ..cfg(&[Algebra::Complex, Algebra::Quaternion], &[2, 3], 3)
    };
    let first = emit_report(&run_suite(&c), Format::Json);
    let second = emit_report(&run_suite(&c), Format::Json);
    assert_eq!(first, second);
    let parsed = parse_report(&first).unwrap();
    assert_eq!(emit_report(&parsed, Format::Json), first);
    assert_eq!(parsed, run_suite(&c));
}

#[test]
fn full_run_covers_the_manifest() {
    let manifest: Vec<Value> =
        serde_json::from_str(include_str!("../manifest/properties.json")).expect("manifest parses");
    let declared: BTreeSet<(String, String)> = manifest
        .iter()
        .map(|v| {
            (
                v["name"].as_str().unwrap().to_string(),
                v["statement"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let r = run_suite(&RunConfig {
        trials: 2,
        ..RunConfig::default()
    });
    let ran: BTreeSet<(String, String)> = r
        .records
        .iter()
        .filter(|rec| rec.status != Status::Skipped)
        .map(|rec| (rec.name.clone(), rec.statement.clone()))
        .collect();
    assert_eq!(ran, declared);
    assert_eq!(r.summary.failed, 0);
}

#[test]
fn schema_lists_every_emitted_field() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/report-schema.json")).unwrap();
    let report: Value = serde_json::from_slice(&emit_report(
        &run_suite(&cfg(&[Algebra::Real], &[2], 1)),
        Format::Json,
    ))
    .unwrap();
    let keys = |v: &Value| {
        v.as_object()
            .unwrap()
            .keys()
            .cloned()
            .collect::<BTreeSet<_>>()
    };
    let declared = |v: &Value| keys(&v["properties"]);
    assert_eq!(keys(&report), declared(&schema));
    assert_eq!(
        keys(&report["config"]),
        declared(&schema["properties"]["config"])
    );
    assert_eq!(
        keys(&report["summary"]),
        declared(&schema["properties"]["summary"])
    );
    let record_fields = declared(&schema["$defs"]["record"]);
    for rec in report["records"].as_array().unwrap() {
        assert!(keys(rec).is_subset(&record_fields));
        for req in schema["$defs"]["record"]["required"].as_array().unwrap() {
            assert!(rec.get(req.as_str().unwrap()).is_some());
        }
    }
}

fn binary() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gleason-lab"));
    c.env_remove("GLEASON_LAB_SEED");
    c
}

#[test]
fn binary_writes_reports_and_sets_exit_codes() {
    let dir = std::env::temp_dir().join(format!("gleason-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let status = binary()
        .args([
            "--algebra",
            "H",
            "--dim",
            "3",
            "--trials",
            "2",
            "--only",
            "trace.*",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    let report = parse_report(&std::fs::read(&out).unwrap()).unwrap();
    assert!(report.records.iter().all(|r| r.name.starts_with("trace.")));

    // an impossible tolerance fails the run
    let status = binary()
        .args([
            "--algebra",
            "C",
            "--dim",
            "3",
            "--only",
            "trace.real_cyclicity",
            "--tol",
            "trace.real_cyclicity=1e-300",
        ])
        .args(["--trials", "20", "--format", "text"])
        .output()
        .unwrap();
    let text = String::from_utf8(status.stdout).unwrap();
    assert_eq!(status.status.code(), Some(1), "{text}");
    assert!(text.starts_with("FAIL trace.real_cyclicity"));

    // config file with the seed from the environment, flags on top
    let config = dir.join("config.json");
    std::fs::write(
        &config,
        r#"{"algebras": ["R"], "dims": [2], "trials": 1, "only": "gleason.*"}"#,
    )
    .unwrap();
    let output = binary()
        .env("GLEASON_LAB_SEED", "77")
        .arg("--config")
        .arg(&config)
        .args(["--dim", "3"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let report = parse_report(&output.stdout).unwrap();
    assert_eq!(report.config.seeds, vec![77]);
    assert_eq!(report.config.dims, vec![3]);
    assert!(report
        .records
        .iter()
        .all(|r| r.seed == 77 && r.dim == 3 && r.algebra == Algebra::Real));

    assert_eq!(
        binary()
            .args(["--dim", "0"])
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn binary_lists_and_demos() {
    let list = binary().arg("--list").output().unwrap();
    assert!(list.status.success());
    let manifest: Vec<Value> =
        serde_json::from_str(include_str!("../manifest/properties.json")).unwrap();
    assert_eq!(
        String::from_utf8(list.stdout).unwrap().lines().count(),
        manifest.len()
    );

    let demo = binary().arg("--demo").output().unwrap();
    assert!(demo.status.success());
    let text = String::from_utf8(demo.stdout).unwrap();
    assert!(text.contains("trace over {1} = 0 + 1j") && text.contains("trace over {i} = 0 - 1j"));
}
