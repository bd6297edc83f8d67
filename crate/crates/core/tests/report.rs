use kissing::exact::Rational;
use kissing::lattice::catalog;
use kissing::shells::{enumerate_shell, ShellQuery};
use kissing::theta::leech_coefficients;
use kissing::verify::{report, verify, Status, VerifyOptions, CLAIM_IDS, REPORT_SCHEMA};
use serde_json::Value;

#[test]
fn every_claim_passes_by_default() {
    for id in CLAIM_IDS {
        let r = verify(id, VerifyOptions::default()).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(failed.is_empty(), "{id}: {failed:#?}");
    }
}

#[test]
fn json_report_matches_schema_and_is_deterministic() {
    let r = report(VerifyOptions::default()).unwrap();
    assert!(r.pass);
    let text = r.to_json();
    let instance: Value = serde_json::from_str(&text).unwrap();
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(&instance) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
    let mut broken = instance.clone();
    broken["alpha_table"][0]["at_method"] = Value::from("guess");
    assert!(!compiled.is_valid(&broken));
    let again = report(VerifyOptions { threads: Some(2), ..Default::default() }).unwrap().to_json();
    assert_eq!(text, again);
    assert!(!text.contains("runtime_ms"));
}

#[test]
fn timings_are_opt_in() {
    let r = verify("remark51", VerifyOptions { timings: true, ..Default::default() }).unwrap();
    assert!(r.runtime_ms.is_some());
}

#[test]
fn markdown_reproduces_both_tables() {
    let md = report(VerifyOptions::default()).unwrap().to_markdown();
    assert!(md.contains("| 8 | ≤510 | =2400 | 510 | 2400 (E8:2, enumeration) |"), "{md}");
    assert!(md.contains("| 24 | 196560 | Leech | 196560 |"));
    assert!(md.contains("| 9 | 272 | none | not in catalog |"));
    assert!(md.contains("| 4 | ≤30 (attained) | =50 | 30 (A4*:5 at hi2 = 6: 30) | 50 (thm3_opt50, enumeration) |"));
    assert!(md.contains("415003680 (Leech, theta)"));
}

/// Leech shells of norm 4, 6 and 8 by direct enumeration (a few minutes in
/// release mode).
#[test]
#[ignore = "long: run with --ignored"]
fn leech_shells_match_theta_series() {
    let l = catalog("Leech").unwrap();
    let q = ShellQuery::new(Rational::from(4), Rational::from(8)).unwrap().node_budget(None);
    let set = enumerate_shell(&l, &q).unwrap();
    let theta = leech_coefficients(4).unwrap();
    for k in 2..=4i64 {
        assert_eq!(num_bigint::BigInt::from(set.count_at(&Rational::from(2 * k))), theta[k as usize]);
    }
    assert_eq!(set.total, 415_003_680);
}

#[test]
#[ignore = "long: run with --ignored"]
fn long_verification_passes() {
    let r = report(VerifyOptions { long: true, ..Default::default() }).unwrap();
    assert!(r.pass);
    assert!(r.claims.iter().flat_map(|c| &c.checks).all(|c| c.status == Status::Pass));
}
