//! Contract tests for the identity registry: tag set, ordering, report
//! shape and serialization.

use std::str::FromStr;

use bperm::{registry, verify, IdentityId, VerifyError, VerifyParams, VerifyStatus};

const EXPECTED_TAGS: [&str; 37] = [
    "1.2", "thm1.1", "1.7", "1.8", "1.9", "2.1", "2.2", "2.4", "3.2", "3.3", "3.5", "4.1", "5.1",
    "5.2", "5.3", "5.6", "5.7", "5.8", "6.2-3", "6.5", "6.6", "6.7", "6.8", "6.9", "6.10", "6.12",
    "6.14", "6.15", "6.16", "6.17", "6.18", "6.19", "6.22", "6.24", "6.25", "6.26", "6.27",
];

#[test]
fn registry_tags_are_frozen_in_order() {
    let tags: Vec<&str> = registry().iter().map(|id| id.as_str()).collect();
    assert_eq!(tags, EXPECTED_TAGS);
}

#[test]
fn tags_round_trip_through_parsing_and_display() {
    for id in registry() {
        let parsed = IdentityId::from_str(id.as_str()).unwrap();
        assert_eq!(parsed, *id);
        assert_eq!(format!("{parsed}"), id.as_str());
        assert_eq!(serde_json::to_string(id).unwrap(), format!("\"{}\"", id.as_str()));
    }
}

#[test]
fn unknown_tags_are_rejected() {
    for bad in ["", "1", "thm2.1", "6.28", "3-2", " 3.2"] {
        assert_eq!(
            IdentityId::from_str(bad).unwrap_err(),
            VerifyError::UnknownIdentity(bad.to_string()),
            "tag {bad:?} should be rejected"
        );
    }
}

#[test]
fn descriptions_are_distinct_and_nonempty() {
    let mut seen = std::collections::BTreeSet::new();
    for id in registry() {
        let d = id.description();
        assert!(!d.is_empty());
        assert!(seen.insert(d), "duplicate description {d:?}");
    }
}

#[test]
fn reports_carry_identity_params_status_and_timing() {
    let params = VerifyParams { n_max: 3, ..VerifyParams::default() };
    let report = verify(IdentityId::I6_22, &params).unwrap();
    assert_eq!(report.identity, IdentityId::I6_22);
    assert_eq!(report.params, params);
    assert_eq!(report.status, VerifyStatus::Pass);
    assert!(report.witness.is_none());

    let json: serde_json::Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(json["identity"], "6.22");
    assert_eq!(json["status"], "pass");
    assert_eq!(json["params"]["n_max"], 3);
    assert!(json["witness"].is_null());
    assert!(json["elapsed_ms"].is_number());
}

#[test]
fn default_parameters_stay_inside_the_enumeration_caps() {
    // families enumerated exhaustively must respect the configured caps,
    // otherwise the default run would error instead of verifying
    let signed_cap = bperm::identities::enumeration_cap();
    for id in registry() {
        let p = id.default_params();
        let n_bound = match id.as_str() {
            // these run over plain permutations only
            "2.1" | "3.2" | "3.3" | "6.14" | "6.15" | "6.16" | "6.17" | "6.18" | "6.19"
            | "6.22" | "6.24" | "6.25" | "6.26" | "6.27" => signed_cap + 2,
            _ => signed_cap,
        };
        assert!(
            p.n_max <= n_bound && p.u_order <= n_bound,
            "{}: defaults n_max={} u_order={} exceed bound {n_bound}",
            id,
            p.n_max,
            p.u_order
        );
    }
}
