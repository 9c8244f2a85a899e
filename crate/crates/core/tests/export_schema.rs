use ln4_core::modes::{export_table, TableKind};
use ln4_core::GammaParam;

fn validator() -> jsonschema::Validator {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/mode_table.schema.json")).expect("schema parses");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn json_export_matches_schema() {
    let v = validator();
    for (kind, gamma) in [
        (TableKind::UntwistedCentreless, GammaParam::Centreless),
        (TableKind::UntwistedGamma, GammaParam::ratio(1, 3)),
        (TableKind::TwistedOmega, GammaParam::Centreless),
    ] {
        let doc: serde_json::Value = serde_json::from_str(&export_table(kind, 1, &gamma, "json").unwrap()).unwrap();
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{kind}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    let bad = serde_json::json!({"kind": "twisted-omega", "window": -1, "gamma": null, "modes": [], "rules": [], "entries": []});
    assert!(!v.is_valid(&bad));
}
