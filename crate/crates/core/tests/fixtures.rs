use suppcone::registry::{run_fixture, FIXTURE_NAMES};

#[test]
fn every_fixture_matches() {
    for name in FIXTURE_NAMES {
        let r = run_fixture(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.matches, "{}", serde_json::to_string_pretty(&r).unwrap());
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["ex_C", "ex_saavedra", "last_ex"] {
        let a = serde_json::to_string(&run_fixture(name).unwrap()).unwrap();
        let b = serde_json::to_string(&run_fixture(name).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
