use ncdef_core::counterexample::run_counterexample;
use ncdef_core::linalg::SearchConfig;
use ncdef_core::Field;

#[test]
fn all_steps_pass_over_the_rationals() {
    let r = run_counterexample(Field::Rationals, &SearchConfig::default()).unwrap();
    for s in &r.steps {
        assert!(s.passed, "step {} failed: {}", s.index, s.details);
    }
    assert_eq!(r.steps.len(), 9);
    assert!(r.passed);
    assert!(r.warnings.is_empty());
    assert_eq!(r.steps[1].details["ext1_l1_n"], 2);
    assert_eq!(r.steps[1].details["ext1_l1_l3"], 1);
}

#[test]
fn all_steps_pass_over_f5() {
    let r = run_counterexample(Field::prime(5).unwrap(), &SearchConfig::default()).unwrap();
    assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn small_fields_are_flagged() {
    let r = run_counterexample(Field::prime(2).unwrap(), &SearchConfig::default()).unwrap();
    assert_eq!(r.warnings.len(), 1);
    assert!(!r.steps.is_empty());
}

#[test]
fn the_report_serializes() {
    let r = run_counterexample(Field::Rationals, &SearchConfig::default()).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 9);
    assert_eq!(v["steps"][7]["details"]["witness_on_n_is_id_plus_bac"], true);
}
