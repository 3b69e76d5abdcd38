mod common;

use common::{futile_display, matches_display, parse, signaling_display, weakly_reversible_network};
use gmak::analysis::{analyze, run_check, AnalysisOptions};
use gmak::fixtures;
use gmak::linalg::rat;
use gmak::network::{analyze_structure, parse_network_with};
use gmak::report::Status;
use gmak::stability::{negated_reduced_jacobian, StabilityOptions};
use proptest::prelude::*;
use serde_json::json;

fn status(text: &str, condition: &str) -> Status {
    let net = parse(text);
    let st = analyze_structure(&net);
    run_check(condition, &net, &st, &AnalysisOptions { timing: false, ..Default::default() }).unwrap().status
}

#[test]
fn structure_numbers() {
    // (m, l, delta, delta_tilde, weakly reversible)
    let expected = [
        ("lotka", (3, 1, 0, 0, true)),
        ("signaling", (4, 1, 1, 0, true)),
        ("futile", (4, 1, 0, 0, true)),
        ("sir", (4, 1, 1, 1, true)),
        ("futile-reversed", (4, 1, 0, 0, true)),
    ];
    for (name, (m, l, d, dt, wr)) in expected {
        let text = fixtures::ALL.iter().find(|(n, _)| *n == name).unwrap().1;
        let st = analyze_structure(&parse(text));
        assert_eq!((st.m(), st.l(), st.delta, st.delta_tilde, st.weakly_reversible), (m, l, d, dt, wr), "{name}");
    }
}

#[test]
fn displayed_jacobians() {
    let max = StabilityOptions::default().max_cycles;
    let j = negated_reduced_jacobian(&parse(fixtures::SIGNALING), max).unwrap();
    matches_display(&j, &signaling_display()).unwrap();
    let j = negated_reduced_jacobian(&parse(fixtures::FUTILE), max).unwrap();
    matches_display(&j, &futile_display()).unwrap();
}

#[test]
fn sign_condition_verdicts() {
    assert_eq!(status(fixtures::LOTKA, "prop-pmatrix"), Status::Holds);
    let classical = [("alpha".to_string(), rat(1)), ("beta".to_string(), rat(1))].into();
    let net = parse_network_with(fixtures::LOTKA, &classical).unwrap();
    let st = analyze_structure(&net);
    let r = run_check("prop-pmatrix", &net, &st, &AnalysisOptions::default()).unwrap();
    assert_eq!(r.status, Status::Fails);
    assert!(r.counterexample.is_some());
    assert_eq!(status(fixtures::SIGNALING, "prop-s"), Status::Holds);
    assert_eq!(status(fixtures::FUTILE, "prop-s"), Status::Fails);
    assert_eq!(status(fixtures::SIR, "prop-pmatrix"), Status::Holds);
}

#[test]
fn stability_verdicts() {
    let opts = AnalysisOptions { timing: false, ..Default::default() };
    let signaling = analyze(&parse(fixtures::SIGNALING), &opts);
    let carlson = signaling.check("carlson").unwrap();
    assert_eq!(carlson.status, Status::Holds);
    assert!(carlson.evidence["p_subset_species"].as_array().unwrap().contains(&json!(["X", "Y"])));
    assert_eq!(signaling.check("p0plus").unwrap().status, Status::Holds);

    // the displayed futile matrix is not sign-symmetric for every λ; see README
    let futile = analyze(&parse(fixtures::FUTILE), &opts);
    let carlson = futile.check("carlson").unwrap();
    assert_eq!(carlson.status, Status::Fails);
    assert_eq!(carlson.evidence["at_unit_parameters"]["certificate"], "certified_true");
    assert!(carlson.evidence["at_unit_parameters"]["p_subset_species"]
        .as_array()
        .unwrap()
        .contains(&json!(["E", "F*", "P"])));
    assert_eq!(futile.check("p0plus").unwrap().status, Status::Holds);

    let reversed = analyze(&parse(fixtures::FUTILE_REVERSED), &opts);
    let p0 = reversed.check("p0plus").unwrap();
    assert_eq!(p0.status, Status::Fails);
    assert_eq!(p0.counterexample.as_ref().unwrap()["violation"]["type"], "principal_minor");
}

#[test]
fn lotka_conclusion() {
    let r = analyze(&parse(fixtures::LOTKA), &AnalysisOptions { timing: false, ..Default::default() });
    assert!(r.conclusions.iter().any(|c| c == "the (unique) positive CBE is diagonally stable, for all rate constants"));
}

#[test]
fn reports_round_trip_through_json() {
    for (name, text) in fixtures::ALL {
        let r = analyze(&parse(text), &AnalysisOptions::default());
        for c in &r.checks {
            let back: gmak::report::ConditionReport = serde_json::from_str(&serde_json::to_string(c).unwrap()).unwrap();
            assert_eq!(&back, c, "{name}");
            if c.status == Status::Fails {
                assert!(c.counterexample.is_some(), "{name} {}", c.name);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Implications between verdicts that hold for every network.
    #[test]
    fn verdict_implications(text in weakly_reversible_network()) {
        let net = parse(&text);
        let st = analyze_structure(&net);
        let opts = AnalysisOptions { timing: false, ..Default::default() };
        let s = |c: &str| run_check(c, &net, &st, &opts).unwrap().status;
        if s("prop-s") == Status::Holds {
            prop_assert_eq!(s("noother-per-class"), Status::Holds);
        }
        if s("noother") == Status::Holds {
            prop_assert_eq!(s("noother-per-class"), Status::Holds);
        }
        prop_assert_eq!(s("existence") == Status::Holds, st.delta_tilde == 0);
        if s("exists-unique") == Status::Holds {
            prop_assert_eq!(s("existence"), Status::Holds);
            prop_assert_eq!(s("uniqueness"), Status::Holds);
        }
        if s("robust") == Status::Holds {
            prop_assert_eq!(s("uniqueness"), Status::Holds);
        }
    }
}
