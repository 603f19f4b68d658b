//! Property tests for the metric language: forward-mode derivatives against
//! finite differences of an independent evaluator, and print/parse
//! round-trips.

mod common;

use common::dsl::{any_expr, jet_agrees, round_trips, tame_expr};
use cvlab::dsl::parse_metric;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jets_match_finite_differences(e in tame_expr(), t in 0.5f64..2.0, theta in 0.0f64..std::f64::consts::TAU) {
        if let Err(msg) = jet_agrees(&e, t, theta) {
            return Err(TestCaseError::fail(msg));
        }
    }

    #[test]
    fn print_parse_round_trip(e in any_expr()) {
        prop_assume!(e.depth() <= 6);
        if let Err(msg) = round_trips(&e) {
            return Err(TestCaseError::fail(msg));
        }
    }
}

#[test]
fn round_trip_of_spec_style_sources() {
    for src in [
        "exp(-2*t)",
        "1 + t^2",
        "t^2",
        "((2 + tanh(t - 5)) * (1.5 + sin(theta)))^2",
        "-t^2 + 3",
    ] {
        let once = parse_metric(src).unwrap();
        let twice = parse_metric(&once.serialize()).unwrap();
        assert_eq!(once, twice, "{src}");
    }
}

#[test]
fn cosh_squared_against_plain_central_differences() {
    let e = parse_metric("cosh(t)^2").unwrap().root;
    let (t, h) = (0.7, 1e-4);
    let f = |x: f64| x.cosh().powi(2);
    let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
    let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    let jet = e.eval_jet(t, 0.0).unwrap();
    assert!((jet.d1 - d1).abs() <= 1e-6 * d1.abs());
    assert!((jet.d2 - d2).abs() <= 1e-6 * d2.abs());
}
