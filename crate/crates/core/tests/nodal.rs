use nodalcount::combinatorics::{theta_closed, theta_recursive};
use nodalcount::nodal::{Calculator, RTFixtureTable};
use nodalcount::problem::nodal_problems;
use nodalcount::{format_rational, parse_rational, ExactRational};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthetic_fixture_round_trips(n in 2u32..=4, d in 1u32..=3, pick in 0usize..100, x in 0i64..1_000_000_000) {
        let specs = nodal_problems(n, d);
        let spec = &specs[pick % specs.len()];
        let calc = Calculator::new(n);
        let cr1 = calc.cr1_eta(spec).unwrap();
        prop_assert!(cr1.is_integer());
        let mut table = RTFixtureTable::new();
        table.insert(spec, BigInt::from(2 * x) + cr1.to_integer());
        let back = RTFixtureTable::from_json(&table.to_json()).unwrap();
        prop_assert_eq!(calc.count_nodal(spec, &back).unwrap(), ExactRational::from_integer(x.into()));
    }

    #[test]
    fn rationals_round_trip_through_text(p in any::<i64>(), q in 1i64..1_000_000) {
        let v = ExactRational::new(p.into(), q.into());
        let text = format_rational(&v);
        prop_assert_eq!(parse_rational(&text).unwrap(), v.clone());
        prop_assert_eq!(format_rational(&parse_rational(&text).unwrap()), text);
    }

    #[test]
    fn theta_recursion_matches_closed_form(k in 1u32..=6, m in 0u32..=8) {
        prop_assert_eq!(theta_recursive(k, m), theta_closed(k, m));
    }
}

#[test]
fn correction_terms_are_integers() {
    for n in 2..=4 {
        let calc = Calculator::new(n);
        for d in 1..=3 {
            for spec in nodal_problems(n, d) {
                let v = calc.cr1(&spec).unwrap();
                assert!(v.eta.is_integer(), "{spec}: {}", format_rational(&v.eta));
            }
        }
    }
}

#[test]
fn plane_correction_term() {
    // only single components fit in the plane
    let calc = Calculator::new(2);
    for d in 1..=4u32 {
        let spec =
            nodalcount::problem::ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1]).unwrap();
        assert_eq!(calc.cr1(&spec).unwrap().terms.len(), 1);
    }
}
