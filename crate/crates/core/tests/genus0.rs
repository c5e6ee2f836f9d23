mod common;

use nodalcount::genus0::oracles::{plane_recursion_oracle, schubert_lines_oracle};
use nodalcount::genus0::{DescendantSpec, Genus0Engine};
use nodalcount::problem::{genus0_problems, ConstraintTuple, ProblemSpec};
use nodalcount::ExactRational;
use proptest::prelude::*;

#[test]
fn one_point_descendants_match_the_j_function() {
    for n in 2..=5u32 {
        let engine = Genus0Engine::new(n);
        for d in 1..=3u32 {
            for c in 0..=n {
                let b = (n + 1) * d + n - 2 - c;
                let got = engine.descendant(&DescendantSpec {
                    n,
                    d,
                    b,
                    c,
                    constraints: ConstraintTuple::empty(),
                });
                assert_eq!(
                    got,
                    common::j_function_descendant(n, d, c),
                    "n={n} d={d} c={c}"
                );
            }
        }
    }
}

#[test]
fn descendant_without_psi_is_a_primary_count() {
    for n in 2..=4u32 {
        let engine = Genus0Engine::new(n);
        for d in 1..=2 {
            for spec in genus0_problems(n, d) {
                for (i, &c) in spec.mu.codims().iter().enumerate() {
                    let mut rest = spec.mu.codims().to_vec();
                    rest.remove(i);
                    let got = engine.descendant(&DescendantSpec {
                        n,
                        d,
                        b: 0,
                        c,
                        constraints: ConstraintTuple::new(rest).unwrap(),
                    });
                    assert_eq!(got, engine.count_rational(&spec).unwrap(), "{spec}");
                }
            }
        }
    }
}

#[test]
fn lines_agree_with_schubert_calculus() {
    for n in 2..=6 {
        let engine = Genus0Engine::new(n);
        for spec in genus0_problems(n, 1) {
            let want = schubert_lines_oracle(n, spec.mu.codims()).unwrap();
            assert_eq!(
                engine.count_rational(&spec).unwrap(),
                ExactRational::from_integer(want),
                "{spec}"
            );
        }
    }
}

#[test]
fn plane_counts_agree_with_the_degree_recursion() {
    let engine = Genus0Engine::new(2);
    for d in 1..=6 {
        let spec = ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1]).unwrap();
        assert_eq!(
            engine.count_rational(&spec).unwrap(),
            ExactRational::from_integer(plane_recursion_oracle(d))
        );
    }
}

#[test]
fn counts_are_nonnegative_integers() {
    for n in 2..=5 {
        let engine = Genus0Engine::new(n);
        for d in 1..=2 {
            for spec in genus0_problems(n, d) {
                let v = engine.count_rational(&spec).unwrap();
                assert!(
                    v.is_integer() && v >= ExactRational::from_integer(0.into()),
                    "{spec}: {v}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constraint_order_is_irrelevant(n in 3u32..=4, d in 1u32..=2, pick in 0usize..64, seed in any::<u64>()) {
        let problems = genus0_problems(n, d);
        let spec = &problems[pick % problems.len()];
        let mut codims = spec.mu.codims().to_vec();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..codims.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            codims.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = ProblemSpec::new(n, d, codims).unwrap();
        let engine = Genus0Engine::new(n);
        prop_assert_eq!(engine.count_rational(&shuffled).unwrap(), engine.count_rational(spec).unwrap());
    }

    #[test]
    fn divisor_insertions_scale_by_degree(n in 2u32..=4, d in 1u32..=2, pick in 0usize..64) {
        let problems = genus0_problems(n, d);
        let spec = &problems[pick % problems.len()];
        let engine = Genus0Engine::new(n);
        let counts = spec.mu.counts(n);
        let mut with_hyperplane = counts.clone();
        with_hyperplane[1] += 1;
        prop_assert_eq!(
            engine.primary(d, &with_hyperplane),
            engine.primary(d, &counts) * d
        );
    }
}
