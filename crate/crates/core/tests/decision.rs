mod common;

use common::{naive_bool, naive_eval, naive_point, unstable_exact};
use lukstable::random::{self, InstanceLimits};
use lukstable::{
    check_consequence_rho, eval_luk, find_countermodel, parse_bool, reduce, stable_bruteforce,
    Budget, ConsequenceVerdict, StableInstance,
};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> StableInstance {
    random::instance(
        &mut ChaCha8Rng::seed_from_u64(seed),
        &InstanceLimits::default(),
    )
}

fn with_deletes(inst: &StableInstance, deletes: &[usize]) -> StableInstance {
    let groups = inst
        .groups()
        .iter()
        .zip(deletes)
        .map(|(g, &d)| (g.formulas().to_vec(), d))
        .collect();
    StableInstance::new(inst.n(), groups).unwrap()
}

#[test]
fn two_group_example_by_enumeration() {
    let inst = StableInstance::new(
        2,
        vec![
            (vec![parse_bool("~X1").unwrap()], 0),
            (
                vec![parse_bool("X1").unwrap(), parse_bool("X1 /\\ X2").unwrap()],
                1,
            ),
        ],
    )
    .unwrap();
    // surviving sets {¬X1, X1} and {¬X1, X1 ∧ X2}, both unsatisfiable
    for kept in [0usize, 1] {
        let fs = [
            inst.groups()[0].formulas()[0].clone(),
            inst.groups()[1].formulas()[kept].clone(),
        ];
        assert!(!unstable_exact(&fs, 0, 2));
    }
    assert!(stable_bruteforce(&inst, Budget::default()).unwrap().stable);
    assert!(
        check_consequence_rho(&reduce(&inst).unwrap(), Budget::default())
            .unwrap()
            .is_consequence()
    );
}

#[test]
fn plain_unsat_is_the_single_group_case() {
    for (text, unsat) in [
        ("X1 /\\ ~X1", true),
        ("X1 \\/ ~X1", false),
        ("(X1 \\/ X2) /\\ ~X1 /\\ ~X2", true),
    ] {
        let f = parse_bool(text).unwrap();
        let n = 2;
        let inst = StableInstance::new(n, vec![(vec![f.clone()], 0)]).unwrap();
        assert_eq!(
            stable_bruteforce(&inst, Budget::default()).unwrap().stable,
            unsat
        );
        let verdict = check_consequence_rho(&reduce(&inst).unwrap(), Budget::default()).unwrap();
        assert_eq!(verdict.is_consequence(), unsat, "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stability_is_downward_monotone(seed in any::<u64>()) {
        let inst = instance(seed);
        let full: Vec<usize> = inst.groups().iter().map(|g| g.delete()).collect();
        if stable_bruteforce(&inst, Budget::default()).unwrap().stable {
            for i in 0..full.len() {
                for smaller in 0..full[i] {
                    let mut d = full.clone();
                    d[i] = smaller;
                    prop_assert!(stable_bruteforce(&with_deletes(&inst, &d), Budget::default()).unwrap().stable);
                }
            }
        }
    }

    #[test]
    fn witnesses_reverify(seed in any::<u64>()) {
        let inst = instance(seed);
        let verdict = stable_bruteforce(&inst, Budget::default()).unwrap();
        if let Some(w) = &verdict.counterexample {
            for (g, deleted) in inst.groups().iter().zip(&w.deleted) {
                prop_assert_eq!(deleted.len(), g.delete());
                for (j, f) in g.formulas().iter().enumerate() {
                    if !deleted.contains(&j) {
                        prop_assert!(naive_bool(f, w.assignment.values()));
                    }
                }
            }
        }
        let reduced = reduce(&inst).unwrap();
        if let ConsequenceVerdict::Countermodel { witness } = check_consequence_rho(&reduced, Budget::default()).unwrap() {
            let x = naive_point(&witness);
            prop_assert!(naive_eval(&reduced.theta, &x).is_one());
            prop_assert!(!naive_eval(&reduced.phi, &x).is_one());
        }
    }

    #[test]
    fn no_false_refutations_on_certified_pairs(seed in any::<u64>()) {
        let limits = InstanceLimits { max_n: 2, max_size: 4, ..InstanceLimits::default() };
        let inst = random::instance(&mut ChaCha8Rng::seed_from_u64(seed), &limits);
        let reduced = reduce(&inst).unwrap();
        if check_consequence_rho(&reduced, Budget::default()).unwrap().is_consequence() {
            for bound in 1..=6 {
                let v = find_countermodel(&reduced.theta, &reduced.phi, bound, Budget::default()).unwrap();
                prop_assert_eq!(v, ConsequenceVerdict::InconclusiveAtBound { bound });
            }
        } else {
            // a grid countermodel has denominator e + 1
            let v = find_countermodel(&reduced.theta, &reduced.phi, reduced.e + 1, Budget::default()).unwrap();
            let w = v.witness().expect("countermodel on the grid");
            prop_assert!(eval_luk(&reduced.theta, w).unwrap().is_one());
        }
    }
}
