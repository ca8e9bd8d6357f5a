mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symprep_core::classes::{classify, ClassifiedState};
use symprep_core::{
    find_min_pair, plan_build, plan_reduce, reverse_plan, sufficient_condition, PlanStep,
    SplitState, SymmetricTarget, Target,
};

use common::random_target;

fn condition(s: &ClassifiedState) -> f64 {
    let (lo, hi) = find_min_pair(s).unwrap();
    sufficient_condition(s, lo, hi).unwrap()
}

#[test]
fn ten_thousand_targets_terminate_at_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..10_000 {
        let n = 2 + i % 11;
        let t = random_target(n, i / 11, &mut rng);
        let plan = plan_reduce(&t, None).unwrap();
        let last = plan.trace().last().unwrap();
        assert!(last.is_uniform(), "n={n}");
        let u = 2f64.powf(-(n as f64) / 2.0);
        assert!((last.classes()[0].value - u).abs() <= 1e-9);

        let initial = classify(&t.phase_canonicalize().0).unwrap().len();
        assert_eq!(plan.rdr_merges(), initial - 1, "n={n}");
        assert!(plan.rdr_merges() <= n / 2);

        // strictly increasing condition along each amplification run
        let steps = plan.steps();
        for (j, step) in steps.iter().enumerate() {
            if matches!(step, PlanStep::RpiD { .. }) {
                let before = condition(&plan.trace()[j]);
                let after = &plan.trace()[j + 1];
                if !after.is_uniform() {
                    assert!(condition(after) > before, "n={n} step {j}");
                }
            }
        }
        for s in plan.trace() {
            assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn build_then_reduce_is_identity_on_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for i in 0..300 {
        let n = 2 + i % 9;
        let t = random_target(n, i, &mut rng);
        let reduce = plan_reduce(&t, None).unwrap();
        let build = reverse_plan(&reduce);
        let mut s = SplitState::from_target(&t);
        reduce.apply(&mut s);
        build.apply(&mut s);
        assert!(s.max_distance(&SplitState::from_target(&t)) <= 1e-9);

        let mut u = SplitState::uniform(t.structure());
        build.apply(&mut u);
        assert!(u.max_distance(&SplitState::from_target(&t)) <= 1e-9);
    }
}

#[test]
fn build_angles_are_negated_reduce_angles() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let t = random_target(7, 1, &mut rng);
    let reduce = plan_reduce(&t, None).unwrap();
    let build = plan_build(&t, None).unwrap();
    assert_eq!(build.steps().len(), reduce.steps().len());
    for (b, r) in build.steps().iter().zip(reduce.steps().iter().rev()) {
        match (b, r) {
            (
                PlanStep::RdrMerge {
                    theta: tb, phi: pb, ..
                },
                PlanStep::RdrMerge {
                    theta: tr, phi: pr, ..
                },
            ) => {
                assert_eq!((*tb, *pb), (-tr, -pr));
                assert!((0.0..std::f64::consts::FRAC_PI_2).contains(tr));
                assert!((0.0..std::f64::consts::TAU).contains(pr));
            }
            (b, r) => assert_eq!(b.kind(), r.kind()),
        }
    }
}

#[test]
fn ghz_family_needs_amplification_from_four_qubits() {
    for n in 2..=12 {
        let t: Target = SymmetricTarget::ghz(n).unwrap().into();
        let plan = plan_reduce(&t, None).unwrap();
        if n < 4 {
            assert_eq!(plan.rpid_steps(), 0, "n={n}");
        } else {
            assert!(plan.rpid_steps() > 0, "n={n}");
        }
    }
}

proptest! {
    #[test]
    fn phases_round_trip_for_complex_targets(
        n in 2usize..=9,
        raw in prop::collection::vec((0.0f64..1.0, -3.2f64..3.2), 5),
    ) {
        let coeffs: Vec<_> = raw.iter().take(n / 2 + 1).map(|&(r, p)| Complex64::from_polar(r + 1e-3, p)).collect();
        let t: Target = SymmetricTarget::normalized(n, coeffs).unwrap().into();
        let mut u = SplitState::uniform(t.structure());
        plan_build(&t, None).unwrap().apply(&mut u);
        prop_assert!((u.fidelity(&SplitState::from_target(&t)) - 1.0).abs() < 1e-10);
        prop_assert!(u.max_distance(&SplitState::from_target(&t)) < 1e-9);
    }
}
