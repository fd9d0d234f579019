use fairflip_core::exact::{
    argmax_triple_advantage, expected_tosses, flawed_win_probability, pr_match,
    pr_match_given_mismatch, pr_triple, pr_two_doubles, triple_advantage,
};
use fairflip_core::oracle::{absorbing_solve, joint_event_prob, EventPattern};
use fairflip_core::{CoinBias, Distribution, ProtocolKind};
use proptest::prelude::*;

/// Weights with at least one positive entry, some entries possibly zero.
fn distribution(max_faces: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(prop_oneof![3 => 0.0..1.0f64, 1 => Just(0.0)], 2..=max_faces)
        .prop_filter("needs mass", |w| w.iter().sum::<f64>() > 1e-6)
        .prop_map(|w| Distribution::normalize(w).unwrap())
}

fn coin(p: f64) -> CoinBias {
    CoinBias::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn two_doubles_never_beat_triple(d in distribution(8)) {
        prop_assert!(pr_two_doubles(&d) <= pr_triple(&d) + 1e-12);
    }

    #[test]
    fn conditioning_on_mismatch_never_helps(d in distribution(8)) {
        prop_assume!(!d.is_point_mass());
        prop_assert!(pr_match_given_mismatch(&d).unwrap() <= pr_match(&d) + 1e-12);
    }

    #[test]
    fn closed_forms_match_enumeration(d in distribution(5)) {
        let tol = 1e-12;
        prop_assert!((joint_event_prob(&d, EventPattern::TwoDoubles).unwrap() - pr_two_doubles(&d)).abs() < tol);
        prop_assert!((joint_event_prob(&d, EventPattern::Triple).unwrap() - pr_triple(&d)).abs() < tol);
        prop_assert!((joint_event_prob(&d, EventPattern::Match).unwrap() - pr_match(&d)).abs() < tol);
        match pr_match_given_mismatch(&d) {
            Ok(v) => {
                let o = joint_event_prob(&d, EventPattern::MatchGivenMismatch).unwrap();
                prop_assert!((o - v).abs() < tol);
            }
            Err(_) => prop_assert!(joint_event_prob(&d, EventPattern::MatchGivenMismatch).is_err()),
        }
    }

    #[test]
    fn strict_inequality_off_the_equality_set(d in distribution(8)) {
        let gap = pr_triple(&d) - pr_two_doubles(&d);
        if d.is_uniform_on_support() {
            prop_assert!(gap.abs() <= 1e-12);
        } else {
            // far from uniform means a visible gap
            let support: Vec<f64> = d.probs().iter().copied().filter(|&p| p > 0.0).collect();
            let spread = support.iter().cloned().fold(0.0, f64::max) - support.iter().cloned().fold(1.0, f64::min);
            if spread > 1e-3 {
                prop_assert!(gap > 1e-12);
            }
        }
    }
}

#[test]
fn equality_cases_both_directions() {
    let equal = [
        vec![0.5, 0.5],
        vec![0.25; 4],
        vec![1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0 / 3.0],
        vec![0.0, 0.0, 1.0],
        vec![0.2, 0.0, 0.2, 0.2, 0.2, 0.0, 0.2],
    ];
    for w in equal {
        let d = Distribution::normalize(w).unwrap();
        assert!(d.is_uniform_on_support());
        assert!((pr_triple(&d) - pr_two_doubles(&d)).abs() <= 1e-12);
    }
    let unequal = [vec![0.6, 0.4], vec![0.8, 0.1, 0.1], vec![0.5, 0.25, 0.25, 0.0], vec![0.3, 0.3, 0.4]];
    for w in unequal {
        let d = Distribution::normalize(w).unwrap();
        assert!(!d.is_uniform_on_support());
        assert!(pr_triple(&d) - pr_two_doubles(&d) > 1e-12);
    }
}

#[test]
fn worked_example_against_enumeration() {
    let d = Distribution::new(vec![0.8, 0.1, 0.1]).unwrap();
    let two = joint_event_prob(&d, EventPattern::TwoDoubles).unwrap();
    let three = joint_event_prob(&d, EventPattern::Triple).unwrap();
    assert!((two - 0.4356).abs() < 1e-12);
    assert!((three - 0.514).abs() < 1e-12);
    let cond = joint_event_prob(&d, EventPattern::MatchGivenMismatch).unwrap();
    assert!((cond - 0.146 / 0.34).abs() < 1e-12);
    assert!((cond - 0.429).abs() < 5e-4);
}

#[test]
fn two_faced_conditional_match_on_a_dense_grid() {
    for i in 1..10_000 {
        let d = coin(i as f64 / 10_000.0).to_distribution();
        assert!((pr_match_given_mismatch(&d).unwrap() - 0.5).abs() < 1e-12);
    }
}

#[test]
fn grid_search_agrees_with_analytic_argmax() {
    let peak = argmax_triple_advantage();
    let (mut best_p, mut best) = (0.0, f64::MIN);
    for i in 0..=100_000 {
        let p = i as f64 / 100_000.0;
        let v = triple_advantage(coin(p));
        if v > best {
            best = v;
            best_p = p;
        }
    }
    assert!((best - 0.0625).abs() < 1e-8);
    assert!((best_p - peak.p_low).abs() < 1e-4 || (best_p - peak.p_high).abs() < 1e-4);
}

#[test]
fn chains_match_closed_forms_on_grid() {
    for kind in ProtocolKind::ALL {
        for i in 0..25 {
            let p = 0.01 + 0.04 * i as f64;
            let b = coin(p);
            let chain = absorbing_solve(kind, b).unwrap();
            let win = flawed_win_probability(kind, b).unwrap();
            let tosses = expected_tosses(kind, b).unwrap();
            assert!((chain.p1_win - win).abs() < 1e-9, "{kind} p={p} win {} vs {win}", chain.p1_win);
            assert!(
                (chain.expected_tosses - tosses).abs() < 1e-9 * tosses.max(1.0),
                "{kind} p={p} tosses {} vs {tosses}",
                chain.expected_tosses
            );
            assert!((chain.p1_win + chain.p2_win - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn first_whistle_costs_what_von_neumann_costs() {
    for i in 1..100 {
        let b = coin(i as f64 / 100.0);
        let fw = absorbing_solve(ProtocolKind::FirstWhistle, b).unwrap().expected_tosses;
        let vn = absorbing_solve(ProtocolKind::VonNeumann, b).unwrap().expected_tosses;
        let blind = absorbing_solve(ProtocolKind::Blind, b).unwrap().expected_tosses;
        assert!((fw - vn).abs() < 1e-9 * vn);
        assert!((blind - vn - 1.0).abs() < 1e-9 * vn);
    }
}
