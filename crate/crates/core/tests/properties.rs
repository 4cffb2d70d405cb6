use proptest::prelude::*;

use seedmech_core::audit::monotonicity_sweep;
use seedmech_core::checks::{check_adverse_competition, check_nondecreasing_submodular, CheckOptions};
use seedmech_core::coverage::{random_coverage, CoverageParams};
use seedmech_core::greedy::{locally_greedy, uniform_greedy, TurnSequence};
use seedmech_core::mechanisms::caratheodory::{caratheodory_prune, weighted_mean};
use seedmech_core::mechanisms::{FixedPolicy, Mechanism, MechanismConfig, MechanismId, MechanismTable};
use seedmech_core::or_model::{random_or_model, RandomOrParams, SeedCredit};
use seedmech_core::profile::{enumerate_profiles, BidProfile, ProfileDomain};
use seedmech_core::rational::{int, parse_rational, ratio, Rational};
use seedmech_core::WelfareModel;

fn or_params(credit: bool) -> RandomOrParams {
    RandomOrParams {
        seeds: 5,
        targets: 4,
        seed_credit: if credit { SeedCredit::Owner } else { SeedCredit::EdgesOnly },
        ..RandomOrParams::default()
    }
}

fn word(bids: &[usize], perm: u64) -> TurnSequence {
    let mut turns: Vec<usize> = bids.iter().enumerate().flat_map(|(i, &b)| std::iter::repeat_n(i, b)).collect();
    // Cheap deterministic shuffle.
    let mut x = perm;
    for i in (1..turns.len()).rev() {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        turns.swap(i, (x >> 33) as usize % (i + 1));
    }
    TurnSequence::new(turns)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_normalise(n in -500i64..500, d in 1i64..500, m in 1i64..50) {
        let q = ratio(n * m, d * m);
        prop_assert_eq!(&q, &ratio(n, d));
        let back = parse_rational(&q.to_string()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn welfare_is_the_sum_of_utilities(seed in 0u64..1000, credit in any::<bool>()) {
        let m = random_or_model(&or_params(credit), seed).unwrap();
        for p in enumerate_profiles(2, m.ground_size(), 2, ProfileDomain::All).into_iter().take(60) {
            let u = m.utilities(&p).unwrap();
            prop_assert!(u.iter().all(|x| *x >= int(0)));
            prop_assert_eq!(u.iter().sum::<Rational>(), m.welfare(&p).unwrap());
        }
    }

    #[test]
    fn greedy_steps_are_myopic(seed in 0u64..1000, a in 0usize..3, b in 0usize..3, perm in any::<u64>()) {
        let m = random_coverage(&CoverageParams { disks: 6, max_player_weight: Some(3), ..CoverageParams::default() }, seed).unwrap();
        let seq = word(&[a, b], perm);
        let run = locally_greedy(&m, &seq, false).unwrap();
        prop_assert!(seq.matches(&BidProfile::new(vec![a, b])));
        prop_assert_eq!(run.profile.sizes(), vec![a, b]);
        let mut current = seedmech_core::AllocationProfile::empty(2, m.ground_size());
        let mut welfare = int(0);
        for step in &run.steps {
            let best = (0..m.ground_size())
                .filter(|&e| !current.set(step.player).contains(e))
                .map(|e| m.welfare(&current.with_added(step.player, e)).unwrap() - &welfare)
                .max()
                .unwrap();
            prop_assert_eq!(&step.gain, &best);
            current = current.with_added(step.player, step.element);
            welfare = m.welfare(&current).unwrap();
        }
        prop_assert_eq!(current, run.profile);
    }

    #[test]
    fn union_greedy_gains_shrink(seed in 0u64..1000) {
        let m = random_coverage(&CoverageParams { disks: 7, ..CoverageParams::default() }, seed).unwrap();
        let g = uniform_greedy(&m, 7).unwrap();
        for j in 2..=7 {
            prop_assert!(g.delta(j) <= g.delta(j - 1));
            prop_assert!(g.delta(j) >= int(0));
        }
    }

    #[test]
    fn pruning_preserves_the_mean(
        pts in proptest::collection::vec((-20i64..20, -20i64..20), 1..7),
        ws in proptest::collection::vec(1i64..12, 7),
    ) {
        let points: Vec<(Rational, Rational)> = pts.iter().map(|&(x, y)| (ratio(x, 3), ratio(y, 5))).collect();
        let raw: Vec<Rational> = ws[..points.len()].iter().map(|&w| int(w)).collect();
        let total: Rational = raw.iter().sum();
        let weights: Vec<Rational> = raw.iter().map(|w| w / &total).collect();
        let kept = caratheodory_prune(&points, &weights).unwrap();
        prop_assert!(kept.len() <= 3);
        let kw: Vec<Rational> = kept.iter().map(|k| k.1.clone()).collect();
        let kp: Vec<_> = kept.iter().map(|k| points[k.0].clone()).collect();
        prop_assert_eq!(kw.iter().sum::<Rational>(), int(1));
        prop_assert!(kw.iter().all(|w| *w > int(0)));
        prop_assert_eq!(weighted_mean(&kp, &kw), weighted_mean(&points, &weights));
    }

    #[test]
    fn runs_are_deterministic_per_seed(seed in 0u64..500, rng in any::<u64>(), a in 0usize..3, b in 0usize..3) {
        let m = random_or_model(&or_params(false), seed).unwrap();
        for id in [MechanismId::TwoPlayer, MechanismId::Uniform, MechanismId::Disjoint] {
            let mech = Mechanism::prepare(&m, id, 4, MechanismConfig::default()).unwrap();
            let bids = BidProfile::new(vec![a, b]);
            let x = mech.run(&bids, rng).unwrap();
            let y = mech.run(&bids, rng).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(x.profile.sizes(), vec![a, b]);
        }
    }

    #[test]
    fn tables_keep_their_invariants(seed in 0u64..2000, credit in any::<bool>()) {
        let m = random_or_model(&or_params(credit), seed).unwrap();
        let t = MechanismTable::build(&m, 5, false).unwrap();
        prop_assert!(t.verify(&m).unwrap().is_empty());
        for (_, e) in t.entries() {
            prop_assert_eq!(e.distribution.total_probability(), int(1));
        }
    }

    #[test]
    fn table_mechanism_is_monotone(seed in 0u64..2000) {
        let m = random_coverage(&CoverageParams { disks: 6, max_player_weight: Some(3), ..CoverageParams::default() }, seed).unwrap();
        let mech = Mechanism::prepare(&m, MechanismId::TwoPlayer, 5, MechanismConfig::default()).unwrap();
        prop_assert!(monotonicity_sweep(&mech, 5).unwrap().passed());
    }

    #[test]
    fn sweep_witnesses_reverify(seed in 0u64..300) {
        let m = random_or_model(&or_params(true), seed).unwrap();
        for p in FixedPolicy::ALL {
            let mech = Mechanism::prepare(&m, MechanismId::Fixed(p), 4, MechanismConfig::default()).unwrap();
            let r = monotonicity_sweep(&mech, 4).unwrap();
            for w in &r.witnesses {
                prop_assert!(w.reverify(&mech).unwrap());
            }
        }
    }

    #[test]
    fn random_instances_meet_structural_assumptions(seed in 0u64..500) {
        let m = random_or_model(&or_params(true), seed).unwrap();
        let opts = CheckOptions::default().with_max_set(2);
        prop_assert!(check_adverse_competition(&m, &opts).unwrap().passed());
        let c = random_coverage(&CoverageParams { disks: 5, ..CoverageParams::default() }, seed).unwrap();
        prop_assert!(check_nondecreasing_submodular(&c, &opts).unwrap().passed());
    }
}
