//! Worked examples with known answers, one test per case.

use seedmech_core::audit::{
    approximation_audit, fixed_ordering_mechanism, guaranteed_fraction, monotonicity_sweep, reproduce, reproduce_default,
    verify_disjoint_bound, CASES,
};
use seedmech_core::checks::*;
use seedmech_core::coverage::{random_coverage, Cell, CoverageInstance, CoverageParams, ProportionalShare};
use seedmech_core::fixtures::*;
use seedmech_core::greedy::{brute_force_opt, locally_greedy, uniform_greedy, TurnSequence, DEFAULT_OPT_LIMIT};
use seedmech_core::instance::Instance;
use seedmech_core::mechanisms::caratheodory::weighted_mean;
use seedmech_core::mechanisms::uniform::uniform_closed_form;
use seedmech_core::mechanisms::*;
use seedmech_core::or_model::{OrModel, SeedCredit, SpreadGraph};
use seedmech_core::profile::{bid_profiles_up_to, AllocationProfile, BidProfile, ElementSet, ProfileDomain};
use seedmech_core::rational::{int, ratio};
use seedmech_core::tabular::TabularModel;
use seedmech_core::{Error, Rational, WelfareModel};

fn eps() -> Rational {
    ratio(1, 100)
}

fn bids(b: &[usize]) -> BidProfile {
    BidProfile::new(b.to_vec())
}

fn set(ids: &[usize]) -> ElementSet {
    ids.iter().copied().collect()
}

fn profile(sets: &[&[usize]], n: usize) -> AllocationProfile {
    AllocationProfile::new(sets.iter().map(|s| set(s)).collect(), n).unwrap()
}

fn additive(players: usize, n: usize) -> CoverageInstance {
    CoverageInstance::modular(&vec![int(1); n], players).unwrap()
}

fn small() -> CheckOptions {
    CheckOptions::default().with_max_set(2)
}

// ---- structural checks ----

#[test]
fn additive_model_passes_submodularity_and_adverse_competition() {
    let m = additive(2, 4);
    assert!(check_nondecreasing_submodular(&m, &small()).unwrap().passed());
    assert!(check_adverse_competition(&m, &small()).unwrap().passed());
}

#[test]
fn anonymity_without_mei_has_submodular_sum() {
    let m = anonymity_without_mei().unwrap();
    assert!(check_nondecreasing_submodular(&m, &small().disjoint()).unwrap().passed());
}

#[test]
fn superadditive_pair_fails_submodularity() {
    let names = vec!["a".to_string(), "b".to_string()];
    let m = TabularModel::from_fn(2, names, ProfileDomain::All, |p| {
        (0..2)
            .map(|i| match p.set(i).len() {
                0 => int(0),
                1 => int(1),
                _ => int(5),
            })
            .map(|v| v / int(2))
            .collect()
    })
    .unwrap();
    let v = check_nondecreasing_submodular(&m, &small()).unwrap();
    let w = v.witness().expect("superadditive witness");
    assert!(w.reverify(&m).unwrap());
}

#[test]
fn adverse_competition_fixture_fails_with_witness() {
    let m = adverse_competition(&int(10)).unwrap();
    let v = check_adverse_competition(&m, &small().disjoint()).unwrap();
    let w = v.witness().expect("witness");
    assert_eq!(w.property, Property::AdverseCompetition);
    assert!(w.reverify(&m).unwrap());
}

#[test]
fn counter1_respects_adverse_competition() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    assert!(check_adverse_competition(&m, &CheckOptions::default()).unwrap().passed());
    let m = counter1(&eps(), SeedCredit::Owner).unwrap();
    assert!(check_adverse_competition(&m, &CheckOptions::default()).unwrap().passed());
}

#[test]
fn mei_without_anonymity_splits_as_printed() {
    let m = mei_without_anonymity().unwrap();
    let opts = small().disjoint();
    assert!(check_mei(&m, &opts).unwrap().passed());
    let v = check_anonymity(&m, &opts).unwrap();
    let w = v.witness().expect("singleton witness");
    assert!(w.terms.iter().all(|t| t.profile.sets().iter().all(|s| s.len() <= 1)));
    assert!(w.reverify(&m).unwrap());
}

#[test]
fn anonymity_without_mei_fails_mei_on_the_pair() {
    let m = anonymity_without_mei().unwrap();
    let v = check_mei(&m, &small().disjoint()).unwrap();
    let w = v.witness().expect("witness");
    assert!(w.reverify(&m).unwrap());
    // f(a,b) = 3/2, f({a,b},0) = 2.
    let split = m.welfare(&profile(&[&[0], &[1]], 2)).unwrap();
    let joint = m.welfare(&profile(&[&[0, 1], &[]], 2)).unwrap();
    assert_ne!(split, joint);
    assert!(check_anonymity(&m, &small().disjoint()).unwrap().passed());
}

#[test]
fn single_step_or_is_mechanism_indifferent() {
    let m = counter3(&eps(), SeedCredit::EdgesOnly).unwrap();
    assert!(check_mei(&m, &CheckOptions::default()).unwrap().passed());
}

#[test]
fn agi_is_vacuous_for_two_players() {
    let m = counter1(&eps(), SeedCredit::Owner).unwrap();
    assert!(check_agi(&m, &CheckOptions::default()).unwrap().passed());
}

#[test]
fn three_player_anonymous_model_fails_mei_and_agi() {
    let m = anonymous_three_player().unwrap();
    let opts = CheckOptions::default().disjoint();
    assert!(!check_agi(&m, &opts).unwrap().passed());
    assert!(check_anonymity(&m, &opts).unwrap().passed());
    let r = check_mei_agi_implies_anonymity(&m, &opts).unwrap();
    assert!(!r.mei.passed() && !r.agi.passed() && r.anonymity.passed());
    assert!(r.implication_holds());
}

#[test]
fn three_player_additive_model_has_all_three() {
    // Shared elements split by holder count, so AgI needs disjoint profiles.
    let m = additive(3, 4);
    let opts = small().disjoint();
    assert!(check_agi(&m, &opts).unwrap().passed());
    assert!(!check_agi(&m, &small()).unwrap().passed());
    let r = check_mei_agi_implies_anonymity(&m, &opts).unwrap();
    assert!(r.mei.passed() && r.agi.passed() && r.anonymity.passed());
}

#[test]
fn symmetric_share_tables_are_anonymous() {
    for shift in 0..4 {
        let w: Vec<Rational> =
            [0, 4, 7, 9, 10].iter().enumerate().map(|(i, &x)| int(x) + ratio((shift * i) as i64, 3)).collect();
        let m = share_table(3, 4, &w).unwrap();
        let r = check_mei_agi_implies_anonymity(&m, &CheckOptions::default().disjoint()).unwrap();
        assert!(r.mei.passed() && r.agi.passed() && r.anonymity.passed());
    }
}

// ---- OR model ----

#[test]
fn reach_probabilities_on_counter1() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let g = m.graph();
    let (c1, c2, u1) = (g.node_index("c1").unwrap(), g.node_index("c2").unwrap(), g.node_index("u1").unwrap());
    assert_eq!(g.reach_probability(&[c1], u1).unwrap(), int(1));
    assert_eq!(g.reach_probability(&[], u1).unwrap(), int(0));
    assert_eq!(g.reach_probability(&[c1, c2], u1).unwrap(), int(1));
    assert_eq!(g.reach_probability(&[c2], u1).unwrap(), ratio(9, 10));
}

#[test]
fn empty_profile_has_zero_utilities() {
    for m in [counter1(&eps(), SeedCredit::Owner).unwrap(), counter2(&eps(), SeedCredit::EdgesOnly).unwrap()] {
        let empty = AllocationProfile::empty(2, m.ground_size());
        assert!(m.utilities(&empty).unwrap().iter().all(|u| *u == int(0)));
    }
}

fn within_stderr(m: &OrModel, p: &AllocationProfile, samples: usize, k: f64) {
    let exact = m.utilities(p).unwrap();
    let est = m.monte_carlo_utility(p, samples, 7).unwrap();
    for (i, x) in exact.iter().enumerate() {
        let x = seedmech_core::rational::to_f64(x);
        assert!((est.mean[i] - x).abs() <= k * est.stderr[i] + 1e-12, "player {i}: {} vs {x}", est.mean[i]);
    }
}

#[test]
fn monte_carlo_matches_counter3() {
    let m = counter3(&eps(), SeedCredit::Owner).unwrap();
    let p = m.profile(&[&["c2", "c3", "c4"], &["c1"]]).unwrap();
    within_stderr(&m, &p, 100_000, 3.0);
}

#[test]
fn monte_carlo_matches_counter2() {
    let m = counter2(&eps(), SeedCredit::Owner).unwrap();
    let p = m.profile(&[&["c1"], &["c3", "c4"]]).unwrap();
    within_stderr(&m, &p, 100_000, 3.0);
}

#[test]
fn zero_weight_graph_estimates_zero() {
    let mut g = SpreadGraph::new();
    g.add_node("s", int(0)).unwrap();
    g.add_node("t", int(0)).unwrap();
    g.add_edge("s", "t", ratio(1, 2)).unwrap();
    let m = OrModel::new(g, 2, SeedCredit::Owner).unwrap();
    let p = profile(&[&[0], &[1]], 2);
    let est = m.monte_carlo_utility(&p, 1000, 3).unwrap();
    assert!(est.mean.iter().all(|&x| x == 0.0));
}

#[test]
fn counter1_fixture_shape() {
    let f = load_fixture("counter1", &FixtureParams::default()).unwrap();
    let Instance::Or(m) = f.instance else { panic!("expected an OR model") };
    let g = m.graph();
    let units = g.nodes().iter().filter(|n| n.id.starts_with('u') && n.weight == int(1)).count();
    assert_eq!(units, 4);
    assert_eq!(m.candidates().len(), 3);
    assert!(m.candidates().iter().all(|&c| g.nodes()[c].weight == eps()));
    assert_eq!(g.edges().len(), 6);
}

#[test]
fn counter3_fixture_edges() {
    let m = counter3(&eps(), SeedCredit::EdgesOnly).unwrap();
    let g = m.graph();
    let c1 = g.node_index("c1").unwrap();
    let u1 = g.node_index("u1").unwrap();
    assert!(g.edges().iter().any(|e| e.from == c1 && e.to == u1 && e.p == eps()));
    let unit = g.edges().iter().filter(|e| e.p == int(1)).count();
    assert_eq!(unit, 4);
}

#[test]
fn adverse_fixture_loads_as_table() {
    let f = load_fixture("adverse-competition", &FixtureParams::default()).unwrap();
    assert_eq!(f.instance.kind(), "tabular");
    assert_eq!(f.domain, ProfileDomain::Disjoint);
}

// ---- coverage ----

fn two_disk_cell() -> CoverageInstance {
    let cells = vec![
        Cell { value: int(3), disks: set(&[0]) },
        Cell { value: int(6), disks: set(&[0, 1]) },
        Cell { value: int(2), disks: set(&[1]) },
    ];
    CoverageInstance::new(vec!["D1".into(), "D2".into()], cells, vec![int(1), int(1)]).unwrap()
}

#[test]
fn coverage_welfare_counts_cells_once() {
    let m = two_disk_cell();
    assert_eq!(m.coverage_welfare(&profile(&[&[0, 1], &[]], 2)).unwrap(), int(11));
    assert_eq!(m.coverage_welfare(&profile(&[&[], &[]], 2)).unwrap(), int(0));
    assert_eq!(m.coverage_welfare(&profile(&[&[0], &[1]], 2)).unwrap(), int(11));
}

#[test]
fn shared_cell_splits_evenly_and_by_weight() {
    let m = two_disk_cell();
    let u = m.coverage_utility(&profile(&[&[0], &[1]], 2)).unwrap();
    assert_eq!(u, vec![int(3) + int(3), int(3) + int(2)]);
    let w = CoverageInstance::new(m.disks().to_vec(), m.cells().to_vec(), vec![int(2), int(1)]).unwrap();
    let u = w.coverage_utility(&profile(&[&[0], &[1]], 2)).unwrap();
    assert_eq!(u, vec![int(3) + int(4), int(2) + int(2)]);
    let u = m.coverage_utility(&profile(&[&[0, 1], &[]], 2)).unwrap();
    assert_eq!(u[1], int(0));
}

// ---- greedy ----

#[test]
fn counter1_ab_opens_with_the_contested_seed() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let run = locally_greedy(&m, &"AB".parse().unwrap(), false).unwrap();
    // gain(c2) = 9/10 + 9/10 + 1/4 + eps beats gain(c1) = 2.
    assert_eq!(run.profile, m.profile(&[&["c2"], &["c3"]]).unwrap());
    let narrative = m.profile(&[&["c1"], &["c3"]]).unwrap();
    assert_eq!(m.utilities(&narrative).unwrap()[0], int(2));
}

#[test]
fn counter2_abb() {
    let m = counter2(&eps(), SeedCredit::EdgesOnly).unwrap();
    let run = locally_greedy(&m, &"ABB".parse().unwrap(), false).unwrap();
    assert_eq!(run.profile, m.profile(&[&["c1"], &["c3", "c4"]]).unwrap());
    assert_eq!(m.utilities(&run.profile).unwrap()[0], int(1));
}

#[test]
fn additive_greedy_distributes_top_elements() {
    let values: Vec<Rational> = [5, 1, 4, 2, 3].iter().map(|&v| int(v)).collect();
    let m = CoverageInstance::modular(&values, 2).unwrap();
    let run = locally_greedy(&m, &"BAB".parse().unwrap(), false).unwrap();
    assert_eq!(run.profile, profile(&[&[2], &[0, 4]], 5));
    let order = uniform_greedy(&m, 3).unwrap();
    assert_eq!(order.elements, vec![0, 2, 4]);
}

#[test]
fn counter3_union_greedy_order() {
    let m = counter3(&eps(), SeedCredit::EdgesOnly).unwrap();
    let order = uniform_greedy(&m, 5).unwrap();
    let names: Vec<String> = order.elements.iter().map(|&e| m.element_label(e)).collect();
    assert!(["c2", "c3", "c4", "c5"].contains(&names[0].as_str()));
    assert_eq!(names[1], "c1");
}

#[test]
fn union_greedy_is_near_optimal_on_mei_coverage() {
    for s in 0..10 {
        let m = random_coverage(&CoverageParams { disks: 7, ..CoverageParams::default() }, s).unwrap();
        for t in 1..=5 {
            let order = uniform_greedy(&m, t).unwrap();
            let (_, opt) = brute_force_opt(&m, &bids(&[t, 0]), true, DEFAULT_OPT_LIMIT).unwrap();
            assert!(order.w[t].clone() * int(1000) >= opt * int(632));
        }
    }
}

#[test]
fn brute_force_additive_pair() {
    let m = CoverageInstance::modular(&[int(3), int(2)], 2).unwrap();
    assert_eq!(brute_force_opt(&m, &bids(&[1, 1]), false, DEFAULT_OPT_LIMIT).unwrap().1, int(5));
}

#[test]
fn brute_force_counter1_dominates_greedy() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let (p, opt) = brute_force_opt(&m, &bids(&[2, 1]), false, DEFAULT_OPT_LIMIT).unwrap();
    assert_eq!(m.welfare(&p).unwrap(), opt);
    let run = locally_greedy(&m, &"AAB".parse().unwrap(), false).unwrap();
    assert!(run.welfare <= opt && run.welfare * int(2) >= opt);
}

#[test]
fn disjoint_asymmetric_ratio() {
    let n = int(10);
    let m = disjoint_asymmetric(&eps(), &n).unwrap();
    let run = locally_greedy(&m, &"AB".parse().unwrap(), true).unwrap();
    let (_, opt) = brute_force_opt(&m, &bids(&[1, 1]), true, DEFAULT_OPT_LIMIT).unwrap();
    assert_eq!(opt / run.welfare, (n + int(1)) / (int(2) + eps()));
}

#[test]
fn disjoint_bound_on_anonymous_coverage() {
    for (k, cap, limit) in [(2usize, 3usize, 3), (3, 3, 4)] {
        for s in 0..5 {
            let m = random_coverage(&CoverageParams { players: k, disks: 6, ..CoverageParams::default() }, s).unwrap();
            for b in bid_profiles_up_to(k, cap) {
                if b.budgets().iter().any(|&x| x > 3) {
                    continue;
                }
                let r = verify_disjoint_bound(&m, &b, &small()).unwrap();
                assert!(r.all_hold());
                if let Some(q) = r.worst_ratio() {
                    assert!(q <= int(limit), "ratio {q} at {b}");
                }
            }
        }
    }
}

#[test]
fn modular_symmetric_model_is_solved_exactly() {
    let values: Vec<Rational> = [4, 3, 2, 1].iter().map(|&v| int(v)).collect();
    let m = CoverageInstance::modular(&values, 2).unwrap();
    let r = verify_disjoint_bound(&m, &bids(&[2, 1]), &small()).unwrap();
    assert_eq!(r.worst_ratio(), Some(int(1)));
}

// ---- mechanism tables ----

#[test]
fn base_row_is_all_a() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let t = MechanismTable::build(&m, 3, false).unwrap();
    let e = t.entry(1, 0).unwrap();
    assert_eq!(e.w_b, int(0));
    assert_eq!(e.distribution.support(), 1);
    assert_eq!(e.distribution.entries()[0].sequence.to_string(), "A");
    let e = t.entry(0, 3).unwrap();
    assert_eq!(e.distribution.entries()[0].sequence.to_string(), "BBB");
}

#[test]
fn pruning_collapses_identical_points() {
    let points = vec![(int(1), int(2)); 6];
    let weights = vec![ratio(1, 6); 6];
    let kept = caratheodory_prune(&points, &weights).unwrap();
    assert_eq!(kept.len(), 1);
    assert_eq!(kept[0].1, int(1));
}

#[test]
fn pruning_at_a_vertex_keeps_it() {
    let points = vec![(int(0), int(0)), (int(1), int(0)), (int(0), int(1)), (int(1), int(1))];
    let weights = vec![int(1), int(0), int(0), int(0)];
    let kept = caratheodory_prune(&points, &weights).unwrap();
    assert_eq!(kept, vec![(0, int(1))]);
    let w: Vec<Rational> = kept.iter().map(|k| k.1.clone()).collect();
    let p: Vec<_> = kept.iter().map(|k| points[k.0].clone()).collect();
    assert_eq!(weighted_mean(&p, &w), (int(0), int(0)));
}

#[test]
fn symmetric_scalar_table_takes_the_low_endpoint() {
    // Identical players, but the rule picks the smallest feasible wA, so
    // A receives the second element at (1,1).
    let values: Vec<Rational> = [3, 2, 2, 1].iter().map(|&v| int(v)).collect();
    let m = CoverageInstance::modular(&values, 2).unwrap();
    let t = ScalarTable::build(&m, 4).unwrap();
    let e = t.entry(1, 1).unwrap();
    assert_eq!((e.w_a.clone(), e.w_b.clone()), (int(2), int(3)));
    assert_eq!(e.p, int(1));
}

#[test]
fn scalar_table_conditions_on_random_coverage() {
    for s in 0..10 {
        let m = random_coverage(&CoverageParams { disks: 7, ..CoverageParams::default() }, s).unwrap();
        let t = ScalarTable::build(&m, 6).unwrap();
        assert!(t.verify().is_empty());
        assert_eq!(t.entry(2, 0).unwrap().p, int(1));
        assert_eq!(t.entry(0, 2).unwrap().p, int(0));
    }
}

#[test]
fn two_player_with_no_b_budget_is_all_a_greedy() {
    let m = counter2(&eps(), SeedCredit::EdgesOnly).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::TwoPlayer, 4, MechanismConfig::default()).unwrap();
    let out = mech.run(&bids(&[2, 0]), 11).unwrap();
    let greedy = locally_greedy(&m, &"AA".parse().unwrap(), false).unwrap();
    assert_eq!(out.profile, greedy.profile);
    let u = mech.expected_utilities(&bids(&[2, 0])).unwrap();
    assert_eq!(u, vec![m.utilities(&greedy.profile).unwrap()[0].clone(), int(0)]);
}

#[test]
fn two_player_run_matches_a_cached_outcome() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::TwoPlayer, 3, MechanismConfig::default()).unwrap();
    let entry = mech.table().unwrap().entry(2, 1).unwrap();
    for seed in 0..5 {
        let out = mech.run(&bids(&[2, 1]), seed).unwrap();
        let hit = entry.distribution.entries().iter().find(|e| e.run.profile == out.profile).expect("cached");
        assert_eq!(hit.utilities, out.utilities);
    }
}

#[test]
fn disjoint_two_player_is_three_approximate() {
    let m = random_coverage(&CoverageParams { disks: 6, ..CoverageParams::default() }, 5).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::Disjoint, 4, MechanismConfig::default()).unwrap();
    let out = mech.run(&bids(&[2, 2]), 1).unwrap();
    assert!(out.profile.is_disjoint());
    let (_, opt) = brute_force_opt(&m, &bids(&[2, 2]), true, DEFAULT_OPT_LIMIT).unwrap();
    assert!(mech.expected_welfare(&bids(&[2, 2])).unwrap() * int(3) >= opt);
}

#[test]
fn uniform_single_player_is_greedy_prefix() {
    let values: Vec<Rational> = [1, 4, 2].iter().map(|&v| int(v)).collect();
    let m = CoverageInstance::modular(&values, 1).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::Uniform, 3, MechanismConfig::default()).unwrap();
    let out = mech.run(&bids(&[2]), 0).unwrap();
    assert_eq!(out.profile, profile(&[&[1, 2]], 3));
}

#[test]
fn uniform_expectations_on_counter3_and_share_models() {
    let m = counter3(&eps(), SeedCredit::EdgesOnly).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::Uniform, 5, MechanismConfig::default()).unwrap();
    assert_eq!(mech.expected_utilities(&bids(&[3, 1])).unwrap()[0], ratio(5, 8) + ratio(3, 4) * eps());
    let share = ProportionalShare::random(3, 6, 8, 9).unwrap();
    let mech = Mechanism::prepare(&share, MechanismId::Uniform, 5, MechanismConfig::default()).unwrap();
    for b in bid_profiles_up_to(3, 5) {
        let order = uniform_greedy(&share, b.total()).unwrap();
        assert_eq!(mech.expected_utilities(&b).unwrap(), uniform_closed_form(&order, &b));
    }
}

// ---- audits ----

#[test]
fn table_mechanism_is_monotone_on_counter1() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::TwoPlayer, 4, MechanismConfig::default()).unwrap();
    assert!(monotonicity_sweep(&mech, 4).unwrap().passed());
}

#[test]
fn dictatorship_fails_on_counter1() {
    let m = counter1(&eps(), SeedCredit::EdgesOnly).unwrap();
    let id = fixed_ordering_mechanism(FixedPolicy::Dictatorship);
    let mech = Mechanism::prepare(&m, id, 3, MechanismConfig::default()).unwrap();
    let r = monotonicity_sweep(&mech, 3).unwrap();
    let w = r.witnesses.iter().find(|w| w.player == 0 && w.bids == bids(&[1, 1])).expect("witness");
    assert_eq!(w.raised, bids(&[2, 1]));
    assert!(w.reverify(&mech).unwrap());
}

#[test]
fn uniform_fails_on_counter3() {
    let m = counter3(&eps(), SeedCredit::EdgesOnly).unwrap();
    let mech = Mechanism::prepare(&m, MechanismId::Uniform, 5, MechanismConfig::default()).unwrap();
    assert!(mech.warnings().contains(&WARN_UNIFORM_TWO_PLAYERS));
    let r = monotonicity_sweep(&mech, 5).unwrap();
    assert!(r.witnesses.iter().any(|w| w.player == 0 && w.bids == bids(&[3, 1]) && w.raised == bids(&[4, 1])));
}

#[test]
fn fixed_policy_sequences() {
    assert_eq!(FixedPolicy::Dictatorship.sequence(&bids(&[2, 1])).to_string(), "AAB");
    assert_eq!(FixedPolicy::RoundRobin.sequence(&bids(&[2, 2])).to_string(), "ABAB");
    assert_eq!(FixedPolicy::LargestRemaining.sequence(&bids(&[1, 2])).to_string(), "BAB");
    assert_eq!(FixedPolicy::SmallestRemaining.sequence(&bids(&[1, 2])).to_string(), "ABB");
}

#[test]
fn approximation_bounds_hold_on_small_families() {
    for s in 0..5 {
        let m = random_coverage(&CoverageParams { disks: 6, ..CoverageParams::default() }, 50 + s).unwrap();
        for id in [MechanismId::TwoPlayer, MechanismId::Uniform, MechanismId::Disjoint] {
            let mech = Mechanism::prepare(&m, id, 5, MechanismConfig::default()).unwrap();
            let disjoint = id != MechanismId::TwoPlayer;
            let r = approximation_audit(&mech, 5, disjoint, guaranteed_fraction(id, 2), DEFAULT_OPT_LIMIT).unwrap();
            assert!(r.passed(), "{id} on instance {s}");
        }
    }
}

#[test]
fn every_case_reproduces() {
    for case in CASES {
        let r = reproduce_default(case).unwrap();
        if *case != "smallest-remaining-counter2" {
            assert!(r.claim_holds, "{case}");
        }
    }
}

#[test]
fn roundrobin_counter2_matches_closed_form() {
    let r = reproduce_default("roundrobin-counter2").unwrap();
    assert_eq!(r.value("u_A(1,2)").unwrap().exact, int(1));
    let v = r.value("u_A(2,2)").unwrap();
    assert_eq!(v.deviation(), Some(int(0)));
}

#[test]
fn counter1_exact_values() {
    let r = reproduce_default("dictatorship-counter1").unwrap();
    assert_eq!(r.value("u_A(1,1)").unwrap().exact, ratio(103, 50));
    assert_eq!(r.value("u_A(2,1)").unwrap().exact, ratio(83, 50));
}

#[test]
fn parameter_ranges_are_enforced() {
    assert!(matches!(reproduce("uniform-counter3", &ratio(1, 8), &int(10)), Err(Error::Parameter(_))));
    assert!(matches!(reproduce("uniform-counter3", &int(0), &int(10)), Err(Error::Parameter(_))));
    assert!(matches!(reproduce("adverse-competition", &eps(), &int(1)), Err(Error::Parameter(_))));
    assert!(matches!(reproduce("nope", &eps(), &int(10)), Err(Error::UnknownName(_))));
}

#[test]
fn sequence_parsing_rejects_unknown_letters() {
    assert!("AB?".parse::<TurnSequence>().is_err());
}
