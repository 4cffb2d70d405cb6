//! Reproduction of the published counterexamples with exact values.
//!
//! Each report lists the exact utilities, the printed closed forms
//! evaluated at the same ε, and whether the claimed inequality holds.
//! Printed forms that drop O(ε) terms are compared, not asserted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::checks::{
    check_adverse_competition, check_agi, check_anonymity, check_mei, check_nondecreasing_submodular, CheckOptions,
};
use crate::error::{Error, Result};
use crate::fixtures::{
    adverse_competition, anonymity_without_mei, anonymous_three_player, counter1, counter2, counter3, disjoint_asymmetric,
    mei_without_anonymity, single_valuable_element,
};
use crate::greedy::{brute_force_opt, locally_greedy, DEFAULT_OPT_LIMIT};
use crate::mechanisms::{FixedPolicy, Mechanism, MechanismConfig, MechanismId};
use crate::model::WelfareModel;
use crate::or_model::{OrModel, SeedCredit};
use crate::profile::{AllocationProfile, BidProfile, ElementSet};
use crate::rational::{int, parse_eps_expr, ratio, Rational};

use super::infeasibility::extension_infeasibility;

pub const CASES: &[&str] = &[
    "dictatorship-counter1",
    "largest-remaining-counter1",
    "roundrobin-counter2",
    "smallest-remaining-counter2",
    "uniform-counter3",
    "adverse-competition",
    "extension-infeasibility",
    "disjoint-asymmetric",
    "anonymity-relations",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproValue {
    pub label: String,
    pub exact: Rational,
    /// Closed form as printed, in terms of `eps`.
    pub printed: Option<&'static str>,
    pub printed_value: Option<Rational>,
}

impl ReproValue {
    fn exact(label: impl Into<String>, exact: Rational) -> Self {
        Self { label: label.into(), exact, printed: None, printed_value: None }
    }

    fn printed(label: impl Into<String>, exact: Rational, printed: &'static str, eps: &Rational) -> Self {
        let printed_value = parse_eps_expr(printed, eps).ok();
        Self { label: label.into(), exact, printed: Some(printed), printed_value }
    }

    /// `|exact - printed|`, when a printed form exists.
    pub fn deviation(&self) -> Option<Rational> {
        self.printed_value.as_ref().map(|p| (&self.exact - p).abs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproReport {
    pub case: &'static str,
    pub epsilon: Rational,
    pub n: Rational,
    pub values: Vec<ReproValue>,
    pub claim: String,
    pub claim_holds: bool,
    pub notes: Vec<String>,
}

impl ReproReport {
    pub fn value(&self, label: &str) -> Option<&ReproValue> {
        self.values.iter().find(|v| v.label == label)
    }
}

fn eps_range(eps: &Rational) -> Result<()> {
    if !eps.is_positive() || *eps >= ratio(1, 8) {
        return Err(Error::Parameter(format!("epsilon {eps} outside (0, 1/8)")));
    }
    Ok(())
}

fn n_range(n: &Rational) -> Result<()> {
    if *n <= Rational::one() {
        return Err(Error::Parameter(format!("N = {n} must exceed 1")));
    }
    Ok(())
}

fn bids(b: &[usize]) -> BidProfile {
    BidProfile::new(b.to_vec())
}

fn labelled(model: &dyn WelfareModel, p: &AllocationProfile) -> String {
    let sets: Vec<String> = p
        .sets()
        .iter()
        .map(|s| {
            let names: Vec<String> = s.iter().map(|e| model.element_label(e)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    format!("({})", sets.join(", "))
}

fn ordering_case(
    case: &'static str,
    model: &OrModel,
    policy: FixedPolicy,
    low: [usize; 2],
    high: [usize; 2],
    printed: [&'static str; 2],
    eps: &Rational,
) -> Result<ReproReport> {
    let mech = Mechanism::prepare(model, MechanismId::Fixed(policy), low[0].max(high[0]) + low[1].max(high[1]), MechanismConfig::default())?;
    let mut values = Vec::new();
    let mut notes = Vec::new();
    let mut u_a = Vec::new();
    for (b, p) in [low, high].into_iter().zip(printed) {
        let bp = bids(&b);
        let u = mech.expected_utilities(&bp)?;
        let (_, seq, prof) = mech.outcomes(&bp)?.remove(0);
        notes.push(format!("{policy} at {bp}: order {seq}, allocation {}", labelled(model, &prof)));
        values.push(ReproValue::printed(format!("u_A{bp}"), u[0].clone(), p, eps));
        u_a.push(u[0].clone());
    }
    let claim_holds = u_a[1] < u_a[0];
    Ok(ReproReport {
        case,
        epsilon: eps.clone(),
        n: int(0),
        values,
        claim: format!("u_A{} < u_A{}", bids(&high), bids(&low)),
        claim_holds,
        notes,
    })
}

fn counter1_case(case: &'static str, policy: FixedPolicy, eps: &Rational) -> Result<ReproReport> {
    let model = counter1(eps, SeedCredit::EdgesOnly)?;
    let mut report = ordering_case(case, &model, policy, [1, 1], [2, 1], ["2", "16/10"], eps)?;
    // The narrative allocations, evaluated directly.
    let narrative = [(["c1"].as_slice(), ["c3"].as_slice()), (["c1", "c3"].as_slice(), ["c2"].as_slice())];
    for (a, b) in narrative {
        let p = model.profile(&[a, b])?;
        let u = model.utilities(&p)?;
        report.values.push(ReproValue::exact(format!("u_A at {}", labelled(&model, &p)), u[0].clone()));
    }
    let single = |id: &str| -> Result<Rational> { model.welfare(&model.profile(&[&[id], &[]])?) };
    report.notes.push(format!(
        "single-seed welfare: c1 = {}, c2 = {}, c3 = {}; the greedy opens with the larger of c1 and c2",
        single("c1")?,
        single("c2")?,
        single("c3")?
    ));
    Ok(report)
}

fn counter2_case(case: &'static str, policy: FixedPolicy, eps: &Rational) -> Result<ReproReport> {
    let model = counter2(eps, SeedCredit::EdgesOnly)?;
    let mut report = ordering_case(case, &model, policy, [1, 2], [2, 2], ["1", "1/2+4eps"], eps)?;
    let narrative = model.profile(&[&["c1", "c3"], &["c2", "c4"]])?;
    report.values.push(ReproValue::exact(format!("u_A at {}", labelled(&model, &narrative)), model.utilities(&narrative)?[0].clone()));
    Ok(report)
}

fn uniform_counter3(eps: &Rational) -> Result<ReproReport> {
    let mut values = Vec::new();
    let mut notes = Vec::new();
    let mut edges_only = Vec::new();
    for credit in [SeedCredit::EdgesOnly, SeedCredit::Owner] {
        let model = counter3(eps, credit)?;
        let mech = Mechanism::prepare(&model, MechanismId::Uniform, 5, MechanismConfig::default())?;
        for (b, printed) in [([3, 1], "5/8+3/4*eps"), ([4, 1], "3/5+4/5*eps")] {
            let bp = bids(&b);
            let u = mech.expected_utilities(&bp)?[0].clone();
            let label = format!("u_A{bp} [{}]", credit.name());
            if credit == SeedCredit::EdgesOnly {
                edges_only.push(u.clone());
                values.push(ReproValue::printed(label, u, printed, eps));
            } else {
                values.push(ReproValue::exact(label, u));
            }
        }
        if credit == SeedCredit::EdgesOnly {
            let order = crate::greedy::uniform_greedy(&model, 5)?;
            let names: Vec<String> = order.elements.iter().map(|&e| model.element_label(e)).collect();
            notes.push(format!("union-greedy order: {}", names.join(", ")));
        }
    }
    notes.push("k=2: the uniform random greedy mechanism is not strategyproof".to_string());
    Ok(ReproReport {
        case: "uniform-counter3",
        epsilon: eps.clone(),
        n: int(0),
        values,
        claim: "u_A(4,1) < u_A(3,1)".to_string(),
        claim_holds: edges_only[1] < edges_only[0],
        notes,
    })
}

fn adverse_case(n: &Rational) -> Result<ReproReport> {
    let model = adverse_competition(n)?;
    let p = |a: &[usize], b: &[usize]| -> Result<AllocationProfile> {
        AllocationProfile::new(vec![a.iter().copied().collect(), b.iter().copied().collect()], 2)
    };
    let holder = model.utilities(&p(&[0], &[1])?)?;
    let dropped = model.utilities(&p(&[], &[0])?)?;
    let mut values = vec![
        ReproValue::exact("u_A({u1},{u2})", holder[0].clone()),
        ReproValue::exact("u_B({u1},{u2})", holder[1].clone()),
        ReproValue::exact("u_A({},{u1})", dropped[0].clone()),
    ];
    let opts = CheckOptions { max_set: 2, ..CheckOptions::default() }.disjoint();
    let verdict = check_adverse_competition(&model, &opts)?;
    let mut notes = vec![format!("adverse competition check: {}", if verdict.passed() { "PASS" } else { "FAIL" })];
    if let Some(w) = verdict.witness() {
        notes.push(format!("witness: {w}"));
    }
    let opt = brute_force_opt(&model, &bids(&[0, 1]), true, DEFAULT_OPT_LIMIT)?.1;
    values.push(ReproValue::exact("OPT(0,1)", opt));
    Ok(ReproReport {
        case: "adverse-competition",
        epsilon: int(0),
        n: n.clone(),
        values,
        claim: "the holder of u1 at (1,1) gains by bidding 0".to_string(),
        claim_holds: dropped[0] > holder[0] && !verdict.passed(),
        notes,
    })
}

fn infeasibility_case() -> Result<ReproReport> {
    let model = single_valuable_element()?;
    let a = extension_infeasibility(&model)?;
    let mut values: Vec<ReproValue> = a
        .rows
        .iter()
        .flat_map(|r| {
            r.utilities.iter().enumerate().map(move |(i, u)| ReproValue::exact(format!("w^{}{}", (b'A' + i as u8) as char, r.bids), u.clone()))
        })
        .collect();
    for (i, c) in a.offsets.iter().enumerate() {
        values.push(ReproValue::exact(format!("c_{}", (b'A' + i as u8) as char), c.clone()));
    }
    values.push(ReproValue::exact("max welfare at (1,1,1)", a.max_welfare.clone()));
    values.push(ReproValue::exact("min welfare allowed at (1,1,1)", a.min_required_welfare.clone()));
    let notes = vec![
        format!(
            "partial rule: monotone {}, adverse competition {}, cross-monotone {}",
            a.rule_monotone, a.rule_adverse_competition, a.rule_cross_monotone
        ),
        format!(
            "utility bounds with welfare held at its (1,1,1)-e_j level: {}",
            a.bounds_at_constant_welfare.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
        ),
        format!("welfare cap with greedy increments: {}", a.forced_welfare_cap()),
        format!("zero welfare satisfies the constraints with exact increments: {}", a.zero_welfare_feasible),
    ];
    Ok(ReproReport {
        case: "extension-infeasibility",
        epsilon: int(0),
        n: int(0),
        values,
        claim: "no allocation at (1,1,1) with positive welfare respects adverse competition".to_string(),
        claim_holds: a.demonstrates_infeasibility(),
        notes,
    })
}

fn asymmetric_case(eps: &Rational, n: &Rational) -> Result<ReproReport> {
    let model = disjoint_asymmetric(eps, n)?;
    let b = bids(&[1, 1]);
    let run = locally_greedy(&model, &"AB".parse()?, true)?;
    let (_, opt) = brute_force_opt(&model, &b, true, DEFAULT_OPT_LIMIT)?;
    let ratio_value = &opt / &run.welfare;
    let printed = (n + int(1)) / (int(2) + eps);
    let anonymity = check_anonymity(&model, &CheckOptions::default().disjoint())?;
    Ok(ReproReport {
        case: "disjoint-asymmetric",
        epsilon: eps.clone(),
        n: n.clone(),
        values: vec![
            ReproValue::exact("greedy welfare (A first)", run.welfare.clone()),
            ReproValue::exact("OPT", opt),
            ReproValue { label: "ratio".into(), exact: ratio_value.clone(), printed: Some("(N+1)/(2+eps)"), printed_value: Some(printed.clone()) },
        ],
        claim: "A-first disjoint greedy loses a factor (N+1)/(2+eps)".to_string(),
        claim_holds: ratio_value == printed,
        notes: vec![
            format!("allocation: {}", labelled(&model, &run.profile)),
            format!("anonymity check: {}", if anonymity.passed() { "PASS" } else { "FAIL" }),
        ],
    })
}

fn anonymity_relations() -> Result<ReproReport> {
    let two = CheckOptions { max_set: 2, ..CheckOptions::default() }.disjoint();
    let three = CheckOptions { max_set: 3, ..CheckOptions::default() }.disjoint();
    let verdict = |v: bool| if v { "PASS" } else { "FAIL" };
    let mut notes = Vec::new();
    let mut ok = true;

    let m = mei_without_anonymity()?;
    let (mei, anon) = (check_mei(&m, &two)?.passed(), check_anonymity(&m, &two)?.passed());
    let (sub, adv) = (check_nondecreasing_submodular(&m, &two)?.passed(), check_adverse_competition(&m, &two)?.passed());
    notes.push(format!("mei-without-anonymity: MeI {}, anonymity {}, submodular {}, adverse {}", verdict(mei), verdict(anon), verdict(sub), verdict(adv)));
    ok &= mei && !anon && sub && adv;

    let m = anonymity_without_mei()?;
    let (mei, anon) = (check_mei(&m, &two)?.passed(), check_anonymity(&m, &two)?.passed());
    let (sub, adv) = (check_nondecreasing_submodular(&m, &two)?.passed(), check_adverse_competition(&m, &two)?.passed());
    notes.push(format!("anonymity-without-mei: MeI {}, anonymity {}, submodular {}, adverse {}", verdict(mei), verdict(anon), verdict(sub), verdict(adv)));
    ok &= !mei && anon && sub && adv;

    let m = anonymous_three_player()?;
    let (mei, agi, anon) = (check_mei(&m, &three)?.passed(), check_agi(&m, &three)?.passed(), check_anonymity(&m, &three)?.passed());
    let (sub, adv) = (check_nondecreasing_submodular(&m, &three)?.passed(), check_adverse_competition(&m, &three)?.passed());
    notes.push(format!(
        "anonymous-three-player: MeI {}, AgI {}, anonymity {}, submodular {}, adverse {}",
        verdict(mei),
        verdict(agi),
        verdict(anon),
        verdict(sub),
        verdict(adv)
    ));
    ok &= !mei && !agi && anon && sub && adv;

    let split = AllocationProfile::new(vec![ElementSet::from([0]), ElementSet::from([1]), ElementSet::from([2])], 3)?;
    Ok(ReproReport {
        case: "anonymity-relations",
        epsilon: int(0),
        n: int(0),
        values: vec![ReproValue::exact("f_1(x,y,z)", m.utilities(&split)?[0].clone())],
        claim: "MeI and anonymity are incomparable for two players; anonymity does not imply MeI or AgI for three".to_string(),
        claim_holds: ok,
        notes,
    })
}

/// Runs one named case. `epsilon` must lie in (0, 1/8) for the OR cases
/// and `n` must exceed 1 for the cases that use it.
pub fn reproduce(case: &str, epsilon: &Rational, n: &Rational) -> Result<ReproReport> {
    match case {
        "dictatorship-counter1" => {
            eps_range(epsilon)?;
            counter1_case("dictatorship-counter1", FixedPolicy::Dictatorship, epsilon)
        }
        "largest-remaining-counter1" => {
            eps_range(epsilon)?;
            counter1_case("largest-remaining-counter1", FixedPolicy::LargestRemaining, epsilon)
        }
        "roundrobin-counter2" => {
            eps_range(epsilon)?;
            counter2_case("roundrobin-counter2", FixedPolicy::RoundRobin, epsilon)
        }
        "smallest-remaining-counter2" => {
            eps_range(epsilon)?;
            counter2_case("smallest-remaining-counter2", FixedPolicy::SmallestRemaining, epsilon)
        }
        "uniform-counter3" => {
            eps_range(epsilon)?;
            uniform_counter3(epsilon)
        }
        "adverse-competition" => {
            n_range(n)?;
            adverse_case(n)
        }
        "extension-infeasibility" => infeasibility_case(),
        "disjoint-asymmetric" => {
            eps_range(epsilon)?;
            n_range(n)?;
            asymmetric_case(epsilon, n)
        }
        "anonymity-relations" => anonymity_relations(),
        other => Err(Error::UnknownName(format!("case {other}"))),
    }
}

/// `reproduce` with ε = 1/100 and N = 10.
pub fn reproduce_default(case: &str) -> Result<ReproReport> {
    reproduce(case, &ratio(1, 100), &int(10))
}
