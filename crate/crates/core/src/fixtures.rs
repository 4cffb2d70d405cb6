//! Hand-built instances: the three OR counterexample graphs and the small
//! tabular models used to separate the structural assumptions.
//!
//! OR fixtures weight every `c` node by ε and every `u` node by 1, and
//! only the `c` nodes are seed candidates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::or_model::{OrModel, SeedCredit, SpreadGraph};
use crate::profile::{AllocationProfile, ProfileDomain};
use crate::rational::{int, parse_eps_expr, ratio, Rational};
use crate::tabular::TabularModel;

pub const FIXTURE_NAMES: &[&str] = &[
    "counter1",
    "counter2",
    "counter3",
    "adverse-competition",
    "extension-infeasibility",
    "mei-without-anonymity",
    "anonymity-without-mei",
    "anonymous-three-player",
    "disjoint-asymmetric",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureParams {
    pub epsilon: Rational,
    /// Large-value parameter of the adverse-competition and asymmetric instances.
    pub n: Rational,
    pub seed_credit: SeedCredit,
}

impl Default for FixtureParams {
    fn default() -> Self {
        Self { epsilon: ratio(1, 100), n: int(10), seed_credit: SeedCredit::EdgesOnly }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub instance: Instance,
    /// Profiles the model is defined on; tabular fixtures over disjoint
    /// profiles must be driven by the disjoint greedy.
    pub domain: ProfileDomain,
}

pub fn load_fixture(name: &str, params: &FixtureParams) -> Result<Fixture> {
    let eps = &params.epsilon;
    let (instance, domain): (Instance, ProfileDomain) = match name {
        "counter1" => (counter1(eps, params.seed_credit)?.into(), ProfileDomain::All),
        "counter2" => (counter2(eps, params.seed_credit)?.into(), ProfileDomain::All),
        "counter3" => (counter3(eps, params.seed_credit)?.into(), ProfileDomain::All),
        "adverse-competition" => (adverse_competition(&params.n)?.into(), ProfileDomain::Disjoint),
        "extension-infeasibility" => (single_valuable_element()?.into(), ProfileDomain::All),
        "mei-without-anonymity" => (mei_without_anonymity()?.into(), ProfileDomain::Disjoint),
        "anonymity-without-mei" => (anonymity_without_mei()?.into(), ProfileDomain::Disjoint),
        "anonymous-three-player" => (anonymous_three_player()?.into(), ProfileDomain::Disjoint),
        "disjoint-asymmetric" => (disjoint_asymmetric(eps, &params.n)?.into(), ProfileDomain::Disjoint),
        other => return Err(Error::UnknownName(format!("fixture {other}"))),
    };
    Ok(Fixture { name: name.to_string(), instance, domain })
}

fn or_fixture(
    eps: &Rational,
    credit: SeedCredit,
    seeds: usize,
    targets: usize,
    edges: &[(usize, usize, &str)],
) -> Result<OrModel> {
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(Error::Parameter(format!("epsilon {eps} outside (0,1)")));
    }
    let mut g = SpreadGraph::new();
    for t in 1..=targets {
        g.add_node(&format!("u{t}"), int(1))?;
    }
    let mut candidates = Vec::new();
    for s in 1..=seeds {
        candidates.push(g.add_node(&format!("c{s}"), eps.clone())?);
    }
    for &(c, u, p) in edges {
        let p = parse_eps_expr(p, eps).map_err(|e| Error::InvalidModel(e.to_string()))?;
        g.add_edge(&format!("c{c}"), &format!("u{u}"), p)?;
    }
    OrModel::with_candidates(g, 2, candidates, credit)
}

/// Dictatorship counterexample: `c1` covers `u1,u2` surely, `c2` contests
/// them, `c3` offers `u4` alone.
pub fn counter1(eps: &Rational, credit: SeedCredit) -> Result<OrModel> {
    or_fixture(
        eps,
        credit,
        3,
        4,
        &[(1, 1, "1"), (1, 2, "1"), (2, 3, "1/4+eps"), (2, 1, "9/10"), (2, 2, "9/10"), (3, 4, "1/2")],
    )
}

/// Round-robin counterexample.
pub fn counter2(eps: &Rational, credit: SeedCredit) -> Result<OrModel> {
    or_fixture(eps, credit, 4, 4, &[(1, 1, "1"), (2, 1, "1-2eps"), (2, 2, "eps"), (3, 3, "1"), (4, 4, "3eps")])
}

/// Uniform-random counterexample: four interchangeable seeds on `u2`.
pub fn counter3(eps: &Rational, credit: SeedCredit) -> Result<OrModel> {
    or_fixture(eps, credit, 5, 2, &[(1, 1, "eps"), (2, 2, "1"), (3, 2, "1"), (4, 2, "1"), (5, 2, "1")])
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Two items: `u1` is worth 1 to its holder and `n` to the other player,
/// `u2` is worth 1 to both once allocated.
pub fn adverse_competition(n: &Rational) -> Result<TabularModel> {
    if *n <= Rational::one() {
        return Err(Error::Parameter(format!("N = {n} must exceed 1")));
    }
    TabularModel::from_fn(2, labels(&["u1", "u2"]), ProfileDomain::Disjoint, |p| {
        let union = p.union();
        (0..2)
            .map(|i| {
                let mut v = Rational::zero();
                if p.set(i).contains(0) {
                    v += int(1);
                } else if union.contains(0) {
                    v += n;
                }
                if union.contains(1) {
                    v += int(1);
                }
                v
            })
            .collect()
    })
}

/// Three players, one valuable element `c` shared equally among holders,
/// two worthless ones.
pub fn single_valuable_element() -> Result<TabularModel> {
    TabularModel::from_fn(3, labels(&["c", "z1", "z2"]), ProfileDomain::All, |p| {
        let holders = (0..3).filter(|&i| p.set(i).contains(0)).count();
        (0..3)
            .map(|i| if p.set(i).contains(0) { ratio(1, holders as i64) } else { Rational::zero() })
            .collect()
    })
}

/// Symmetric two-player two-item table: `own(1)` for one item alone,
/// `own(2)` for both, `split` to each player when they hold one each.
fn two_item_table(one: [Rational; 2], both: [Rational; 2], split: [Rational; 2]) -> Result<TabularModel> {
    TabularModel::from_fn(2, labels(&["a", "b"]), ProfileDomain::Disjoint, |p| match (p.set(0).len(), p.set(1).len()) {
        (0, 0) => vec![Rational::zero(), Rational::zero()],
        (1, 0) => vec![one[0].clone(), Rational::zero()],
        (0, 1) => vec![Rational::zero(), one[1].clone()],
        (2, 0) => vec![both[0].clone(), Rational::zero()],
        (0, 2) => vec![Rational::zero(), both[1].clone()],
        _ => vec![split[0].clone(), split[1].clone()],
    })
}

/// MeI and adverse competition hold, anonymity fails: a split pays 8/5 and 7/5.
pub fn mei_without_anonymity() -> Result<TabularModel> {
    two_item_table([int(2), int(2)], [int(3), int(3)], [ratio(8, 5), ratio(7, 5)])
}

/// Anonymous but not MeI: a split pays 3/4 each against 2 for one holder.
pub fn anonymity_without_mei() -> Result<TabularModel> {
    two_item_table([int(1), int(1)], [int(2), int(2)], [ratio(3, 4), ratio(3, 4)])
}

/// Three players, three items, anonymous by construction but neither MeI
/// nor AgI. Player utilities depend only on the shape of the profile.
///
/// Shapes not pinned down by the construction (`f_1(x,0,0)`,
/// `f_1(x,y,0)`, `f_1({x,y},0,0)`) take 1/2, 3/8 and 3/4, which keep
/// adverse competition and submodularity.
pub fn anonymous_three_player() -> Result<TabularModel> {
    TabularModel::from_fn(3, labels(&["a1", "a2", "a3"]), ProfileDomain::Disjoint, |p| {
        (0..3).map(|i| anonymous_shape_value(p, i)).collect()
    })
}

fn anonymous_shape_value(p: &AllocationProfile, i: usize) -> Rational {
    let own = p.set(i).len();
    let mut others: Vec<usize> = (0..3).filter(|&j| j != i).map(|j| p.set(j).len()).collect();
    others.sort_unstable_by(|a, b| b.cmp(a));
    match (own, others[0], others[1]) {
        (0, _, _) => Rational::zero(),
        (1, 0, 0) => ratio(1, 2),
        (1, 1, 0) => ratio(3, 8),
        (1, 1, 1) => ratio(7, 24),
        (1, 2, 0) => ratio(1, 4),
        (2, 0, 0) => ratio(3, 4),
        (2, 1, 0) => ratio(3, 4),
        _ => int(1),
    }
}

/// Additive two-item model where A values the items 1 and 1+ε and B values
/// them 1 and `n`; A-first locally greedy loses a factor `(n+1)/(2+ε)`.
pub fn disjoint_asymmetric(eps: &Rational, n: &Rational) -> Result<TabularModel> {
    let values = [[int(1), int(1) + eps], [int(1), n.clone()]];
    TabularModel::from_fn(2, labels(&["item1", "item2"]), ProfileDomain::Disjoint, |p| {
        (0..2).map(|i| p.set(i).iter().map(|e| &values[i][e]).sum()).collect()
    })
}

/// MeI + AgI model over disjoint profiles: `f_i = |S_i| / |S| * w(|S|)` for a
/// welfare profile `w` indexed by union size.
pub fn share_table(players: usize, ground: usize, w: &[Rational]) -> Result<TabularModel> {
    if w.len() != ground + 1 || !w[0].is_zero() {
        return Err(Error::Parameter("w must list w(0) = 0 .. w(n)".into()));
    }
    let names: Vec<String> = (1..=ground).map(|e| format!("e{e}")).collect();
    TabularModel::from_fn(players, names, ProfileDomain::Disjoint, |p| {
        let t = p.union().len();
        (0..players)
            .map(|i| if t == 0 { Rational::zero() } else { &w[t] * int(p.set(i).len() as i64) / int(t as i64) })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::WelfareModel;

    #[test]
    fn every_name_loads() {
        for name in FIXTURE_NAMES {
            let f = load_fixture(name, &FixtureParams::default()).unwrap();
            assert_eq!(f.name, *name);
        }
        assert!(load_fixture("nope", &FixtureParams::default()).is_err());
    }

    #[test]
    fn fixture_shapes() {
        let eps = ratio(1, 100);
        let c1 = counter1(&eps, SeedCredit::Owner).unwrap();
        assert_eq!(c1.graph().node_count(), 7);
        assert_eq!(c1.ground_size(), 3);
        assert_eq!(c1.graph().edges().len(), 6);
        let c3 = counter3(&eps, SeedCredit::Owner).unwrap();
        assert_eq!(c3.ground_size(), 5);
        assert!(counter2(&ratio(2, 3), SeedCredit::Owner).is_err());
        assert!(adverse_competition(&int(1)).is_err());
    }

    #[test]
    fn anonymous_three_player_pins_printed_values() {
        let m = anonymous_three_player().unwrap();
        let p = AllocationProfile::new(vec![[0].into(), [1].into(), [2].into()], 3).unwrap();
        assert_eq!(m.utilities(&p).unwrap(), vec![ratio(7, 24); 3]);
        let p = AllocationProfile::new(vec![[0, 1].into(), [2].into(), [].into()], 3).unwrap();
        assert_eq!(m.utilities(&p).unwrap(), vec![ratio(3, 4), ratio(1, 4), int(0)]);
    }
}
