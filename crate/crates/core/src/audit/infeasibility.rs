//! Three players, one valuable element: a strategyproof, adverse-competition
//! respecting rule for total budgets up to 2 that admits no extension with
//! positive welfare at `(1,1,1)`.
//!
//! The adverse-competition requirement at `b` reads
//! `w^i(b) <= w^i(b - e_j) + w(b) - w(b - e_j)` for all `j ≠ i` with
//! `b_j > 0`. Writing `c_i = min_j (w^i(b - e_j) - w(b - e_j))`, any split of
//! welfare `W` needs `0 <= p_i <= W + c_i` and `Σ p_i = W`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::greedy::{brute_force_opt, locally_greedy, TurnSequence, DEFAULT_OPT_LIMIT};
use crate::model::WelfareModel;
use crate::profile::BidProfile;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviourRow {
    pub bids: BidProfile,
    /// Player put first in the greedy order, if anyone bids.
    pub first: Option<usize>,
    pub utilities: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionAnalysis {
    pub rows: Vec<BehaviourRow>,
    /// The partial rule never lowers a player's utility when it raises its bid.
    pub rule_monotone: bool,
    /// The partial rule satisfies the adverse-competition inequality everywhere.
    pub rule_adverse_competition: bool,
    /// The partial rule satisfies `w^A(a,b,c) >= w^A(a-1,b+1,c)`-style cross monotonicity.
    pub rule_cross_monotone: bool,
    pub target: BidProfile,
    /// `c_i` per player at the target.
    pub offsets: Vec<Rational>,
    /// Largest welfare any allocation reaches at the target.
    pub max_welfare: Rational,
    /// Smallest welfare the constraints allow, before capping at `max_welfare`.
    pub min_required_welfare: Rational,
    pub positive_welfare_feasible: bool,
    pub zero_welfare_feasible: bool,
    /// Upper bounds on each utility when welfare stays at its `b - e_j` level.
    pub bounds_at_constant_welfare: Vec<Rational>,
}

impl ExtensionAnalysis {
    /// Welfare ceiling at the target when each step's increment is the
    /// greedy's marginal gain, zero past the first pick.
    pub fn forced_welfare_cap(&self) -> Rational {
        self.bounds_at_constant_welfare.iter().sum()
    }

    /// The rule is a valid partial mechanism and its only extensions have
    /// zero welfare at the target.
    pub fn demonstrates_infeasibility(&self) -> bool {
        self.rule_monotone
            && self.rule_adverse_competition
            && self.rule_cross_monotone
            && !self.positive_welfare_feasible
            && self.forced_welfare_cap().is_zero()
            && self.max_welfare > Rational::zero()
    }
}

const RULE: [([usize; 3], Option<usize>); 7] = [
    ([0, 0, 0], None),
    ([1, 0, 0], Some(0)),
    ([0, 1, 0], Some(1)),
    ([0, 0, 1], Some(2)),
    ([1, 1, 0], Some(0)),
    ([0, 1, 1], Some(1)),
    ([1, 0, 1], Some(2)),
];

fn lookup<'a>(rows: &'a [BehaviourRow], b: &BidProfile) -> Option<&'a BehaviourRow> {
    rows.iter().find(|r| &r.bids == b)
}

/// Runs the analysis on a three-player model; the bundled single-valuable-element
/// fixture reproduces the published behaviour table.
pub fn extension_infeasibility<M: WelfareModel + ?Sized>(model: &M) -> Result<ExtensionAnalysis> {
    if model.player_count() != 3 {
        return Err(Error::PlayerCount { expected: 3, found: model.player_count() });
    }
    let mut rows = Vec::new();
    for (bids, first) in RULE {
        let bids = BidProfile::new(bids.to_vec());
        let mut turns: Vec<usize> = first.into_iter().collect();
        for (i, &b) in bids.budgets().iter().enumerate() {
            if Some(i) != first {
                turns.extend(core::iter::repeat_n(i, b));
            } else {
                turns.extend(core::iter::repeat_n(i, b - 1));
            }
        }
        // Once the valuable element is taken, later picks are worthless; the
        // disjoint greedy keeps it with the first holder as in the table.
        let run = locally_greedy(model, &TurnSequence::new(turns), true)?;
        rows.push(BehaviourRow { bids, first, utilities: model.utilities(&run.profile)? });
    }
    let welfare = |r: &BehaviourRow| -> Rational { r.utilities.iter().sum() };

    let mut rule_monotone = true;
    let mut rule_adverse_competition = true;
    let mut rule_cross_monotone = true;
    for r in &rows {
        for i in 0..3 {
            if let Some(up) = lookup(&rows, &r.bids.incremented(i)) {
                rule_monotone &= up.utilities[i] >= r.utilities[i];
            }
            for j in (0..3).filter(|&j| j != i && r.bids.budgets()[j] > 0) {
                let mut down = r.bids.clone();
                down.0[j] -= 1;
                let d = lookup(&rows, &down).expect("rule is downward closed");
                rule_adverse_competition &= r.utilities[i] <= &d.utilities[i] + welfare(r) - welfare(d);
                if r.bids.budgets()[i] > 0 {
                    let mut shifted = r.bids.clone();
                    shifted.0[i] -= 1;
                    shifted.0[j] += 1;
                    if let Some(s) = lookup(&rows, &shifted) {
                        rule_cross_monotone &= r.utilities[i] >= s.utilities[i];
                    }
                }
            }
        }
    }

    let target = BidProfile::new(alloc::vec![1, 1, 1]);
    let (_, max_welfare) = brute_force_opt(model, &target, false, DEFAULT_OPT_LIMIT)?;
    let mut offsets = Vec::new();
    let mut bounds_at_constant_welfare = Vec::new();
    for i in 0..3 {
        let mut c: Option<Rational> = None;
        let mut hold: Option<Rational> = None;
        for j in (0..3).filter(|&j| j != i) {
            let mut down = target.clone();
            down.0[j] -= 1;
            let d = lookup(&rows, &down).expect("all (1,1,1) - e_j rows are tabled");
            let v = &d.utilities[i] - welfare(d);
            c = Some(match c {
                Some(cur) if cur <= v => cur,
                _ => v,
            });
            let h = d.utilities[i].clone();
            hold = Some(match hold {
                Some(cur) if cur <= h => cur,
                _ => h,
            });
        }
        offsets.push(c.expect("two opponents"));
        bounds_at_constant_welfare.push(hold.expect("two opponents"));
    }
    // W + c_i >= 0 for all i, and Σ (W + c_i) >= W.
    let sum_c: Rational = offsets.iter().sum();
    let per_player = offsets.iter().map(|c| -c).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let pooled = -sum_c / int(2);
    let min_required_welfare = if pooled > per_player { pooled } else { per_player };
    let positive_welfare_feasible = max_welfare > Rational::zero() && min_required_welfare <= max_welfare;
    let zero_welfare_feasible = min_required_welfare <= Rational::zero();
    Ok(ExtensionAnalysis {
        rows,
        rule_monotone,
        rule_adverse_competition,
        rule_cross_monotone,
        target,
        offsets,
        max_welfare,
        min_required_welfare,
        positive_welfare_feasible,
        zero_welfare_feasible,
        bounds_at_constant_welfare,
    })
}
