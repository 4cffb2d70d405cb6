//! Expected mechanism welfare against the brute-force optimum.

use alloc::vec::Vec;

use crate::error::Result;
use crate::greedy::brute_force_opt;
use crate::mechanisms::{Mechanism, MechanismId};
use crate::model::WelfareModel;
use crate::profile::{bid_profiles_up_to, BidProfile};
use crate::rational::{ratio, Rational};

/// Rational lower bound used for `1 - 1/e` (0.6321...).
pub fn one_minus_inv_e_lower() -> Rational {
    ratio(632, 1000)
}

/// Fraction of the optimum each mechanism guarantees.
pub fn guaranteed_fraction(id: MechanismId, players: usize) -> Rational {
    match id {
        MechanismId::TwoPlayer | MechanismId::Fixed(_) => ratio(1, 2),
        MechanismId::Uniform | MechanismId::Warmup => one_minus_inv_e_lower(),
        MechanismId::Disjoint => ratio(1, players as i64 + 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRow {
    pub bids: BidProfile,
    pub welfare: Rational,
    pub opt: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub mechanism: MechanismId,
    pub fraction: Rational,
    pub disjoint_opt: bool,
    pub rows: Vec<ApproxRow>,
}

impl ApproxReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &ApproxRow> {
        self.rows.iter().filter(|r| !r.holds)
    }
}

/// For every bid profile up to `budget_cap`, checks expected welfare
/// `>= fraction * OPT`, with OPT over disjoint profiles when `disjoint_opt`.
pub fn approximation_audit<M: WelfareModel + ?Sized>(
    mech: &Mechanism<'_, M>,
    budget_cap: usize,
    disjoint_opt: bool,
    fraction: Rational,
    opt_limit: u128,
) -> Result<ApproxReport> {
    let model = mech.model();
    let mut cap = budget_cap.min(model.ground_size());
    if mech.table().is_some() || mech.scalar_table().is_some() {
        cap = cap.min(mech.t_max());
    }
    let mut rows = Vec::new();
    for bids in bid_profiles_up_to(model.player_count(), cap) {
        let welfare = mech.expected_welfare(&bids)?;
        let (_, opt) = brute_force_opt(model, &bids, disjoint_opt, opt_limit)?;
        let holds = welfare >= &fraction * &opt;
        rows.push(ApproxRow { bids, welfare, opt, holds });
    }
    Ok(ApproxReport { mechanism: mech.id(), fraction, disjoint_opt, rows })
}
