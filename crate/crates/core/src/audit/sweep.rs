//! Exhaustive own-bid monotonicity sweep over all bid profiles up to a cap.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::mechanisms::{Mechanism, MechanismId};
use crate::model::WelfareModel;
use crate::profile::{bid_profiles_up_to, BidProfile};
use crate::rational::Rational;

/// Player `player` loses by raising its bid from `bids` to `raised`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub player: usize,
    pub bids: BidProfile,
    pub raised: BidProfile,
    pub before: Rational,
    pub after: Rational,
}

impl MonotonicityWitness {
    /// Recomputes both expectations and confirms the strict decrease.
    pub fn reverify<M: WelfareModel + ?Sized>(&self, mech: &Mechanism<'_, M>) -> Result<bool> {
        let before = mech.expected_utilities(&self.bids)?.swap_remove(self.player);
        let after = mech.expected_utilities(&self.raised)?.swap_remove(self.player);
        Ok(before == self.before && after == self.after && after < before)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub mechanism: MechanismId,
    pub budget_cap: usize,
    pub profiles_checked: usize,
    /// Per player: no witness found.
    pub monotone: Vec<bool>,
    pub witnesses: Vec<MonotonicityWitness>,
    /// Expected utilities per bid profile, in canonical order.
    pub utilities: BTreeMap<BidProfile, Vec<Rational>>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Checks `u_i(b_i, b_-i) <= u_i(b_i + 1, b_-i)` for every player and every
/// bid profile whose raised total stays within the cap and the ground set.
pub fn monotonicity_sweep<M: WelfareModel + ?Sized>(mech: &Mechanism<'_, M>, budget_cap: usize) -> Result<AuditReport> {
    let model = mech.model();
    let k = model.player_count();
    let mut cap = budget_cap.min(model.ground_size());
    if mech.table().is_some() || mech.scalar_table().is_some() {
        cap = cap.min(mech.t_max());
    }
    let mut utilities = BTreeMap::new();
    for bids in bid_profiles_up_to(k, cap) {
        let u = mech.expected_utilities(&bids)?;
        utilities.insert(bids, u);
    }
    let mut witnesses = Vec::new();
    let mut monotone = alloc::vec![true; k];
    for (bids, u) in &utilities {
        for i in 0..k {
            let raised = bids.incremented(i);
            if let Some(v) = utilities.get(&raised) {
                if v[i] < u[i] {
                    monotone[i] = false;
                    witnesses.push(MonotonicityWitness {
                        player: i,
                        bids: bids.clone(),
                        raised,
                        before: u[i].clone(),
                        after: v[i].clone(),
                    });
                }
            }
        }
    }
    Ok(AuditReport {
        mechanism: mech.id(),
        budget_cap: cap,
        profiles_checked: utilities.len(),
        monotone,
        witnesses,
        utilities,
    })
}
