//! Deterministic turn orders, used as negative controls.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::greedy::TurnSequence;
use crate::profile::BidProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedPolicy {
    /// All of A's turns, then all of B's, and so on.
    Dictatorship,
    /// Cycle through players that still have budget.
    RoundRobin,
    /// Player with the most remaining budget; ties to the lower index.
    LargestRemaining,
    /// Player with the least positive remaining budget; ties to the lower index.
    SmallestRemaining,
}

impl FixedPolicy {
    pub const ALL: [FixedPolicy; 4] =
        [FixedPolicy::Dictatorship, FixedPolicy::RoundRobin, FixedPolicy::LargestRemaining, FixedPolicy::SmallestRemaining];

    pub fn name(self) -> &'static str {
        match self {
            FixedPolicy::Dictatorship => "dictatorship",
            FixedPolicy::RoundRobin => "round-robin",
            FixedPolicy::LargestRemaining => "largest-remaining",
            FixedPolicy::SmallestRemaining => "smallest-remaining",
        }
    }

    pub fn sequence(self, bids: &BidProfile) -> TurnSequence {
        let mut left = bids.budgets().to_vec();
        let k = left.len();
        let mut turns = Vec::with_capacity(bids.total());
        let mut next = 0;
        while left.iter().any(|&b| b > 0) {
            let p = match self {
                FixedPolicy::Dictatorship => left.iter().position(|&b| b > 0).unwrap(),
                FixedPolicy::RoundRobin => {
                    let p = (0..k).map(|o| (next + o) % k).find(|&p| left[p] > 0).unwrap();
                    next = (p + 1) % k;
                    p
                }
                FixedPolicy::LargestRemaining => {
                    let max = *left.iter().max().unwrap();
                    left.iter().position(|&b| b == max).unwrap()
                }
                FixedPolicy::SmallestRemaining => {
                    let min = *left.iter().filter(|&&b| b > 0).min().unwrap();
                    left.iter().position(|&b| b == min).unwrap()
                }
            };
            left[p] -= 1;
            turns.push(p);
        }
        TurnSequence::new(turns)
    }
}

impl fmt::Display for FixedPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixedPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FixedPolicy::ALL
            .into_iter()
            .find(|p| p.name() == s || p.name().replace('-', "_") == s)
            .ok_or_else(|| Error::UnknownName(alloc::format!("policy {s}")))
    }
}
