//! Finite distributions over turn sequences with cached greedy outcomes.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::greedy::{locally_greedy, GreedyRun, TurnSequence};
use crate::model::WelfareModel;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEntry {
    pub sequence: TurnSequence,
    pub probability: Rational,
    pub run: GreedyRun,
    pub utilities: Vec<Rational>,
}

impl OrderEntry {
    pub fn new<M: WelfareModel + ?Sized>(model: &M, run: GreedyRun, probability: Rational) -> Result<Self> {
        let utilities = model.utilities(&run.profile)?;
        Ok(Self { sequence: run.sequence(), probability, run, utilities })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDistribution {
    entries: Vec<OrderEntry>,
}

impl OrderDistribution {
    /// Entries with zero probability are dropped.
    pub fn new(entries: Vec<OrderEntry>) -> Self {
        Self { entries: entries.into_iter().filter(|e| !e.probability.is_zero()).collect() }
    }

    pub fn point<M: WelfareModel + ?Sized>(model: &M, run: GreedyRun) -> Result<Self> {
        Ok(Self::new(alloc::vec![OrderEntry::new(model, run, Rational::one())?]))
    }

    pub fn entries(&self) -> &[OrderEntry] {
        &self.entries
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn total_probability(&self) -> Rational {
        self.entries.iter().map(|e| &e.probability).sum()
    }

    pub fn expected_utilities(&self) -> Vec<Rational> {
        let k = self.entries.first().map_or(0, |e| e.utilities.len());
        let mut out = alloc::vec![Rational::zero(); k];
        for e in &self.entries {
            for (o, u) in out.iter_mut().zip(&e.utilities) {
                *o += &e.probability * u;
            }
        }
        out
    }

    pub fn expected_welfare(&self) -> Rational {
        self.entries.iter().map(|e| &e.probability * &e.run.welfare).sum()
    }

    /// Entry selected by a uniform 64-bit draw: the first whose cumulative
    /// probability `c` satisfies `draw < c * 2^64`, compared exactly.
    pub fn sample(&self, draw: u64) -> &OrderEntry {
        let scaled = BigInt::from(draw);
        let mut cumulative = Rational::zero();
        for e in &self.entries {
            cumulative += &e.probability;
            let bound = cumulative.numer() << 64u32;
            if &scaled * cumulative.denom() < bound {
                return e;
            }
        }
        self.entries.last().expect("distribution is non-empty")
    }

    /// Checks probabilities lie in [0,1] and sum to 1, and that replaying
    /// each sequence reproduces the cached allocation and utilities.
    pub fn validate<M: WelfareModel + ?Sized>(&self, model: &M, disjoint: bool) -> Result<()> {
        if self.total_probability() != Rational::one() {
            return Err(Error::Invariant(alloc::format!("probabilities sum to {}", self.total_probability())));
        }
        for e in &self.entries {
            if e.probability < Rational::zero() || e.probability > Rational::one() {
                return Err(Error::Invariant(alloc::format!("probability {} out of range", e.probability)));
            }
            let replay = locally_greedy(model, &e.sequence, disjoint)?;
            if replay != e.run || model.utilities(&replay.profile)? != e.utilities {
                return Err(Error::Invariant(alloc::format!("cached outcome of {} does not replay", e.sequence)));
            }
        }
        Ok(())
    }
}
