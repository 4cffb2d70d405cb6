//! Mechanisms: the two-player table, the warmup table, uniform random
//! greedy, the disjoint variant, and fixed-order controls, behind one
//! [`Mechanism`] handle offering exact expectations and seeded runs.

pub mod caratheodory;
pub mod distribution;
pub mod fixed;
pub mod scalar;
pub mod table;
pub mod uniform;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::greedy::{locally_greedy, TurnSequence};
use crate::model::{require_exact, WelfareModel};
use crate::profile::{multinomial, multiset_permutations, AllocationProfile, BidProfile};
use crate::rational::{int, Rational};

pub use caratheodory::caratheodory_prune;
pub use distribution::{OrderDistribution, OrderEntry};
pub use fixed::FixedPolicy;
pub use scalar::ScalarTable;
pub use table::{ConditionViolation, MechanismTable, TableEntry};

pub const WARN_UNIFORM_TWO_PLAYERS: &str = "uniform random greedy is not strategyproof for k=2";
pub const WARN_DISJOINT_MANY: &str = "disjoint mechanism for k>=3 uses uniform turn orders; strategyproofness is not established";
pub const WARN_DISJOINT_ANONYMITY: &str = "the approximation bound for disjoint allocations requires anonymous players";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MechanismId {
    TwoPlayer,
    Warmup,
    Uniform,
    Disjoint,
    Fixed(FixedPolicy),
}

impl MechanismId {
    pub fn name(self) -> &'static str {
        match self {
            MechanismId::TwoPlayer => "two-player",
            MechanismId::Warmup => "warmup",
            MechanismId::Uniform => "uniform",
            MechanismId::Disjoint => "disjoint",
            MechanismId::Fixed(p) => p.name(),
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-player" | "two_player" => Ok(MechanismId::TwoPlayer),
            "warmup" => Ok(MechanismId::Warmup),
            "uniform" => Ok(MechanismId::Uniform),
            "disjoint" => Ok(MechanismId::Disjoint),
            other => other
                .parse::<FixedPolicy>()
                .map(MechanismId::Fixed)
                .map_err(|_| Error::UnknownName(format!("mechanism {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismConfig {
    /// Run the locally greedy steps with the disjointness restriction
    /// (two-player table and fixed orders; always on for `Disjoint`).
    pub disjoint_greedy: bool,
    /// Most outcomes an exact expectation may enumerate.
    pub enumeration_cap: u128,
    /// Use `b_i / t * w(t)` for the uniform mechanism. Only valid once MeI
    /// and AgI have been verified for the model.
    pub closed_form: bool,
}

impl Default for MechanismConfig {
    fn default() -> Self {
        Self { disjoint_greedy: false, enumeration_cap: 1_000_000, closed_form: false }
    }
}

/// One realised allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub mechanism: MechanismId,
    pub bids: BidProfile,
    /// The turn sequence or, for union-greedy mechanisms, the assignment word.
    pub sequence: TurnSequence,
    pub profile: AllocationProfile,
    pub welfare: Rational,
    pub utilities: Vec<Rational>,
    pub trace: Vec<Rational>,
    pub warnings: Vec<&'static str>,
}

/// A mechanism bound to a model, with its tables built up to `t_max`.
#[derive(Debug, Clone)]
pub struct Mechanism<'m, M: ?Sized> {
    model: &'m M,
    id: MechanismId,
    config: MechanismConfig,
    t_max: usize,
    table: Option<MechanismTable>,
    scalar: Option<ScalarTable>,
}

impl<'m, M: WelfareModel + ?Sized> Mechanism<'m, M> {
    pub fn prepare(model: &'m M, id: MechanismId, t_max: usize, config: MechanismConfig) -> Result<Self> {
        require_exact(model)?;
        let t_max = t_max.min(model.ground_size());
        let k = model.player_count();
        let mut mech = Self { model, id, config, t_max, table: None, scalar: None };
        match id {
            MechanismId::TwoPlayer => {
                mech.table = Some(MechanismTable::build(model, t_max, mech.config.disjoint_greedy)?);
            }
            MechanismId::Disjoint => {
                mech.config.disjoint_greedy = true;
                if k == 2 {
                    mech.table = Some(MechanismTable::build(model, t_max, true)?);
                }
            }
            MechanismId::Warmup => mech.scalar = Some(ScalarTable::build(model, t_max)?),
            MechanismId::Uniform | MechanismId::Fixed(_) => {}
        }
        Ok(mech)
    }

    pub fn id(&self) -> MechanismId {
        self.id
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn config(&self) -> &MechanismConfig {
        &self.config
    }

    pub fn table(&self) -> Option<&MechanismTable> {
        self.table.as_ref()
    }

    pub fn scalar_table(&self) -> Option<&ScalarTable> {
        self.scalar.as_ref()
    }

    /// Whether outcomes are pairwise disjoint by construction.
    pub fn is_disjoint(&self) -> bool {
        self.config.disjoint_greedy || matches!(self.id, MechanismId::Uniform | MechanismId::Warmup | MechanismId::Disjoint)
    }

    pub fn warnings(&self) -> Vec<&'static str> {
        let k = self.model.player_count();
        let mut w = Vec::new();
        if self.id == MechanismId::Uniform && k == 2 {
            w.push(WARN_UNIFORM_TWO_PLAYERS);
        }
        if self.id == MechanismId::Disjoint && k >= 3 {
            w.push(WARN_DISJOINT_MANY);
        }
        if self.id == MechanismId::Disjoint || (self.id == MechanismId::TwoPlayer && self.config.disjoint_greedy) {
            w.push(WARN_DISJOINT_ANONYMITY);
        }
        w
    }

    fn check_bids(&self, bids: &BidProfile) -> Result<()> {
        let k = self.model.player_count();
        if bids.players() != k {
            return Err(Error::PlayerCount { expected: k, found: bids.players() });
        }
        bids.check_feasible(self.model.ground_size())?;
        let tabled = self.table.is_some() || self.scalar.is_some();
        if tabled && bids.total() > self.t_max {
            return Err(Error::Parameter(format!("bids {bids} exceed the table size {}", self.t_max)));
        }
        Ok(())
    }

    /// The outcome distribution: probability, turn sequence or word, profile.
    pub fn outcomes(&self, bids: &BidProfile) -> Result<Vec<(Rational, TurnSequence, AllocationProfile)>> {
        self.check_bids(bids)?;
        let b = bids.budgets();
        if let Some(table) = &self.table {
            let entry = table.entry(b[0], b[1]).expect("entry within table size");
            return Ok(entry
                .distribution
                .entries()
                .iter()
                .map(|e| (e.probability.clone(), e.sequence.clone(), e.run.profile.clone()))
                .collect());
        }
        if let Some(scalar) = &self.scalar {
            let entry = scalar.entry(b[0], b[1]).expect("entry within table size");
            return entry
                .words
                .iter()
                .map(|(w, p)| {
                    let prof = scalar::assignment_profile(&scalar.order().elements, w, 2, self.model.ground_size())?;
                    Ok((p.clone(), w.clone(), prof))
                })
                .collect();
        }
        match self.id {
            MechanismId::Fixed(policy) => {
                let seq = policy.sequence(bids);
                let run = locally_greedy(self.model, &seq, self.config.disjoint_greedy)?;
                Ok(vec![(Rational::one(), seq, run.profile)])
            }
            MechanismId::Uniform => {
                let (_, outs) = uniform::uniform_outcomes(self.model, bids, self.config.enumeration_cap)?;
                let p = Rational::one() / int(outs.len() as i64);
                Ok(outs.into_iter().map(|(w, prof)| (p.clone(), w, prof)).collect())
            }
            MechanismId::Disjoint => {
                let count = multinomial(b);
                if count > self.config.enumeration_cap {
                    return Err(Error::TooLarge { what: "turn-order enumeration", count, limit: self.config.enumeration_cap });
                }
                let p = Rational::one() / int(count as i64);
                multiset_permutations(b)
                    .into_iter()
                    .map(|w| {
                        let seq = TurnSequence::new(w);
                        let run = locally_greedy(self.model, &seq, true)?;
                        Ok((p.clone(), seq, run.profile))
                    })
                    .collect()
            }
            MechanismId::TwoPlayer | MechanismId::Warmup => unreachable!("tables are built in prepare"),
        }
    }

    /// Exact expected utilities over the mechanism's randomness.
    pub fn expected_utilities(&self, bids: &BidProfile) -> Result<Vec<Rational>> {
        if self.id == MechanismId::Uniform && self.config.closed_form {
            self.check_bids(bids)?;
            let order = crate::greedy::uniform_greedy(self.model, bids.total())?;
            return Ok(uniform::uniform_closed_form(&order, bids));
        }
        let mut out = vec![Rational::zero(); self.model.player_count()];
        for (p, _, prof) in self.outcomes(bids)? {
            for (o, u) in out.iter_mut().zip(self.model.utilities(&prof)?) {
                *o += &p * u;
            }
        }
        Ok(out)
    }

    pub fn expected_welfare(&self, bids: &BidProfile) -> Result<Rational> {
        Ok(self.expected_utilities(bids)?.into_iter().sum())
    }

    /// One seeded run of the mechanism.
    pub fn run(&self, bids: &BidProfile, rng_seed: u64) -> Result<RunOutcome> {
        self.check_bids(bids)?;
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let b = bids.budgets();
        let disjoint = self.config.disjoint_greedy;
        let finish = |sequence: TurnSequence, profile: AllocationProfile, trace: Vec<Rational>| -> Result<RunOutcome> {
            let utilities = self.model.utilities(&profile)?;
            Ok(RunOutcome {
                mechanism: self.id,
                bids: bids.clone(),
                sequence,
                welfare: utilities.iter().sum(),
                profile,
                utilities,
                trace,
                warnings: self.warnings(),
            })
        };
        if let Some(table) = &self.table {
            let entry = table.entry(b[0], b[1]).expect("entry within table size");
            let chosen = entry.distribution.sample(rng.next_u64());
            let run = locally_greedy(self.model, &chosen.sequence, disjoint)?;
            if run != chosen.run {
                return Err(Error::Invariant(format!("sequence {} does not replay its cached outcome", chosen.sequence)));
            }
            let trace = run.trace();
            return finish(chosen.sequence.clone(), run.profile, trace);
        }
        match self.id {
            MechanismId::Warmup => {
                let scalar = self.scalar.as_ref().expect("built in prepare");
                let entry = scalar.entry(b[0], b[1]).expect("entry within table size");
                let draw = rng.next_u64();
                let words: Vec<(&TurnSequence, &Rational)> = entry.words.iter().collect();
                let word = sample_word(&words, draw).clone();
                let order = scalar.order();
                let profile = scalar::assignment_profile(&order.elements, &word, 2, self.model.ground_size())?;
                let trace = (1..=word.len()).map(|j| order.delta(j)).collect();
                finish(word, profile, trace)
            }
            MechanismId::Uniform => {
                let order = crate::greedy::uniform_greedy(self.model, bids.total())?;
                let word = uniform::random_word(bids, &mut rng);
                let profile = scalar::assignment_profile(&order.elements, &word, bids.players(), self.model.ground_size())?;
                let trace = (1..=word.len()).map(|j| order.delta(j)).collect();
                finish(word, profile, trace)
            }
            MechanismId::Disjoint | MechanismId::Fixed(_) => {
                let seq = match self.id {
                    MechanismId::Fixed(policy) => policy.sequence(bids),
                    _ => uniform::random_word(bids, &mut rng),
                };
                let run = locally_greedy(self.model, &seq, disjoint)?;
                let trace = run.trace();
                finish(seq, run.profile, trace)
            }
            MechanismId::TwoPlayer => unreachable!("table is built in prepare"),
        }
    }
}

/// Exact cumulative-threshold selection against a 64-bit draw.
fn sample_word<'a>(words: &[(&'a TurnSequence, &Rational)], draw: u64) -> &'a TurnSequence {
    let scaled = num_bigint::BigInt::from(draw);
    let mut cumulative = Rational::zero();
    for (w, p) in words {
        cumulative += *p;
        if &scaled * cumulative.denom() < (cumulative.numer() << 64u32) {
            return w;
        }
    }
    words.last().expect("non-empty").0
}
