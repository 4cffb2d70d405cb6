//! The two-player table `M`: for every budget pair a distribution over turn
//! sequences such that the locally greedy outcome is monotone in each
//! player's own budget.
//!
//! Entry `(a, b)` mixes `M[a-1, b]` followed by an A-turn (weight `α`) with
//! `M[a, b-1]` followed by a B-turn (weight `1-α`). The admissible `α` keep
//! `w^A(a,b) >= w^A(a-1,b)` and `w^B(a,b) >= w^B(a,b-1)`; among them the one
//! minimising `w^A(a,b)` is taken.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{AlphaFailure, Error, Result};
use crate::greedy::{GreedyRun, TurnSequence};
use crate::mechanisms::caratheodory::{caratheodory_prune, Point};
use crate::mechanisms::distribution::{OrderDistribution, OrderEntry};
use crate::model::{require_exact, WelfareModel};
use crate::rational::Rational;

/// Largest support kept per entry.
pub const MAX_SUPPORT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    /// Mixing weight on the A-extension; `None` on the base rows.
    pub alpha: Option<Rational>,
    pub distribution: OrderDistribution,
    pub w_a: Rational,
    pub w_b: Rational,
    pub welfare: Rational,
    /// Support before pruning.
    pub mixed_support: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismTable {
    t_max: usize,
    disjoint: bool,
    entries: BTreeMap<(usize, usize), TableEntry>,
}

/// A table condition that failed at some entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionViolation {
    pub a: usize,
    pub b: usize,
    pub condition: &'static str,
    pub detail: String,
}

/// Feasible `α` in [0,1] for `α·c ≥ d`, intersected with `[lo, hi]`.
fn restrict(lo: Rational, hi: Rational, c: &Rational, d: &Rational) -> (Rational, Rational) {
    if c.is_zero() {
        if d > &Rational::zero() {
            (Rational::one(), Rational::zero())
        } else {
            (lo, hi)
        }
    } else if c > &Rational::zero() {
        let bound = d / c;
        (if bound > lo { bound } else { lo }, hi)
    } else {
        let bound = d / c;
        (lo, if bound < hi { bound } else { hi })
    }
}

impl MechanismTable {
    /// Builds every entry with `a + b <= t_max`.
    pub fn build<M: WelfareModel + ?Sized>(model: &M, t_max: usize, disjoint: bool) -> Result<Self> {
        require_exact(model)?;
        if model.player_count() != 2 {
            return Err(Error::PlayerCount { expected: 2, found: model.player_count() });
        }
        if t_max > model.ground_size() {
            return Err(Error::InfeasibleBids { bids: alloc::vec![t_max], ground_size: model.ground_size() });
        }
        let mut table = Self { t_max, disjoint, entries: BTreeMap::new() };
        let empty = GreedyRun::for_model(model)?;
        table.insert_deterministic(model, 0, 0, empty.clone())?;
        let (mut all_a, mut all_b) = (empty.clone(), empty);
        for t in 1..=t_max {
            all_a = all_a.step(model, 0, disjoint)?;
            all_b = all_b.step(model, 1, disjoint)?;
            table.insert_deterministic(model, t, 0, all_a.clone())?;
            table.insert_deterministic(model, 0, t, all_b.clone())?;
            for a in 1..t {
                let entry = table.mix(model, a, t - a)?;
                table.entries.insert((a, t - a), entry);
            }
        }
        Ok(table)
    }

    fn insert_deterministic<M: WelfareModel + ?Sized>(&mut self, model: &M, a: usize, b: usize, run: GreedyRun) -> Result<()> {
        let distribution = OrderDistribution::point(model, run)?;
        let u = distribution.expected_utilities();
        let welfare = distribution.expected_welfare();
        self.entries.insert(
            (a, b),
            TableEntry { alpha: None, distribution, w_a: u[0].clone(), w_b: u[1].clone(), welfare, mixed_support: 1 },
        );
        Ok(())
    }

    fn extend<M: WelfareModel + ?Sized>(&self, model: &M, from: (usize, usize), player: usize) -> Result<Vec<OrderEntry>> {
        self.entries[&from]
            .distribution
            .entries()
            .iter()
            .map(|e| OrderEntry::new(model, e.run.step(model, player, self.disjoint)?, e.probability.clone()))
            .collect()
    }

    fn mix<M: WelfareModel + ?Sized>(&self, model: &M, a: usize, b: usize) -> Result<TableEntry> {
        let d1 = self.extend(model, (a - 1, b), 0)?;
        let d2 = self.extend(model, (a, b - 1), 1)?;
        let mean = |d: &[OrderEntry]| -> (Rational, Rational) {
            d.iter().fold((Rational::zero(), Rational::zero()), |(x, y), e| {
                (x + &e.probability * &e.utilities[0], y + &e.probability * &e.utilities[1])
            })
        };
        let w1 = mean(&d1);
        let w0 = mean(&d2);
        let lower_a = self.entries[&(a - 1, b)].w_a.clone();
        let lower_b = self.entries[&(a, b - 1)].w_b.clone();

        if w1.0 < lower_a || w0.0 > self.entries[&(a, b - 1)].w_a {
            return Err(Error::Invariant(format!(
                "endpoint claim fails at ({a},{b}): W1A = {}, wA({},{b}) = {lower_a}, W0A = {}, wA({a},{}) = {}",
                w1.0,
                a - 1,
                w0.0,
                b - 1,
                self.entries[&(a, b - 1)].w_a
            )));
        }

        let (lo, hi) = restrict(Rational::zero(), Rational::one(), &(&w1.0 - &w0.0), &(&lower_a - &w0.0));
        let (lo, hi) = restrict(lo, hi, &(&w1.1 - &w0.1), &(&lower_b - &w0.1));
        if lo > hi {
            return Err(Error::EmptyAlphaInterval(AlphaFailure { a, b, w1, w0, lower_a, lower_b }));
        }
        let alpha = if w1.0 < w0.0 { hi } else { lo };

        let one_minus = Rational::one() - &alpha;
        let mixed: Vec<OrderEntry> = d1
            .into_iter()
            .map(|mut e| {
                e.probability *= &alpha;
                e
            })
            .chain(d2.into_iter().map(|mut e| {
                e.probability *= &one_minus;
                e
            }))
            .filter(|e| !e.probability.is_zero())
            .collect();
        let mixed_support = mixed.len();
        let kept = if mixed.len() > MAX_SUPPORT { prune(mixed)? } else { mixed };
        let distribution = OrderDistribution::new(kept);
        let u = distribution.expected_utilities();
        let welfare = distribution.expected_welfare();
        Ok(TableEntry { alpha: Some(alpha), distribution, w_a: u[0].clone(), w_b: u[1].clone(), welfare, mixed_support })
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn disjoint(&self) -> bool {
        self.disjoint
    }

    pub fn entry(&self, a: usize, b: usize) -> Option<&TableEntry> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &TableEntry)> {
        self.entries.iter()
    }

    /// `w(a,b) - w(a,b-1)`.
    pub fn delta_b(&self, a: usize, b: usize) -> Option<Rational> {
        Some(&self.entry(a, b)?.welfare - &self.entry(a, b.checked_sub(1)?)?.welfare)
    }

    /// Re-checks every monotonicity condition, the support bound,
    /// normalisation, and that cached outcomes replay under `model`.
    pub fn verify<M: WelfareModel + ?Sized>(&self, model: &M) -> Result<Vec<ConditionViolation>> {
        let mut out = Vec::new();
        let mut fail = |a: usize, b: usize, condition: &'static str, detail: String| {
            out.push(ConditionViolation { a, b, condition, detail })
        };
        for (&(a, b), e) in &self.entries {
            if e.distribution.support() > MAX_SUPPORT {
                fail(a, b, "support", format!("{} entries", e.distribution.support()));
            }
            if let Err(err) = e.distribution.validate(model, self.disjoint) {
                fail(a, b, "normalisation", format!("{err}"));
            }
            for seq in e.distribution.entries().iter().map(|x| &x.sequence) {
                if seq.counts(2) != [a, b] {
                    fail(a, b, "sequence", format!("{seq} does not match the budgets"));
                }
            }
            if a == 0 || b == 0 {
                continue;
            }
            if let Some(diag) = self.entry(a - 1, b + 1) {
                if e.w_a < diag.w_a {
                    fail(a, b, "cross-monotone", format!("wA = {} < wA({},{}) = {}", e.w_a, a - 1, b + 1, diag.w_a));
                }
            }
            let left = &self.entries[&(a - 1, b)];
            if e.w_a < left.w_a {
                fail(a, b, "own-monotone-A", format!("wA = {} < wA({},{b}) = {}", e.w_a, a - 1, left.w_a));
            }
            let down = &self.entries[&(a, b - 1)];
            let delta = &e.welfare - &down.welfare;
            if e.w_a > &down.w_a + &delta {
                fail(a, b, "bounded-gain-A", format!("wA = {} > wA({a},{}) + Δ = {}", e.w_a, b - 1, &down.w_a + &delta));
            }
            if e.w_b < down.w_b {
                fail(a, b, "own-monotone-B", format!("wB = {} < wB({a},{}) = {}", e.w_b, b - 1, down.w_b));
            }
        }
        Ok(out)
    }
}

/// Replaces a mixture by an equivalent one on at most three of its entries.
fn prune(mixed: Vec<OrderEntry>) -> Result<Vec<OrderEntry>> {
    let points: Vec<Point> = mixed.iter().map(|e| (e.utilities[0].clone(), e.utilities[1].clone())).collect();
    let weights: Vec<Rational> = mixed.iter().map(|e| e.probability.clone()).collect();
    let chosen = caratheodory_prune(&points, &weights)?;
    Ok(chosen
        .into_iter()
        .map(|(i, w)| OrderEntry { probability: w, ..mixed[i].clone() })
        .collect())
}

/// Table entry sequences as `(word, probability)` pairs.
pub fn entry_words(entry: &TableEntry) -> Vec<(TurnSequence, Rational)> {
    entry.distribution.entries().iter().map(|e| (e.sequence.clone(), e.probability.clone())).collect()
}
