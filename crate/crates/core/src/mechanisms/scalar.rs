//! The warmup table `P` for models where welfare depends only on the union.
//!
//! Elements are fixed to the union-greedy order `u_1, u_2, ...`; the table
//! only decides who receives each element. `P[a,b]` is the probability
//! that `u_{a+b}` goes to A, and the outcome at `(a,b)` extends the
//! outcome at `(a-1,b)` or `(a,b-1)` accordingly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{AlphaFailure, Error, Result};
use crate::greedy::{uniform_greedy, TurnSequence, UniformGreedy};
use crate::mechanisms::table::ConditionViolation;
use crate::model::{require_exact, WelfareModel};
use crate::profile::{AllocationProfile, ElementSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarEntry {
    pub p: Rational,
    /// Assignment words (position `j` goes to player `word[j]`) with probabilities.
    pub words: BTreeMap<TurnSequence, Rational>,
    pub w_a: Rational,
    pub w_b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTable {
    order: UniformGreedy,
    entries: BTreeMap<(usize, usize), ScalarEntry>,
}

/// Profile giving `order[j]` to `word[j]`.
pub fn assignment_profile(order: &[usize], word: &TurnSequence, players: usize, ground: usize) -> Result<AllocationProfile> {
    let mut sets = vec![ElementSet::new(); players];
    for (&e, &p) in order.iter().zip(word.turns()) {
        sets[p].insert(e);
    }
    AllocationProfile::new(sets, ground)
}

impl ScalarTable {
    pub fn build<M: WelfareModel + ?Sized>(model: &M, t_max: usize) -> Result<Self> {
        require_exact(model)?;
        if model.player_count() != 2 {
            return Err(Error::PlayerCount { expected: 2, found: model.player_count() });
        }
        let order = uniform_greedy(model, t_max)?;
        let mut table = Self { order, entries: BTreeMap::new() };
        for t in 0..=t_max {
            for a in 0..=t {
                let entry = table.make(model, a, t - a)?;
                table.entries.insert((a, t - a), entry);
            }
        }
        Ok(table)
    }

    fn evaluate<M: WelfareModel + ?Sized>(&self, model: &M, words: &BTreeMap<TurnSequence, Rational>) -> Result<(Rational, Rational)> {
        let mut w = (Rational::zero(), Rational::zero());
        for (word, pr) in words {
            let profile = assignment_profile(&self.order.elements, word, 2, model.ground_size())?;
            let u = model.utilities(&profile)?;
            w.0 += pr * &u[0];
            w.1 += pr * &u[1];
        }
        Ok(w)
    }

    fn extended(&self, from: (usize, usize), player: usize) -> BTreeMap<TurnSequence, Rational> {
        self.entries[&from].words.iter().map(|(w, p)| (w.pushed(player), p.clone())).collect()
    }

    fn finish<M: WelfareModel + ?Sized>(&self, model: &M, p: Rational, words: BTreeMap<TurnSequence, Rational>) -> Result<ScalarEntry> {
        let words: BTreeMap<_, _> = words.into_iter().filter(|(_, pr)| !pr.is_zero()).collect();
        let (w_a, w_b) = self.evaluate(model, &words)?;
        Ok(ScalarEntry { p, words, w_a, w_b })
    }

    fn make<M: WelfareModel + ?Sized>(&self, model: &M, a: usize, b: usize) -> Result<ScalarEntry> {
        match (a, b) {
            (0, 0) => {
                let words = BTreeMap::from([(TurnSequence::default(), Rational::one())]);
                return self.finish(model, Rational::zero(), words);
            }
            (_, 0) => return self.finish(model, Rational::one(), self.extended((a - 1, 0), 0)),
            (0, _) => return self.finish(model, Rational::zero(), self.extended((0, b - 1), 1)),
            _ => {}
        }
        let to_a = self.extended((a - 1, b), 0);
        let to_b = self.extended((a, b - 1), 1);
        let w1 = self.evaluate(model, &to_a)?;
        let w0 = self.evaluate(model, &to_b)?;
        let delta = self.order.delta(a + b);
        let lower = self.entries[&(a - 1, b)].w_a.clone();
        let upper = &self.entries[&(a, b - 1)].w_a + &delta;
        if w1.0 < &lower + &delta {
            return Err(Error::Invariant(format!(
                "endpoint claim fails at ({a},{b}): W1A = {} < wA({},{b}) + Δ = {}",
                w1.0,
                a - 1,
                &lower + &delta
            )));
        }
        // lower <= α W1A + (1-α) W0A <= upper
        let slope = &w1.0 - &w0.0;
        let (mut lo, mut hi) = (Rational::zero(), Rational::one());
        for (c, d) in [(slope.clone(), &lower - &w0.0), (-slope.clone(), &w0.0 - &upper)] {
            if c.is_zero() {
                if d > Rational::zero() {
                    lo = Rational::one();
                    hi = Rational::zero();
                }
            } else if c > Rational::zero() {
                let bound = &d / &c;
                if bound > lo {
                    lo = bound;
                }
            } else {
                let bound = &d / &c;
                if bound < hi {
                    hi = bound;
                }
            }
        }
        if lo > hi {
            return Err(Error::EmptyAlphaInterval(AlphaFailure {
                a,
                b,
                w1,
                w0,
                lower_a: lower,
                lower_b: self.entries[&(a, b - 1)].w_b.clone(),
            }));
        }
        let p = if slope < Rational::zero() { hi } else { lo };
        let q = Rational::one() - &p;
        let mut words = BTreeMap::new();
        for (w, pr) in to_a {
            *words.entry(w).or_insert_with(Rational::zero) += pr * &p;
        }
        for (w, pr) in to_b {
            *words.entry(w).or_insert_with(Rational::zero) += pr * &q;
        }
        self.finish(model, p, words)
    }

    pub fn order(&self) -> &UniformGreedy {
        &self.order
    }

    pub fn entry(&self, a: usize, b: usize) -> Option<&ScalarEntry> {
        self.entries.get(&(a, b))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &ScalarEntry)> {
        self.entries.iter()
    }

    /// Checks the three warmup conditions and the base rows.
    pub fn verify(&self) -> Vec<ConditionViolation> {
        let mut out = Vec::new();
        let mut fail = |a: usize, b: usize, condition: &'static str, detail: String| {
            out.push(ConditionViolation { a, b, condition, detail })
        };
        for (&(a, b), e) in &self.entries {
            if e.words.values().sum::<Rational>() != Rational::one() {
                fail(a, b, "normalisation", format!("probabilities sum to {}", e.words.values().sum::<Rational>()));
            }
            if (a > 0 && b == 0 && !e.p.is_one()) || (a == 0 && b > 0 && !e.p.is_zero()) {
                fail(a, b, "base-row", format!("P = {}", e.p));
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
            let bound = &self.entries[&(a, b - 1)].w_a + self.order.delta(a + b);
            if e.w_a > bound {
                fail(a, b, "bounded-gain-A", format!("wA = {} > wA({a},{}) + Δ = {bound}", e.w_a, b - 1));
            }
        }
        out
    }
}
