//! Uniform random greedy: take the union-greedy elements in order and hand
//! each position to a player drawn uniformly among budget-respecting
//! assignments.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::greedy::{uniform_greedy, TurnSequence, UniformGreedy};
use crate::mechanisms::scalar::assignment_profile;
use crate::model::WelfareModel;
use crate::profile::{multinomial, multiset_permutations, AllocationProfile, BidProfile};
use crate::rational::{int, Rational};

/// Every assignment word with its probability and induced profile.
pub fn uniform_outcomes<M: WelfareModel + ?Sized>(
    model: &M,
    bids: &BidProfile,
    cap: u128,
) -> Result<(UniformGreedy, Vec<(TurnSequence, AllocationProfile)>)> {
    let count = multinomial(bids.budgets());
    if count > cap {
        return Err(Error::TooLarge { what: "assignment enumeration", count, limit: cap });
    }
    let order = uniform_greedy(model, bids.total())?;
    let outcomes = multiset_permutations(bids.budgets())
        .into_iter()
        .map(|w| {
            let word = TurnSequence::new(w);
            let p = assignment_profile(&order.elements, &word, bids.players(), model.ground_size())?;
            Ok((word, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((order, outcomes))
}

/// `b_i / t * w(t)`, the expected utilities under MeI and AgI.
pub fn uniform_closed_form(order: &UniformGreedy, bids: &BidProfile) -> Vec<Rational> {
    let t = bids.total();
    bids.budgets()
        .iter()
        .map(|&b| if t == 0 { Rational::zero() } else { &order.w[t] * int(b as i64) / int(t as i64) })
        .collect()
}

/// A uniformly random word with `bids[i]` copies of each player `i`.
pub fn random_word(bids: &BidProfile, rng: &mut ChaCha8Rng) -> TurnSequence {
    let mut turns: Vec<usize> = bids.budgets().iter().enumerate().flat_map(|(i, &b)| core::iter::repeat_n(i, b)).collect();
    turns.shuffle(rng);
    TurnSequence::new(turns)
}
