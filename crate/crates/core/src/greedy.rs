//! Myopic allocators: locally greedy along a turn sequence (optionally
//! disjoint), greedy on the union welfare, and a brute-force optimum.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::WelfareModel;
use crate::profile::{
    count_profiles_with_sizes, player_name, profiles_with_sizes, AllocationProfile, BidProfile, ElementId, ElementSet,
    ProfileDomain,
};
use crate::rational::Rational;

/// Default cap on profiles enumerated by [`brute_force_opt`].
pub const DEFAULT_OPT_LIMIT: u128 = 500_000;

/// Order in which players take greedy turns.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TurnSequence(Vec<usize>);

impl TurnSequence {
    pub fn new(turns: Vec<usize>) -> Self {
        Self(turns)
    }

    pub fn turns(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pushed(&self, player: usize) -> Self {
        let mut t = self.0.clone();
        t.push(player);
        Self(t)
    }

    pub fn prefix(&self, len: usize) -> Self {
        Self(self.0[..len].to_vec())
    }

    /// Turns per player.
    pub fn counts(&self, players: usize) -> Vec<usize> {
        let mut c = vec![0; players];
        for &p in &self.0 {
            c[p] += 1;
        }
        c
    }

    pub fn matches(&self, bids: &BidProfile) -> bool {
        self.0.iter().all(|&p| p < bids.players()) && self.counts(bids.players()) == bids.budgets()
    }
}

impl fmt::Display for TurnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&p| write!(f, "{}", player_name(p)))
    }
}

impl FromStr for TurnSequence {
    type Err = Error;

    /// Parses a word over `A`, `B`, `C`, ...
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'A'..='Z' => Ok(c as usize - 'A' as usize),
                _ => Err(Error::Parameter(format!("bad turn letter {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    pub player: usize,
    pub element: ElementId,
    /// Marginal welfare gain of the step; may be negative.
    pub gain: Rational,
}

/// State of a locally greedy run: the partial profile plus its trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRun {
    pub profile: AllocationProfile,
    pub welfare: Rational,
    pub steps: Vec<GreedyStep>,
}

impl GreedyRun {
    pub fn start(players: usize, ground_size: usize) -> Self {
        Self { profile: AllocationProfile::empty(players, ground_size), welfare: Rational::zero(), steps: Vec::new() }
    }

    pub fn for_model<M: WelfareModel + ?Sized>(model: &M) -> Result<Self> {
        let run = Self::start(model.player_count(), model.ground_size());
        let welfare = model.welfare(&run.profile)?;
        Ok(Self { welfare, ..run })
    }

    /// The marginal gains in allocation order.
    pub fn trace(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.gain.clone()).collect()
    }

    pub fn sequence(&self) -> TurnSequence {
        TurnSequence(self.steps.iter().map(|s| s.player).collect())
    }

    /// One greedy turn for `player`. Candidates are elements the player
    /// lacks, and under `disjoint` also elements nobody else holds. Ties go
    /// to the lowest element id.
    pub fn step<M: WelfareModel + ?Sized>(&self, model: &M, player: usize, disjoint: bool) -> Result<Self> {
        if player >= model.player_count() {
            return Err(Error::PlayerCount { expected: model.player_count(), found: player + 1 });
        }
        let own = self.profile.set(player);
        let blocked = if disjoint { self.profile.others_union(player) } else { ElementSet::new() };
        let mut best: Option<(ElementId, AllocationProfile, Rational)> = None;
        for c in (0..model.ground_size()).filter(|&c| !own.contains(c) && !blocked.contains(c)) {
            let next = self.profile.with_added(player, c);
            let w = model.welfare(&next)?;
            if best.as_ref().is_none_or(|(_, _, bw)| w > *bw) {
                best = Some((c, next, w));
            }
        }
        let (element, profile, welfare) = best.ok_or_else(|| Error::InfeasibleBids {
            bids: self.profile.sizes().iter().enumerate().map(|(i, &s)| s + usize::from(i == player)).collect(),
            ground_size: model.ground_size(),
        })?;
        let gain = &welfare - &self.welfare;
        let mut steps = self.steps.clone();
        steps.push(GreedyStep { player, element, gain });
        Ok(Self { profile, welfare, steps })
    }

    /// Continues the run along `turns`.
    pub fn extend<M: WelfareModel + ?Sized>(&self, model: &M, turns: &[usize], disjoint: bool) -> Result<Self> {
        let mut run = self.clone();
        for &p in turns {
            run = run.step(model, p, disjoint)?;
        }
        Ok(run)
    }
}

/// Locally greedy allocation along `sequence`.
pub fn locally_greedy<M: WelfareModel + ?Sized>(model: &M, sequence: &TurnSequence, disjoint: bool) -> Result<GreedyRun> {
    let needed = sequence.len();
    if needed > model.ground_size() {
        return Err(Error::InfeasibleBids { bids: sequence.counts(model.player_count()), ground_size: model.ground_size() });
    }
    GreedyRun::for_model(model)?.extend(model, sequence.turns(), disjoint)
}

/// Greedy picks on the union welfare and the welfare after each prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformGreedy {
    pub elements: Vec<ElementId>,
    /// `w[j]` is the welfare of the first `j` picks; `w[0]` is the empty welfare.
    pub w: Vec<Rational>,
}

impl UniformGreedy {
    pub fn delta(&self, j: usize) -> Rational {
        &self.w[j] - &self.w[j - 1]
    }
}

/// Greedy for `f(I)` as a function of the union alone. The union is
/// evaluated by handing every element to player 0, which is faithful only
/// under MeI.
pub fn uniform_greedy<M: WelfareModel + ?Sized>(model: &M, total_budget: usize) -> Result<UniformGreedy> {
    let n = model.ground_size();
    if total_budget > n {
        return Err(Error::InfeasibleBids { bids: vec![total_budget], ground_size: n });
    }
    let k = model.player_count();
    let as_profile = |set: &ElementSet| -> Result<AllocationProfile> {
        let mut sets = vec![ElementSet::new(); k];
        sets[0] = set.clone();
        AllocationProfile::new(sets, n)
    };
    let mut chosen = ElementSet::new();
    let mut elements = Vec::with_capacity(total_budget);
    let mut w = vec![model.welfare(&as_profile(&chosen)?)?];
    for _ in 0..total_budget {
        let mut best: Option<(ElementId, Rational)> = None;
        for c in (0..n).filter(|&c| !chosen.contains(c)) {
            let v = model.welfare(&as_profile(&chosen.with(c))?)?;
            if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                best = Some((c, v));
            }
        }
        let (c, v) = best.expect("total_budget <= n leaves a candidate");
        chosen.insert(c);
        elements.push(c);
        w.push(v);
    }
    Ok(UniformGreedy { elements, w })
}

/// Exact optimum over profiles with `|S_i| = b_i`, first maximiser in
/// enumeration order.
pub fn brute_force_opt<M: WelfareModel + ?Sized>(
    model: &M,
    bids: &BidProfile,
    disjoint: bool,
    limit: u128,
) -> Result<(AllocationProfile, Rational)> {
    if bids.players() != model.player_count() {
        return Err(Error::PlayerCount { expected: model.player_count(), found: bids.players() });
    }
    let n = model.ground_size();
    let domain = if disjoint { ProfileDomain::Disjoint } else { ProfileDomain::All };
    if disjoint {
        bids.check_feasible(n)?;
    } else if let Some(&b) = bids.budgets().iter().find(|&&b| b > n) {
        return Err(Error::InfeasibleBids { bids: vec![b], ground_size: n });
    }
    let count = count_profiles_with_sizes(bids.budgets(), n, domain);
    if count > limit {
        return Err(Error::TooLarge { what: "optimum enumeration", count, limit });
    }
    let mut best: Option<(AllocationProfile, Rational)> = None;
    for p in profiles_with_sizes(bids.budgets(), n, domain) {
        let w = model.welfare(&p)?;
        if best.as_ref().is_none_or(|(_, bw)| w > *bw) {
            best = Some((p, w));
        }
    }
    best.ok_or_else(|| Error::Invariant(String::from("no profile enumerated")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::CoverageInstance;
    use crate::rational::int;
    use alloc::string::ToString;

    #[test]
    fn sequence_round_trip() {
        let s: TurnSequence = "ABBA".parse().unwrap();
        assert_eq!(s.turns(), &[0, 1, 1, 0]);
        assert_eq!(s.to_string(), "ABBA");
        assert!(s.matches(&BidProfile::new(vec![2, 2])));
        assert!("AxB".parse::<TurnSequence>().is_err());
    }

    #[test]
    fn additive_model_takes_top_elements() {
        let m = CoverageInstance::modular(&[int(3), int(5), int(1), int(4)], 2).unwrap();
        let run = locally_greedy(&m, &"ABA".parse().unwrap(), false).unwrap();
        assert_eq!(run.profile.set(0).as_slice(), &[0, 1]);
        assert_eq!(run.profile.set(1).as_slice(), &[3]);
        assert_eq!(run.trace(), vec![int(5), int(4), int(3)]);
        let u = uniform_greedy(&m, 3).unwrap();
        assert_eq!(u.elements, vec![1, 3, 0]);
        assert_eq!(u.w, vec![int(0), int(5), int(9), int(12)]);
    }

    #[test]
    fn brute_force_additive() {
        let m = CoverageInstance::modular(&[int(3), int(2)], 2).unwrap();
        let (_, w) = brute_force_opt(&m, &BidProfile::new(vec![1, 1]), true, DEFAULT_OPT_LIMIT).unwrap();
        assert_eq!(w, int(5));
        assert!(brute_force_opt(&m, &BidProfile::new(vec![2, 1]), true, DEFAULT_OPT_LIMIT).is_err());
        assert!(matches!(
            brute_force_opt(&m, &BidProfile::new(vec![1, 1]), false, 1),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn too_long_sequence_is_rejected() {
        let m = CoverageInstance::modular(&[int(1)], 2).unwrap();
        assert!(locally_greedy(&m, &"AB".parse().unwrap(), true).is_err());
    }
}
