//! Exhaustive desk-scale verifiers for the structural assumptions the
//! mechanisms rely on: monotone submodular welfare, adverse competition,
//! mechanism indifference (MeI), agent indifference (AgI) and anonymity.
//!
//! Every check enumerates profiles up to a caller-supplied cap and either
//! passes or returns a [`Witness`] that re-evaluates to a violation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::model::{require_exact, WelfareModel};
use crate::profile::{enumerate_profiles, permutations, AllocationProfile, ElementSet, ProfileDomain};
use crate::rational::Rational;
use num_traits::Zero;

/// Enumeration bounds for the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest ground set the checker agrees to enumerate.
    pub max_ground: usize,
    /// Largest per-player set size in any queried profile.
    pub max_set: usize,
    pub domain: ProfileDomain,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { max_ground: 8, max_set: 3, domain: ProfileDomain::All }
    }
}

impl CheckOptions {
    pub fn disjoint(mut self) -> Self {
        self.domain = ProfileDomain::Disjoint;
        self
    }

    pub fn with_max_set(mut self, max_set: usize) -> Self {
        self.max_set = max_set;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    WelfareNonDecreasing,
    OwnUtilityNonDecreasing,
    Submodular,
    AdverseCompetition,
    MechanismIndifference,
    AgentIndifference,
    Anonymity,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::WelfareNonDecreasing => "welfare-non-decreasing",
            Property::OwnUtilityNonDecreasing => "own-utility-non-decreasing",
            Property::Submodular => "submodular",
            Property::AdverseCompetition => "adverse-competition",
            Property::MechanismIndifference => "mechanism-indifference",
            Property::AgentIndifference => "agent-indifference",
            Property::Anonymity => "anonymity",
        }
    }

    fn violated(self, v: &[Rational]) -> bool {
        match self {
            Property::WelfareNonDecreasing | Property::OwnUtilityNonDecreasing => v[0] > v[1],
            Property::Submodular => &v[1] - &v[0] < &v[3] - &v[2],
            Property::AdverseCompetition => v[0] < v[1],
            Property::MechanismIndifference | Property::AgentIndifference | Property::Anonymity => v[0] != v[1],
        }
    }
}

/// One oracle evaluation inside a witness: `f_player(profile)`, or the
/// welfare `f(profile)` when `player` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub profile: AllocationProfile,
    pub player: Option<usize>,
}

/// A concrete violation. The meaning of `terms` depends on `property`:
///
/// * monotonicity: `[before, after]`, violated when `before > after`;
/// * submodularity: `[S, S+e, S', S'+e]`, violated when the gain at `S` is smaller;
/// * adverse competition: `[before, after opponent grows]`, violated when `before < after`;
/// * indifference and anonymity: two terms that must be equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub property: Property,
    pub terms: Vec<Term>,
    pub values: Vec<Rational>,
}

impl Witness {
    fn build<M: WelfareModel + ?Sized>(model: &M, property: Property, terms: Vec<Term>) -> Result<Self> {
        let values = evaluate_terms(model, &terms)?;
        Ok(Self { property, terms, values })
    }

    /// Re-evaluates every term against `model` and reports whether the
    /// recorded violation still holds with the recomputed values.
    pub fn reverify<M: WelfareModel + ?Sized>(&self, model: &M) -> Result<bool> {
        let values = evaluate_terms(model, &self.terms)?;
        Ok(values == self.values && self.property.violated(&values))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.property.name())?;
        for (t, v) in self.terms.iter().zip(&self.values) {
            match t.player {
                Some(i) => write!(f, " f_{}{} = {}", i, t.profile, v)?,
                None => write!(f, " f{} = {}", t.profile, v)?,
            }
        }
        Ok(())
    }
}

fn evaluate_terms<M: WelfareModel + ?Sized>(model: &M, terms: &[Term]) -> Result<Vec<Rational>> {
    terms
        .iter()
        .map(|t| match t.player {
            Some(i) => Ok(model.utilities(&t.profile)?.swap_remove(i)),
            None => model.welfare(&t.profile),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Memoised oracle access for one checker run.
struct Memo<'m, M: ?Sized> {
    model: &'m M,
    cache: BTreeMap<AllocationProfile, Vec<Rational>>,
}

impl<'m, M: WelfareModel + ?Sized> Memo<'m, M> {
    fn new(model: &'m M) -> Self {
        Self { model, cache: BTreeMap::new() }
    }

    fn utilities(&mut self, p: &AllocationProfile) -> Result<&Vec<Rational>> {
        if !self.cache.contains_key(p) {
            let u = self.model.utilities(p)?;
            self.cache.insert(p.clone(), u);
        }
        Ok(&self.cache[p])
    }

    fn utility(&mut self, p: &AllocationProfile, i: usize) -> Result<Rational> {
        Ok(self.utilities(p)?[i].clone())
    }

    fn welfare(&mut self, p: &AllocationProfile) -> Result<Rational> {
        Ok(self.utilities(p)?.iter().sum())
    }
}

fn prepare<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Vec<AllocationProfile>> {
    require_exact(model)?;
    let n = model.ground_size();
    if n > opts.max_ground {
        return Err(Error::TooLarge { what: "ground set", count: n as u128, limit: opts.max_ground as u128 });
    }
    Ok(enumerate_profiles(model.player_count(), n, opts.max_set, opts.domain))
}

/// Elements that may be added to `player`'s set in `p` within the domain.
fn addable(p: &AllocationProfile, player: usize, domain: ProfileDomain) -> Vec<usize> {
    let own = p.set(player);
    let others = p.others_union(player);
    (0..p.ground_size())
        .filter(|&e| !own.contains(e) && (domain == ProfileDomain::All || !others.contains(e)))
        .collect()
}

/// Welfare non-decreasing and submodular along each player's own set, and
/// each `f_i` non-decreasing in `S_i`. Checking single-element steps is
/// enough: both properties chain along inclusions.
pub fn check_nondecreasing_submodular<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Verdict> {
    let profiles = prepare(model, opts)?;
    let mut memo = Memo::new(model);
    for p in &profiles {
        for i in 0..p.players() {
            if p.set(i).len() >= opts.max_set {
                continue;
            }
            let candidates = addable(p, i, opts.domain);
            for &x in &candidates {
                let px = p.with_added(i, x);
                if memo.welfare(p)? > memo.welfare(&px)? {
                    let terms = vec![Term { profile: p.clone(), player: None }, Term { profile: px, player: None }];
                    return Ok(Verdict::Fail(Witness::build(model, Property::WelfareNonDecreasing, terms)?));
                }
                if memo.utility(p, i)? > memo.utility(&px, i)? {
                    let terms =
                        vec![Term { profile: p.clone(), player: Some(i) }, Term { profile: px, player: Some(i) }];
                    return Ok(Verdict::Fail(Witness::build(model, Property::OwnUtilityNonDecreasing, terms)?));
                }
                if p.set(i).len() + 2 > opts.max_set {
                    continue;
                }
                for &e in &candidates {
                    if e == x {
                        continue;
                    }
                    let pe = p.with_added(i, e);
                    let pxe = px.with_added(i, e);
                    let small = memo.welfare(&pe)? - memo.welfare(p)?;
                    let large = memo.welfare(&pxe)? - memo.welfare(&px)?;
                    if small < large {
                        let terms = [p.clone(), pe, px.clone(), pxe]
                            .into_iter()
                            .map(|profile| Term { profile, player: None })
                            .collect();
                        return Ok(Verdict::Fail(Witness::build(model, Property::Submodular, terms)?));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Each `f_i` is non-increasing in every opponent's set.
pub fn check_adverse_competition<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Verdict> {
    let profiles = prepare(model, opts)?;
    let mut memo = Memo::new(model);
    let k = model.player_count();
    for p in &profiles {
        for j in 0..k {
            if p.set(j).len() >= opts.max_set {
                continue;
            }
            for x in addable(p, j, opts.domain) {
                let px = p.with_added(j, x);
                for i in (0..k).filter(|&i| i != j) {
                    if memo.utility(p, i)? < memo.utility(&px, i)? {
                        let terms =
                            vec![Term { profile: p.clone(), player: Some(i) }, Term { profile: px, player: Some(i) }];
                        return Ok(Verdict::Fail(Witness::build(model, Property::AdverseCompetition, terms)?));
                    }
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Welfare depends only on the union of the allocated sets.
pub fn check_mei<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Verdict> {
    let profiles = prepare(model, opts)?;
    let mut seen: BTreeMap<ElementSet, (AllocationProfile, Rational)> = BTreeMap::new();
    for p in profiles {
        let w = model.welfare(&p)?;
        let key = p.union();
        match seen.get(&key) {
            Some((q, wq)) if *wq != w => {
                let terms = vec![Term { profile: q.clone(), player: None }, Term { profile: p, player: None }];
                return Ok(Verdict::Fail(Witness::build(model, Property::MechanismIndifference, terms)?));
            }
            Some(_) => {}
            None => {
                seen.insert(key, (p, w));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Each `f_i` depends on opponents' sets only through their union.
/// Vacuous for two players.
pub fn check_agi<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Verdict> {
    let profiles = prepare(model, opts)?;
    let k = model.player_count();
    let mut seen: BTreeMap<(usize, ElementSet, ElementSet), (AllocationProfile, Rational)> = BTreeMap::new();
    for p in profiles {
        let u = model.utilities(&p)?;
        for (i, ui) in u.into_iter().enumerate().take(k) {
            let key = (i, p.set(i).clone(), p.others_union(i));
            match seen.get(&key) {
                Some((q, uq)) if *uq != ui => {
                    let terms =
                        vec![Term { profile: q.clone(), player: Some(i) }, Term { profile: p.clone(), player: Some(i) }];
                    return Ok(Verdict::Fail(Witness::build(model, Property::AgentIndifference, terms)?));
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (p.clone(), ui));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Utilities are symmetric under relabelling players: the player who
/// receives `S_i` after relabelling gets exactly what `i` got before.
pub fn check_anonymity<M: WelfareModel + ?Sized>(model: &M, opts: &CheckOptions) -> Result<Verdict> {
    let profiles = prepare(model, opts)?;
    let k = model.player_count();
    let perms: Vec<Vec<usize>> = permutations(k).into_iter().skip(1).collect();
    let mut memo = Memo::new(model);
    for p in &profiles {
        for perm in &perms {
            let q = p.relabel(perm);
            for i in 0..k {
                if memo.utility(p, i)? != memo.utility(&q, perm[i])? {
                    let terms = vec![Term { profile: p.clone(), player: Some(i) }, Term { profile: q, player: Some(perm[i]) }];
                    return Ok(Verdict::Fail(Witness::build(model, Property::Anonymity, terms)?));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndifferenceReport {
    pub mei: Verdict,
    pub agi: Verdict,
    pub anonymity: Verdict,
}

impl IndifferenceReport {
    /// MeI and AgI together must imply anonymity.
    pub fn implication_holds(&self) -> bool {
        !(self.mei.passed() && self.agi.passed()) || self.anonymity.passed()
    }
}

/// Runs MeI, AgI and anonymity checks on a model with at least three
/// players. The model must be normalised: `f_i = 0` whenever `S_i` is empty.
pub fn check_mei_agi_implies_anonymity<M: WelfareModel + ?Sized>(
    model: &M,
    opts: &CheckOptions,
) -> Result<IndifferenceReport> {
    if model.player_count() < 3 {
        return Err(Error::Precondition(format!(
            "needs at least 3 players, model has {}",
            model.player_count()
        )));
    }
    for p in prepare(model, opts)? {
        let u = model.utilities(&p)?;
        for (i, ui) in u.iter().enumerate() {
            if p.set(i).is_empty() && !ui.is_zero() {
                return Err(Error::Precondition(format!(
                    "not normalised: f_{i}{p} = {ui} with an empty own set"
                )));
            }
        }
    }
    Ok(IndifferenceReport {
        mei: check_mei(model, opts)?,
        agi: check_agi(model, opts)?,
        anonymity: check_anonymity(model, opts)?,
    })
}
