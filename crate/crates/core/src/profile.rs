//! Element sets, allocation profiles and bid profiles, plus the small
//! enumerators (subsets, profiles, turn orders) every exhaustive check uses.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub type ElementId = usize;

/// A set of ground-set element ids, stored sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(Vec<ElementId>);

impl ElementSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Returns `false` if `e` was already present.
    pub fn insert(&mut self, e: ElementId) -> bool {
        match self.0.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, e);
                true
            }
        }
    }

    pub fn remove(&mut self, e: ElementId) -> bool {
        match self.0.binary_search(&e) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, e: ElementId) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for e in other.iter() {
            out.insert(e);
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.iter().filter(|&e| other.contains(e)).collect()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.iter().filter(|&e| !other.contains(e)).collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|e| !other.contains(e))
    }

    pub fn largest(&self) -> Option<ElementId> {
        self.0.last().copied()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut v: Vec<ElementId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<const N: usize> From<[ElementId; N]> for ElementSet {
    fn from(items: [ElementId; N]) -> Self {
        items.into_iter().collect()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// One set per player over a ground set of `ground_size` elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AllocationProfile {
    sets: Vec<ElementSet>,
    ground_size: usize,
}

impl AllocationProfile {
    pub fn empty(players: usize, ground_size: usize) -> Self {
        Self { sets: vec![ElementSet::new(); players], ground_size }
    }

    pub fn new(sets: Vec<ElementSet>, ground_size: usize) -> Result<Self> {
        for s in &sets {
            if let Some(e) = s.largest() {
                if e >= ground_size {
                    return Err(Error::UnknownElement { element: e, ground_size });
                }
            }
        }
        Ok(Self { sets, ground_size })
    }

    /// Like [`AllocationProfile::new`] but additionally requires pairwise disjoint sets.
    pub fn new_disjoint(sets: Vec<ElementSet>, ground_size: usize) -> Result<Self> {
        let p = Self::new(sets, ground_size)?;
        if !p.is_disjoint() {
            return Err(Error::Precondition(alloc::format!("profile {p} is not disjoint")));
        }
        Ok(p)
    }

    pub fn players(&self) -> usize {
        self.sets.len()
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn set(&self, player: usize) -> &ElementSet {
        &self.sets[player]
    }

    pub fn into_sets(self) -> Vec<ElementSet> {
        self.sets
    }

    pub fn union(&self) -> ElementSet {
        self.sets.iter().flat_map(|s| s.iter()).collect()
    }

    /// Union of every set except `player`'s.
    pub fn others_union(&self, player: usize) -> ElementSet {
        self.sets
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != player)
            .flat_map(|(_, s)| s.iter())
            .collect()
    }

    pub fn is_disjoint(&self) -> bool {
        let total: usize = self.sets.iter().map(ElementSet::len).sum();
        total == self.union().len()
    }

    /// Players holding `e`, as a bitmask.
    pub fn owner_mask(&self, e: ElementId) -> u32 {
        self.sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(e))
            .fold(0u32, |m, (i, _)| m | (1 << i))
    }

    pub fn with_added(&self, player: usize, e: ElementId) -> Self {
        let mut p = self.clone();
        p.sets[player].insert(e);
        p
    }

    pub fn with_set(&self, player: usize, set: ElementSet) -> Self {
        let mut p = self.clone();
        p.sets[player] = set;
        p
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(ElementSet::len).collect()
    }

    /// The profile in which player `perm[i]` holds what player `i` holds here.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut sets = vec![ElementSet::new(); self.sets.len()];
        for (i, s) in self.sets.iter().enumerate() {
            sets[perm[i]] = s.clone();
        }
        Self { sets, ground_size: self.ground_size }
    }
}

impl fmt::Display for AllocationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Declared budgets, one per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BidProfile(pub Vec<usize>);

impl BidProfile {
    pub fn new(budgets: Vec<usize>) -> Self {
        Self(budgets)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }

    pub fn budgets(&self) -> &[usize] {
        &self.0
    }

    /// Demand satisfaction needs at least as many elements as the total budget.
    pub fn check_feasible(&self, ground_size: usize) -> Result<()> {
        if self.total() > ground_size {
            return Err(Error::InfeasibleBids { bids: self.0.clone(), ground_size });
        }
        Ok(())
    }

    pub fn incremented(&self, player: usize) -> Self {
        let mut b = self.clone();
        b.0[player] += 1;
        b
    }
}

impl fmt::Display for BidProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// Letter name of a player: `A`, `B`, `C`, ...
pub fn player_name(player: usize) -> char {
    (b'A' + (player as u8 % 26)) as char
}

/// All `size`-subsets of `items`, in lexicographic order.
pub fn combinations(items: &[ElementId], size: usize) -> Vec<ElementSet> {
    let mut out = Vec::new();
    if size > items.len() {
        return out;
    }
    let n = items.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..size).rev().find(|&i| idx[i] < i + n - size) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of `0..n` with at most `max_size` elements, smallest first.
pub fn subsets_up_to(n: usize, max_size: usize) -> Vec<ElementSet> {
    let items: Vec<ElementId> = (0..n).collect();
    (0..=max_size.min(n)).flat_map(|s| combinations(&items, s)).collect()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Which allocation profiles an exhaustive check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileDomain {
    /// Any tuple of subsets; players may share elements.
    All,
    /// Pairwise disjoint tuples only.
    Disjoint,
}

/// Every profile over `0..n` for `players` players whose sets have at most
/// `max_set` elements.
pub fn enumerate_profiles(
    players: usize,
    n: usize,
    max_set: usize,
    domain: ProfileDomain,
) -> Vec<AllocationProfile> {
    let subsets = subsets_up_to(n, max_set);
    let mut out = Vec::new();
    let mut current: Vec<ElementSet> = Vec::with_capacity(players);
    fn rec(
        subsets: &[ElementSet],
        players: usize,
        n: usize,
        domain: ProfileDomain,
        used: &ElementSet,
        current: &mut Vec<ElementSet>,
        out: &mut Vec<AllocationProfile>,
    ) {
        if current.len() == players {
            out.push(AllocationProfile { sets: current.clone(), ground_size: n });
            return;
        }
        for s in subsets {
            if domain == ProfileDomain::Disjoint && !s.is_disjoint(used) {
                continue;
            }
            let next_used = if domain == ProfileDomain::Disjoint { used.union(s) } else { ElementSet::new() };
            current.push(s.clone());
            rec(subsets, players, n, domain, &next_used, current, out);
            current.pop();
        }
    }
    rec(&subsets, players, n, domain, &ElementSet::new(), &mut current, &mut out);
    out
}

/// Every profile with `|S_i| = bids[i]` exactly.
pub fn profiles_with_sizes(bids: &[usize], n: usize, domain: ProfileDomain) -> Vec<AllocationProfile> {
    let items: Vec<ElementId> = (0..n).collect();
    let mut out = Vec::new();
    fn rec(
        bids: &[usize],
        items: &[ElementId],
        n: usize,
        domain: ProfileDomain,
        used: &ElementSet,
        current: &mut Vec<ElementSet>,
        out: &mut Vec<AllocationProfile>,
    ) {
        let i = current.len();
        if i == bids.len() {
            out.push(AllocationProfile { sets: current.clone(), ground_size: n });
            return;
        }
        let pool: Vec<ElementId> = match domain {
            ProfileDomain::All => items.to_vec(),
            ProfileDomain::Disjoint => items.iter().copied().filter(|&e| !used.contains(e)).collect(),
        };
        for s in combinations(&pool, bids[i]) {
            let next_used = used.union(&s);
            current.push(s);
            rec(bids, items, n, domain, &next_used, current, out);
            current.pop();
        }
    }
    rec(bids, &items, n, domain, &ElementSet::new(), &mut Vec::new(), &mut out);
    out
}

/// Number of profiles [`profiles_with_sizes`] would produce.
pub fn count_profiles_with_sizes(bids: &[usize], n: usize, domain: ProfileDomain) -> u128 {
    match domain {
        ProfileDomain::All => bids.iter().map(|&b| binomial(n, b)).product(),
        ProfileDomain::Disjoint => {
            let mut left = n;
            let mut acc: u128 = 1;
            for &b in bids {
                if b > left {
                    return 0;
                }
                acc *= binomial(left, b);
                left -= b;
            }
            acc
        }
    }
}

/// Distinct arrangements of the multiset with `bids[i]` copies of `i`, in
/// lexicographic order.
pub fn multiset_permutations(bids: &[usize]) -> Vec<Vec<usize>> {
    let t: usize = bids.iter().sum();
    let mut out = Vec::new();
    let mut left = bids.to_vec();
    let mut current = Vec::with_capacity(t);
    fn rec(left: &mut [usize], t: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == t {
            out.push(current.clone());
            return;
        }
        for p in 0..left.len() {
            if left[p] > 0 {
                left[p] -= 1;
                current.push(p);
                rec(left, t, current, out);
                current.pop();
                left[p] += 1;
            }
        }
    }
    rec(&mut left, t, &mut current, &mut out);
    out
}

/// Multinomial coefficient `t! / prod(b_i!)` where `t = sum(bids)`.
pub fn multinomial(bids: &[usize]) -> u128 {
    let mut left: usize = bids.iter().sum();
    let mut acc: u128 = 1;
    for &b in bids {
        acc *= binomial(left, b);
        left -= b;
    }
    acc
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    multiset_permutations(&vec![1; k])
}

/// Every bid vector for `players` players with total at most `cap`.
pub fn bid_profiles_up_to(players: usize, cap: usize) -> Vec<BidProfile> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(players);
    fn rec(players: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<BidProfile>) {
        if current.len() == players {
            out.push(BidProfile(current.clone()));
            return;
        }
        let used: usize = current.iter().sum();
        for b in 0..=cap - used {
            current.push(b);
            rec(players, cap, current, out);
            current.pop();
        }
    }
    rec(players, cap, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_match_binomials() {
        let items: Vec<usize> = (0..6).collect();
        for k in 0..=7 {
            assert_eq!(combinations(&items, k).len() as u128, binomial(6, k), "k={k}");
        }
        assert_eq!(combinations(&[4, 7], 2), vec![ElementSet::from([4, 7])]);
        assert_eq!(combinations(&[], 0), vec![ElementSet::new()]);
    }

    #[test]
    fn profile_counts() {
        assert_eq!(profiles_with_sizes(&[2, 1], 4, ProfileDomain::All).len(), 24);
        assert_eq!(count_profiles_with_sizes(&[2, 1], 4, ProfileDomain::All), 24);
        assert_eq!(profiles_with_sizes(&[2, 1], 4, ProfileDomain::Disjoint).len(), 12);
        assert_eq!(count_profiles_with_sizes(&[2, 1], 4, ProfileDomain::Disjoint), 12);
        assert_eq!(enumerate_profiles(2, 3, 3, ProfileDomain::All).len(), 64);
        assert_eq!(enumerate_profiles(2, 3, 3, ProfileDomain::Disjoint).len(), 27);
        assert_eq!(enumerate_profiles(3, 2, 1, ProfileDomain::Disjoint).len(), 13);
    }

    #[test]
    fn multiset_orders() {
        let seqs = multiset_permutations(&[2, 1]);
        assert_eq!(seqs, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(multinomial(&[2, 2, 1]), 30);
        assert_eq!(multiset_permutations(&[2, 2, 1]).len(), 30);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(bid_profiles_up_to(2, 2).len(), 6);
    }

    #[test]
    fn relabel_moves_sets() {
        let p = AllocationProfile::new(
            vec![ElementSet::from([0]), ElementSet::from([1]), ElementSet::new()],
            3,
        )
        .unwrap();
        let q = p.relabel(&[1, 2, 0]);
        assert_eq!(q.set(1), &ElementSet::from([0]));
        assert_eq!(q.set(2), &ElementSet::from([1]));
        assert!(q.set(0).is_empty());
    }

    #[test]
    fn rejects_out_of_range_elements() {
        assert!(AllocationProfile::new(vec![ElementSet::from([3])], 3).is_err());
        assert!(AllocationProfile::new_disjoint(
            vec![ElementSet::from([1]), ElementSet::from([1])],
            3
        )
        .is_err());
    }
}
