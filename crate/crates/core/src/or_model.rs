//! Single-step competitive OR spread.
//!
//! Every seed node gets one chance to infect each out-neighbour. A node
//! reached by several players goes to one of them uniformly at random, so
//! each reaching player receives `w_v / |reachers|` in expectation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{check_profile, WelfareModel};
use crate::profile::{AllocationProfile, ElementId, ElementSet};
use crate::rational::{from_f64, in_unit_interval, int, ratio, to_f64, Rational};

/// Largest player count the exact reach-pattern enumeration accepts.
pub const MAX_EXACT_PLAYERS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrNode {
    pub id: String,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrEdge {
    pub from: usize,
    pub to: usize,
    pub p: Rational,
}

/// Weighted directed graph with edge infection probabilities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpreadGraph {
    nodes: Vec<OrNode>,
    edges: Vec<OrEdge>,
    index: BTreeMap<String, usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

impl SpreadGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str, weight: Rational) -> Result<usize> {
        if weight < Rational::zero() {
            return Err(Error::InvalidModel(format!("node {id} has negative weight {weight}")));
        }
        if self.index.contains_key(id) {
            return Err(Error::InvalidModel(format!("duplicate node id {id}")));
        }
        let v = self.nodes.len();
        self.nodes.push(OrNode { id: id.to_string(), weight });
        self.index.insert(id.to_string(), v);
        self.incoming.push(Vec::new());
        self.outgoing.push(Vec::new());
        Ok(v)
    }

    pub fn add_edge(&mut self, from: &str, to: &str, p: Rational) -> Result<()> {
        let (u, v) = (self.node_index(from)?, self.node_index(to)?);
        if !in_unit_interval(&p) {
            return Err(Error::InvalidModel(format!("edge {from}->{to} has probability {p} outside [0,1]")));
        }
        if self.outgoing[u].iter().any(|&e| self.edges[e].to == v) {
            return Err(Error::InvalidModel(format!("duplicate edge {from}->{to}")));
        }
        let e = self.edges.len();
        self.edges.push(OrEdge { from: u, to: v, p });
        self.outgoing[u].push(e);
        self.incoming[v].push(e);
        Ok(())
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn nodes(&self) -> &[OrNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[OrEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Probability that `node` is reached by at least one node of
    /// `seeds` (node indices); 1 for a seed itself.
    pub fn reach_probability(&self, seeds: &[usize], node: usize) -> Result<Rational> {
        if let Some(&bad) = seeds.iter().chain(core::iter::once(&node)).find(|&&v| v >= self.nodes.len()) {
            return Err(Error::UnknownNode(bad.to_string()));
        }
        if seeds.contains(&node) {
            return Ok(Rational::one());
        }
        let miss = self.incoming[node]
            .iter()
            .map(|&e| &self.edges[e])
            .filter(|e| seeds.contains(&e.from))
            .fold(Rational::one(), |acc, e| acc * (Rational::one() - &e.p));
        Ok(Rational::one() - miss)
    }
}

/// How seed nodes themselves are valued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedCredit {
    /// A seed node is influenced by its owners, who split its weight
    /// equally; incoming reach is ignored for it.
    #[default]
    Owner,
    /// Seeds earn nothing for themselves and count only as infection sources.
    EdgesOnly,
}

impl SeedCredit {
    pub fn name(self) -> &'static str {
        match self {
            SeedCredit::Owner => "owner",
            SeedCredit::EdgesOnly => "edges-only",
        }
    }
}

/// OR spread as a welfare model. Ground element `e` is graph node
/// `candidates[e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrModel {
    graph: SpreadGraph,
    players: usize,
    candidates: Vec<usize>,
    seed_credit: SeedCredit,
}

/// Per-player Monte Carlo means with standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub samples: usize,
}

impl OrModel {
    /// Every node is a seed candidate.
    pub fn new(graph: SpreadGraph, players: usize, seed_credit: SeedCredit) -> Result<Self> {
        let candidates = (0..graph.node_count()).collect();
        Self::with_candidates(graph, players, candidates, seed_credit)
    }

    pub fn with_candidates(
        graph: SpreadGraph,
        players: usize,
        candidates: Vec<usize>,
        seed_credit: SeedCredit,
    ) -> Result<Self> {
        if players == 0 || players > 32 {
            return Err(Error::InvalidModel(format!("player count {players} outside 1..=32")));
        }
        let mut seen = vec![false; graph.node_count()];
        for &c in &candidates {
            if c >= graph.node_count() {
                return Err(Error::UnknownNode(c.to_string()));
            }
            if core::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidModel(format!("candidate {} listed twice", graph.nodes[c].id)));
            }
        }
        Ok(Self { graph, players, candidates, seed_credit })
    }

    pub fn graph(&self) -> &SpreadGraph {
        &self.graph
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    pub fn seed_credit(&self) -> SeedCredit {
        self.seed_credit
    }

    pub fn with_seed_credit(mut self, seed_credit: SeedCredit) -> Self {
        self.seed_credit = seed_credit;
        self
    }

    /// Ground element for a node id, if it is a candidate.
    pub fn element(&self, id: &str) -> Result<ElementId> {
        let v = self.graph.node_index(id)?;
        self.candidates
            .iter()
            .position(|&c| c == v)
            .ok_or_else(|| Error::InvalidModel(format!("node {id} is not a seed candidate")))
    }

    /// Profile from per-player lists of node ids.
    pub fn profile(&self, sets: &[&[&str]]) -> Result<AllocationProfile> {
        let sets = sets
            .iter()
            .map(|ids| ids.iter().map(|id| self.element(id)).collect::<Result<ElementSet>>())
            .collect::<Result<Vec<_>>>()?;
        AllocationProfile::new(sets, self.candidates.len())
    }

    /// Owner bitmask per graph node.
    fn node_owners(&self, profile: &AllocationProfile) -> Vec<u32> {
        let mut owners = vec![0u32; self.graph.node_count()];
        for (i, s) in profile.sets().iter().enumerate() {
            for e in s.iter() {
                owners[self.candidates[e]] |= 1 << i;
            }
        }
        owners
    }

    fn credited_as_seed(&self, owners: u32) -> bool {
        owners != 0 && self.seed_credit == SeedCredit::Owner
    }

    /// Exact expected utilities: seed credit, then for every other node the
    /// distribution over reaching-player sets. Edges out of one seed node
    /// fire once, so seeds with the same owner set pool into one event.
    fn exact_utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        let k = self.players;
        if k > MAX_EXACT_PLAYERS {
            return Err(Error::TooLarge { what: "players for exact OR oracle", count: k as u128, limit: MAX_EXACT_PLAYERS as u128 });
        }
        let owners = self.node_owners(profile);
        let mut u = vec![Rational::zero(); k];
        for (v, node) in self.graph.nodes.iter().enumerate() {
            if node.weight.is_zero() {
                continue;
            }
            if self.credited_as_seed(owners[v]) {
                let share = &node.weight / int(owners[v].count_ones() as i64);
                for (i, ui) in u.iter_mut().enumerate() {
                    if owners[v] & (1 << i) != 0 {
                        *ui += &share;
                    }
                }
                continue;
            }
            let mut miss: BTreeMap<u32, Rational> = BTreeMap::new();
            for e in self.graph.incoming[v].iter().map(|&e| &self.graph.edges[e]) {
                let m = owners[e.from];
                if m != 0 {
                    let slot = miss.entry(m).or_insert_with(Rational::one);
                    *slot *= Rational::one() - &e.p;
                }
            }
            if miss.is_empty() {
                continue;
            }
            let mut dist = vec![Rational::zero(); 1 << k];
            dist[0] = Rational::one();
            for (&m, q_miss) in &miss {
                let q_hit = Rational::one() - q_miss;
                let mut next = vec![Rational::zero(); 1 << k];
                for (s, ps) in dist.iter().enumerate() {
                    if ps.is_zero() {
                        continue;
                    }
                    next[s | m as usize] += ps * &q_hit;
                    next[s] += ps * q_miss;
                }
                dist = next;
            }
            for (r, pr) in dist.iter().enumerate().skip(1) {
                if pr.is_zero() {
                    continue;
                }
                let share = &node.weight * pr / int(r.count_ones() as i64);
                for (i, ui) in u.iter_mut().enumerate() {
                    if r & (1 << i) != 0 {
                        *ui += &share;
                    }
                }
            }
        }
        Ok(u)
    }

    /// Monte Carlo estimate of the expected utilities. Each sample flips every
    /// out-edge of every seed once and credits each reacher `w_v / |reachers|`.
    pub fn monte_carlo_utility(&self, profile: &AllocationProfile, samples: usize, rng_seed: u64) -> Result<McEstimate> {
        check_profile(self, profile)?;
        if samples == 0 {
            return Err(Error::Parameter("samples must be at least 1".into()));
        }
        let k = self.players;
        let owners = self.node_owners(profile);
        let weights: Vec<f64> = self.graph.nodes.iter().map(|n| to_f64(&n.weight)).collect();
        let edges: Vec<(usize, usize, f64)> = self
            .graph
            .edges
            .iter()
            .filter(|e| owners[e.from] != 0)
            .map(|e| (e.from, e.to, to_f64(&e.p)))
            .collect();

        let mut fixed = vec![0.0f64; k];
        let mut contested = Vec::new();
        for (v, &m) in owners.iter().enumerate() {
            if self.credited_as_seed(m) {
                let share = weights[v] / m.count_ones() as f64;
                for (i, f) in fixed.iter_mut().enumerate() {
                    if m & (1 << i) != 0 {
                        *f += share;
                    }
                }
            } else {
                contested.push(v);
            }
        }
        let mut live = vec![false; self.graph.node_count()];
        for &v in &contested {
            live[v] = true;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut reach = vec![0u32; self.graph.node_count()];
        let mut sum = vec![0.0f64; k];
        let mut sum_sq = vec![0.0f64; k];
        let mut draw = vec![0.0f64; k];
        for _ in 0..samples {
            reach.iter_mut().for_each(|r| *r = 0);
            for &(from, to, p) in &edges {
                let hit = rng.random::<f64>() < p;
                if hit && live[to] {
                    reach[to] |= owners[from];
                }
            }
            draw.copy_from_slice(&fixed);
            for &v in &contested {
                let r = reach[v];
                if r != 0 {
                    let share = weights[v] / r.count_ones() as f64;
                    for (i, d) in draw.iter_mut().enumerate() {
                        if r & (1 << i) != 0 {
                            *d += share;
                        }
                    }
                }
            }
            for i in 0..k {
                sum[i] += draw[i];
                sum_sq[i] += draw[i] * draw[i];
            }
        }
        let n = samples as f64;
        let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
        let stderr = (0..k)
            .map(|i| {
                if samples < 2 {
                    return 0.0;
                }
                let var = ((sum_sq[i] - n * mean[i] * mean[i]) / (n - 1.0)).max(0.0);
                Float::sqrt(var / n)
            })
            .collect();
        Ok(McEstimate { mean, stderr, samples })
    }
}

impl WelfareModel for OrModel {
    fn player_count(&self) -> usize {
        self.players
    }

    fn ground_size(&self) -> usize {
        self.candidates.len()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        check_profile(self, profile)?;
        self.exact_utilities(profile)
    }

    fn element_label(&self, e: ElementId) -> String {
        match self.candidates.get(e) {
            Some(&v) => self.graph.nodes[v].id.clone(),
            None => e.to_string(),
        }
    }
}

/// Monte Carlo oracle over an [`OrModel`]. Every query reuses the same RNG
/// seed, so marginal comparisons see common random numbers.
#[derive(Debug, Clone)]
pub struct SampledOrModel<'a> {
    pub model: &'a OrModel,
    pub samples: usize,
    pub rng_seed: u64,
}

impl WelfareModel for SampledOrModel<'_> {
    fn player_count(&self) -> usize {
        self.model.players
    }

    fn ground_size(&self) -> usize {
        self.model.candidates.len()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        let est = self.model.monte_carlo_utility(profile, self.samples, self.rng_seed)?;
        est.mean
            .iter()
            .map(|&x| from_f64(x).ok_or_else(|| Error::Invariant(format!("non-finite estimate {x}"))))
            .collect()
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn element_label(&self, e: ElementId) -> String {
        self.model.element_label(e)
    }
}

/// Shape of a random OR instance: candidate seeds on one side, targets on the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomOrParams {
    pub players: usize,
    pub seeds: usize,
    pub targets: usize,
    /// Each seed-target pair gets an edge with probability `density / 10`.
    pub density: u32,
    pub seed_credit: SeedCredit,
}

impl Default for RandomOrParams {
    fn default() -> Self {
        Self { players: 2, seeds: 6, targets: 5, density: 4, seed_credit: SeedCredit::Owner }
    }
}

/// Random bipartite OR instance with small-denominator probabilities and
/// weights, so exact arithmetic stays cheap.
pub fn random_or_model(params: &RandomOrParams, rng_seed: u64) -> Result<OrModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut g = SpreadGraph::new();
    let mut candidates = Vec::with_capacity(params.seeds);
    for s in 0..params.seeds {
        let w = ratio(rng.random_range(0..=2), 4);
        candidates.push(g.add_node(&format!("c{}", s + 1), w)?);
    }
    for t in 0..params.targets {
        g.add_node(&format!("u{}", t + 1), int(rng.random_range(1..=3)))?;
    }
    for s in 0..params.seeds {
        for t in 0..params.targets {
            if rng.random_range(0..10) < params.density {
                let p = ratio(rng.random_range(1..=10), 10);
                g.add_edge(&format!("c{}", s + 1), &format!("u{}", t + 1), p)?;
            }
        }
    }
    OrModel::with_candidates(g, params.players, candidates, params.seed_credit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn tiny() -> OrModel {
        let mut g = SpreadGraph::new();
        g.add_node("s1", q("1/2")).unwrap();
        g.add_node("s2", q("0")).unwrap();
        g.add_node("t", q("1")).unwrap();
        g.add_edge("s1", "t", q("1/2")).unwrap();
        g.add_edge("s2", "t", q("1/3")).unwrap();
        OrModel::with_candidates(g, 2, vec![0, 1], SeedCredit::Owner).unwrap()
    }

    #[test]
    fn contested_node_is_split_by_reach_pattern() {
        let m = tiny();
        let p = m.profile(&[&["s1"], &["s2"]]).unwrap();
        let u = m.utilities(&p).unwrap();
        // A alone 1/2*2/3, both 1/2*1/3 halved, B alone 1/2*1/3.
        assert_eq!(u[0], q("1/2") + q("1/3") + q("1/12"));
        assert_eq!(u[1], q("1/6") + q("1/12"));
    }

    #[test]
    fn shared_seed_fires_once_and_splits_credit() {
        let m = tiny();
        let p = m.profile(&[&["s1"], &["s1"]]).unwrap();
        let u = m.utilities(&p).unwrap();
        assert_eq!(u[0], q("1/2"));
        assert_eq!(u[1], q("1/2"));
        assert_eq!(m.welfare(&p).unwrap(), q("1"));
    }

    #[test]
    fn edges_only_credit_ignores_seed_weight() {
        let m = tiny().with_seed_credit(SeedCredit::EdgesOnly);
        let p = m.profile(&[&["s1"], &[]]).unwrap();
        assert_eq!(m.utilities(&p).unwrap(), vec![q("1/2"), q("0")]);
    }

    #[test]
    fn reach_probability_products() {
        let m = tiny();
        let g = m.graph();
        assert_eq!(g.reach_probability(&[0, 1], 2).unwrap(), q("2/3"));
        assert_eq!(g.reach_probability(&[], 2).unwrap(), q("0"));
        assert_eq!(g.reach_probability(&[2], 2).unwrap(), q("1"));
        assert!(g.reach_probability(&[7], 2).is_err());
    }

    #[test]
    fn rejects_bad_graphs() {
        let mut g = SpreadGraph::new();
        g.add_node("a", q("1")).unwrap();
        assert!(g.add_node("a", q("1")).is_err());
        assert!(g.add_node("b", q("-1")).is_err());
        g.add_node("b", q("1")).unwrap();
        assert!(g.add_edge("a", "b", q("3/2")).is_err());
        g.add_edge("a", "b", q("1/2")).unwrap();
        assert!(g.add_edge("a", "b", q("1/3")).is_err());
        assert!(g.add_edge("a", "zz", q("1/3")).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic_per_seed() {
        let m = tiny();
        let p = m.profile(&[&["s1"], &["s2"]]).unwrap();
        let a = m.monte_carlo_utility(&p, 500, 9).unwrap();
        let b = m.monte_carlo_utility(&p, 500, 9).unwrap();
        assert_eq!(a, b);
        assert!(m.monte_carlo_utility(&p, 0, 9).is_err());
    }
}
