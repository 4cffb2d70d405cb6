//! Communication-zone coverage: disks are the ground set, the plane is
//! pre-cut into weighted cells, and a cell covered by several allocated
//! disks is shared among them in proportion to their owners' weights.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{check_profile, WelfareModel};
use crate::profile::{AllocationProfile, ElementId, ElementSet};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub value: Rational,
    pub disks: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageInstance {
    disks: Vec<String>,
    cells: Vec<Cell>,
    player_weights: Vec<Rational>,
}

impl CoverageInstance {
    pub fn new(disks: Vec<String>, cells: Vec<Cell>, player_weights: Vec<Rational>) -> Result<Self> {
        if player_weights.is_empty() || player_weights.len() > 32 {
            return Err(Error::InvalidModel(format!("player count {} outside 1..=32", player_weights.len())));
        }
        if let Some(w) = player_weights.iter().find(|w| **w <= Rational::zero()) {
            return Err(Error::InvalidModel(format!("player weight {w} is not positive")));
        }
        let mut names: Vec<&String> = disks.iter().collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel("duplicate disk id".into()));
        }
        for (c, cell) in cells.iter().enumerate() {
            if cell.value < Rational::zero() {
                return Err(Error::InvalidModel(format!("cell {c} has negative value {}", cell.value)));
            }
            if cell.disks.is_empty() {
                return Err(Error::InvalidModel(format!("cell {c} is covered by no disk")));
            }
            if let Some(d) = cell.disks.largest().filter(|&d| d >= disks.len()) {
                return Err(Error::UnknownElement { element: d, ground_size: disks.len() });
            }
        }
        Ok(Self { disks, cells, player_weights })
    }

    /// Unit-weight players with one private cell per disk: an additive model.
    pub fn modular(values: &[Rational], players: usize) -> Result<Self> {
        let disks = (0..values.len()).map(|d| format!("D{}", d + 1)).collect();
        let cells = values
            .iter()
            .enumerate()
            .map(|(d, v)| Cell { value: v.clone(), disks: ElementSet::from([d]) })
            .collect();
        Self::new(disks, cells, alloc::vec![int(1); players])
    }

    pub fn disks(&self) -> &[String] {
        &self.disks
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn player_weights(&self) -> &[Rational] {
        &self.player_weights
    }

    pub fn is_unweighted(&self) -> bool {
        self.player_weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn disk(&self, id: &str) -> Result<ElementId> {
        self.disks.iter().position(|d| d == id).ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Total value of the cells covered by at least one allocated disk.
    pub fn coverage_welfare(&self, profile: &AllocationProfile) -> Result<Rational> {
        check_profile(self, profile)?;
        let union = profile.union();
        Ok(self
            .cells
            .iter()
            .filter(|c| c.disks.iter().any(|d| union.contains(d)))
            .map(|c| &c.value)
            .sum())
    }

    pub fn coverage_utility(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        check_profile(self, profile)?;
        let k = self.player_weights.len();
        let mut u = alloc::vec![Rational::zero(); k];
        let mut holders: Vec<usize> = Vec::new();
        for cell in &self.cells {
            holders.clear();
            for d in cell.disks.iter() {
                for (i, s) in profile.sets().iter().enumerate() {
                    if s.contains(d) {
                        holders.push(i);
                    }
                }
            }
            if holders.is_empty() || cell.value.is_zero() {
                continue;
            }
            let total: Rational = holders.iter().map(|&i| &self.player_weights[i]).sum();
            for &i in &holders {
                u[i] += &cell.value * &self.player_weights[i] / &total;
            }
        }
        Ok(u)
    }
}

impl WelfareModel for CoverageInstance {
    fn player_count(&self) -> usize {
        self.player_weights.len()
    }

    fn ground_size(&self) -> usize {
        self.disks.len()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        self.coverage_utility(profile)
    }

    fn welfare(&self, profile: &AllocationProfile) -> Result<Rational> {
        self.coverage_welfare(profile)
    }

    fn element_label(&self, e: ElementId) -> String {
        self.disks.get(e).cloned().unwrap_or_else(|| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageParams {
    pub players: usize,
    pub disks: usize,
    pub cells: usize,
    /// Most disks covering one cell.
    pub max_cover: usize,
    /// `None` for equal weights; otherwise weights drawn from `1..=max`.
    pub max_player_weight: Option<i64>,
}

impl Default for CoverageParams {
    fn default() -> Self {
        Self { players: 2, disks: 6, cells: 10, max_cover: 3, max_player_weight: None }
    }
}

/// Random cell structure with values in quarters from 1/4 to 2.
pub fn random_coverage(params: &CoverageParams, rng_seed: u64) -> Result<CoverageInstance> {
    if params.disks == 0 || params.max_cover == 0 {
        return Err(Error::Parameter("need at least one disk and max_cover >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let disks = (0..params.disks).map(|d| format!("D{}", d + 1)).collect();
    let cells = (0..params.cells)
        .map(|_| {
            let m = rng.random_range(1..=params.max_cover.min(params.disks));
            let disks: ElementSet = sample(&mut rng, params.disks, m).into_iter().collect();
            Cell { value: ratio(rng.random_range(1..=8), 4), disks }
        })
        .collect();
    let weights = (0..params.players)
        .map(|_| match params.max_player_weight {
            None => int(1),
            Some(max) => int(rng.random_range(1..=max.max(1))),
        })
        .collect();
    CoverageInstance::new(disks, cells, weights)
}

/// A tabular-free random MeI + AgI model: each player gets its share
/// `|S_i| / |S|` of a random coverage value `g(S)` of the union. Meant for
/// disjoint profiles, where it is also anonymous and normalised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionalShare {
    base: CoverageInstance,
    players: usize,
}

impl ProportionalShare {
    pub fn new(base: CoverageInstance, players: usize) -> Self {
        Self { base, players }
    }

    pub fn random(players: usize, disks: usize, cells: usize, rng_seed: u64) -> Result<Self> {
        let params = CoverageParams { players: 1, disks, cells, max_cover: 3, max_player_weight: None };
        Ok(Self::new(random_coverage(&params, rng_seed)?, players))
    }

    pub fn base(&self) -> &CoverageInstance {
        &self.base
    }
}

impl WelfareModel for ProportionalShare {
    fn player_count(&self) -> usize {
        self.players
    }

    fn ground_size(&self) -> usize {
        self.base.disks.len()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        check_profile(self, profile)?;
        if !profile.is_disjoint() {
            return Err(Error::Precondition(format!("proportional-share model needs disjoint profiles, got {profile}")));
        }
        let union = profile.union();
        if union.is_empty() {
            return Ok(alloc::vec![Rational::zero(); self.players]);
        }
        let single = AllocationProfile::new(alloc::vec![union.clone()], profile.ground_size())?;
        let g = self.base.coverage_welfare(&single)?;
        let n = int(union.len() as i64);
        Ok(profile.sets().iter().map(|s| &g * int(s.len() as i64) / &n).collect())
    }

    fn element_label(&self, e: ElementId) -> String {
        self.base.element_label(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn shared(weights: &[i64]) -> CoverageInstance {
        let cells = alloc::vec![
            Cell { value: q("1/2"), disks: ElementSet::from([0, 1]) },
            Cell { value: q("1"), disks: ElementSet::from([0]) },
        ];
        CoverageInstance::new(alloc::vec!["D1".into(), "D2".into()], cells, weights.iter().map(|&w| int(w)).collect())
            .unwrap()
    }

    fn prof(sets: alloc::vec::Vec<&[usize]>) -> AllocationProfile {
        AllocationProfile::new(sets.into_iter().map(|s| s.iter().copied().collect()).collect(), 2).unwrap()
    }

    #[test]
    fn overlap_cell_counts_once() {
        let c = shared(&[1, 1]);
        assert_eq!(c.coverage_welfare(&prof(alloc::vec![&[0], &[1]])).unwrap(), q("3/2"));
        assert_eq!(c.coverage_welfare(&prof(alloc::vec![&[], &[]])).unwrap(), q("0"));
    }

    #[test]
    fn equal_and_weighted_sharing() {
        let c = shared(&[1, 1]);
        let u = c.coverage_utility(&prof(alloc::vec![&[1], &[0]])).unwrap();
        assert_eq!(u, alloc::vec![q("1/4"), q("1/4") + q("1")]);
        let w = shared(&[2, 1]);
        let u = w.coverage_utility(&prof(alloc::vec![&[0], &[1]])).unwrap();
        assert_eq!(u, alloc::vec![q("1/3") + q("1"), q("1/6")]);
    }

    #[test]
    fn same_player_disks_count_with_multiplicity() {
        let c = shared(&[1, 1]);
        let u = c.coverage_utility(&prof(alloc::vec![&[0, 1], &[]])).unwrap();
        assert_eq!(u, alloc::vec![q("3/2"), q("0")]);
        let u = c.coverage_utility(&prof(alloc::vec![&[0, 1], &[0]])).unwrap();
        // Cell 0 has three holders, cell 1 two.
        assert_eq!(u, alloc::vec![q("1/3") + q("1/2"), q("1/6") + q("1/2")]);
    }

    #[test]
    fn rejects_invalid_instances() {
        let bad = alloc::vec![Cell { value: q("1"), disks: ElementSet::new() }];
        assert!(CoverageInstance::new(alloc::vec!["D1".into()], bad, alloc::vec![int(1)]).is_err());
        let neg = alloc::vec![Cell { value: q("-1"), disks: ElementSet::from([0]) }];
        assert!(CoverageInstance::new(alloc::vec!["D1".into()], neg, alloc::vec![int(1)]).is_err());
        assert!(CoverageInstance::new(alloc::vec!["D1".into()], alloc::vec![], alloc::vec![int(0)]).is_err());
    }

    #[test]
    fn generator_is_reproducible() {
        let p = CoverageParams::default();
        assert_eq!(random_coverage(&p, 3).unwrap(), random_coverage(&p, 3).unwrap());
    }
}
