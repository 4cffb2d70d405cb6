//! Explicitly tabulated utilities over a small ground set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{check_profile, WelfareModel};
use crate::profile::{enumerate_profiles, AllocationProfile, ElementId, ProfileDomain};
use crate::rational::Rational;
use num_traits::Signed;

/// Utilities stored per canonical profile. Lookups of profiles without an
/// entry fail with [`Error::MissingEntry`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabularModel {
    players: usize,
    labels: Vec<String>,
    entries: BTreeMap<AllocationProfile, Vec<Rational>>,
}

impl TabularModel {
    pub fn new(players: usize, labels: Vec<String>) -> Self {
        Self { players, labels, entries: BTreeMap::new() }
    }

    /// Tabulates `utility` on every profile of `domain` over the labelled ground set.
    pub fn from_fn<F>(players: usize, labels: Vec<String>, domain: ProfileDomain, mut utility: F) -> Result<Self>
    where
        F: FnMut(&AllocationProfile) -> Vec<Rational>,
    {
        let n = labels.len();
        let mut model = Self::new(players, labels);
        for p in enumerate_profiles(players, n, n, domain) {
            let u = utility(&p);
            model.insert(p, u)?;
        }
        Ok(model)
    }

    pub fn insert(&mut self, profile: AllocationProfile, utilities: Vec<Rational>) -> Result<()> {
        if profile.players() != self.players || utilities.len() != self.players {
            return Err(Error::PlayerCount { expected: self.players, found: utilities.len().min(profile.players()) });
        }
        if profile.ground_size() != self.labels.len() {
            return Err(Error::InvalidModel(format!(
                "profile over {} elements in a table over {}",
                profile.ground_size(),
                self.labels.len()
            )));
        }
        if let Some(u) = utilities.iter().find(|u| u.is_negative()) {
            return Err(Error::InvalidModel(format!("negative utility {u} at {profile}")));
        }
        self.entries.insert(profile, utilities);
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> impl Iterator<Item = (&AllocationProfile, &Vec<Rational>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reports the first profile of `domain` lacking an entry.
    pub fn check_complete(&self, domain: ProfileDomain) -> Result<()> {
        let n = self.labels.len();
        for p in enumerate_profiles(self.players, n, n, domain) {
            if !self.entries.contains_key(&p) {
                return Err(Error::MissingEntry(p.to_string()));
            }
        }
        Ok(())
    }
}

impl WelfareModel for TabularModel {
    fn player_count(&self) -> usize {
        self.players
    }

    fn ground_size(&self) -> usize {
        self.labels.len()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        check_profile(self, profile)?;
        self.entries.get(profile).cloned().ok_or_else(|| Error::MissingEntry(profile.to_string()))
    }

    fn element_label(&self, e: ElementId) -> String {
        self.labels.get(e).cloned().unwrap_or_else(|| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::ElementSet;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn lookup_and_missing_entry() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let m = TabularModel::from_fn(2, labels, ProfileDomain::Disjoint, |p| {
            p.sizes().into_iter().map(|s| int(s as i64)).collect()
        })
        .unwrap();
        assert_eq!(m.len(), 9);
        let p = AllocationProfile::new(vec![ElementSet::from([0, 1]), ElementSet::new()], 2).unwrap();
        assert_eq!(m.utilities(&p).unwrap(), vec![int(2), int(0)]);
        assert_eq!(m.welfare(&p).unwrap(), int(2));
        let shared = AllocationProfile::new(vec![ElementSet::from([0]), ElementSet::from([0])], 2).unwrap();
        assert!(matches!(m.utilities(&shared), Err(Error::MissingEntry(_))));
        assert!(m.check_complete(ProfileDomain::Disjoint).is_ok());
        assert!(m.check_complete(ProfileDomain::All).is_err());
    }

    #[test]
    fn rejects_negative_utilities() {
        let mut m = TabularModel::new(1, vec!["a".to_string()]);
        let p = AllocationProfile::empty(1, 1);
        assert!(m.insert(p, vec![int(-1)]).is_err());
    }
}
