//! The welfare-oracle abstraction shared by every allocator and checker.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{AllocationProfile, ElementId};
use crate::rational::Rational;

/// Oracle for per-player utilities `f_i` of an allocation profile.
///
/// The social welfare `f` is always the sum of the utilities. Implementations
/// are read-only after construction and shareable across threads.
pub trait WelfareModel: Sync {
    fn player_count(&self) -> usize;

    fn ground_size(&self) -> usize;

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>>;

    fn welfare(&self, profile: &AllocationProfile) -> Result<Rational> {
        Ok(self.utilities(profile)?.into_iter().sum())
    }

    /// `false` for Monte Carlo estimators.
    fn is_exact(&self) -> bool {
        true
    }

    fn element_label(&self, e: ElementId) -> String {
        e.to_string()
    }
}

impl<M: WelfareModel + ?Sized> WelfareModel for &M {
    fn player_count(&self) -> usize {
        (**self).player_count()
    }
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        (**self).utilities(profile)
    }
    fn welfare(&self, profile: &AllocationProfile) -> Result<Rational> {
        (**self).welfare(profile)
    }
    fn is_exact(&self) -> bool {
        (**self).is_exact()
    }
    fn element_label(&self, e: ElementId) -> String {
        (**self).element_label(e)
    }
}

/// Rejects profiles with the wrong player count or foreign elements.
pub fn check_profile<M: WelfareModel + ?Sized>(model: &M, profile: &AllocationProfile) -> Result<()> {
    if profile.players() != model.player_count() {
        return Err(Error::PlayerCount { expected: model.player_count(), found: profile.players() });
    }
    let n = model.ground_size();
    for s in profile.sets() {
        if let Some(e) = s.largest() {
            if e >= n {
                return Err(Error::UnknownElement { element: e, ground_size: n });
            }
        }
    }
    Ok(())
}

pub fn require_exact<M: WelfareModel + ?Sized>(model: &M) -> Result<()> {
    if model.is_exact() {
        Ok(())
    } else {
        Err(Error::InexactModel)
    }
}
