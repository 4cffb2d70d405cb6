//! Strategyproof mechanisms for competitive seed allocation.
//!
//! Players bid budgets, the mechanism picks seed sets, and welfare comes from
//! an exact rational oracle. The crate is `no_std` with `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod audit;
pub mod checks;
pub mod coverage;
pub mod error;
pub mod fixtures;
pub mod greedy;
pub mod instance;
pub mod mechanisms;
pub mod model;
pub mod or_model;
pub mod profile;
pub mod rational;
pub mod tabular;

pub use error::{Error, Result};
pub use model::WelfareModel;
pub use profile::{AllocationProfile, BidProfile, ElementId, ElementSet, ProfileDomain};
pub use rational::Rational;
