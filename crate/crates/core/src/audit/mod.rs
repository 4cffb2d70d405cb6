//! Strategyproofness and approximation audits, counterexample
//! reproduction, and the three-player extension analysis.

pub mod approx;
pub mod disjoint;
pub mod infeasibility;
pub mod repro;
pub mod sweep;

pub use approx::{approximation_audit, guaranteed_fraction, ApproxReport, ApproxRow};
pub use disjoint::{verify_disjoint_bound, ChainLink, DisjointAudit, DisjointBoundReport, DisjointCheck};
pub use infeasibility::{extension_infeasibility, ExtensionAnalysis};
pub use repro::{reproduce, reproduce_default, ReproReport, ReproValue, CASES};
pub use sweep::{monotonicity_sweep, AuditReport, MonotonicityWitness};

use crate::mechanisms::{FixedPolicy, MechanismId};

/// Mechanism id for a deterministic ordering policy.
pub fn fixed_ordering_mechanism(policy: FixedPolicy) -> MechanismId {
    MechanismId::Fixed(policy)
}
