//! A closed sum over the bundled model kinds, so callers can hold any
//! loaded instance behind one type.

use alloc::string::String;
use alloc::vec::Vec;

use crate::coverage::{CoverageInstance, ProportionalShare};
use crate::error::Result;
use crate::model::WelfareModel;
use crate::or_model::OrModel;
use crate::profile::{AllocationProfile, ElementId};
use crate::rational::Rational;
use crate::tabular::TabularModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Tabular(TabularModel),
    Or(OrModel),
    Coverage(CoverageInstance),
    Proportional(ProportionalShare),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Tabular(_) => "tabular",
            Instance::Or(_) => "or_single_step",
            Instance::Coverage(_) => "disk_coverage",
            Instance::Proportional(_) => "proportional_share",
        }
    }

    fn inner(&self) -> &dyn WelfareModel {
        match self {
            Instance::Tabular(m) => m,
            Instance::Or(m) => m,
            Instance::Coverage(m) => m,
            Instance::Proportional(m) => m,
        }
    }
}

impl WelfareModel for Instance {
    fn player_count(&self) -> usize {
        self.inner().player_count()
    }

    fn ground_size(&self) -> usize {
        self.inner().ground_size()
    }

    fn utilities(&self, profile: &AllocationProfile) -> Result<Vec<Rational>> {
        self.inner().utilities(profile)
    }

    fn welfare(&self, profile: &AllocationProfile) -> Result<Rational> {
        self.inner().welfare(profile)
    }

    fn is_exact(&self) -> bool {
        self.inner().is_exact()
    }

    fn element_label(&self, e: ElementId) -> String {
        self.inner().element_label(e)
    }
}

impl From<TabularModel> for Instance {
    fn from(m: TabularModel) -> Self {
        Instance::Tabular(m)
    }
}

impl From<OrModel> for Instance {
    fn from(m: OrModel) -> Self {
        Instance::Or(m)
    }
}

impl From<CoverageInstance> for Instance {
    fn from(m: CoverageInstance) -> Self {
        Instance::Coverage(m)
    }
}

impl From<ProportionalShare> for Instance {
    fn from(m: ProportionalShare) -> Self {
        Instance::Proportional(m)
    }
}
