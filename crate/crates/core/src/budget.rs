//! Caps on the exponential searches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits consulted before any exponential scan.
///
/// Every limit can be overridden from the environment via
/// [`Budget::from_env`], e.g. `GROUPLIFT_MAX_SUBGROUP_ORDER=60`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest group order for which the full subgroup lattice is enumerated.
    pub max_subgroup_order: usize,
    /// Largest order of any group the engine will materialize as a table.
    pub max_group_order: usize,
    /// Largest order accepted by catalog queries.
    pub max_catalog_order: usize,
    /// Search-tree nodes allowed in a single hom-set enumeration.
    pub max_hom_nodes: u64,
    /// Tuples allowed when enumerating maps out of a free group.
    pub max_tuples: u64,
    /// Commuting squares allowed in a single lifting check.
    pub max_squares: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_subgroup_order: 24,
            max_group_order: 4096,
            max_catalog_order: 24,
            max_hom_nodes: 20_000_000,
            max_tuples: 2_000_000,
            max_squares: 50_000_000,
        }
    }
}

impl Budget {
    /// Default budget with any `GROUPLIFT_MAX_*` environment overrides applied.
    pub fn from_env() -> Self {
        let mut budget = Self::default();
        let read = |key: &str| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<u64>().ok())
        };
        if let Some(v) = read("GROUPLIFT_MAX_SUBGROUP_ORDER") {
            budget.max_subgroup_order = v as usize;
        }
        if let Some(v) = read("GROUPLIFT_MAX_GROUP_ORDER") {
            budget.max_group_order = v as usize;
        }
        if let Some(v) = read("GROUPLIFT_MAX_CATALOG_ORDER") {
            budget.max_catalog_order = v as usize;
        }
        if let Some(v) = read("GROUPLIFT_MAX_HOM_NODES") {
            budget.max_hom_nodes = v;
        }
        if let Some(v) = read("GROUPLIFT_MAX_TUPLES") {
            budget.max_tuples = v;
        }
        if let Some(v) = read("GROUPLIFT_MAX_SQUARES") {
            budget.max_squares = v;
        }
        budget
    }

    /// Same budget with the subgroup-enumeration cap raised to at least `order`.
    pub fn with_subgroup_order(mut self, order: usize) -> Self {
        self.max_subgroup_order = self.max_subgroup_order.max(order);
        self
    }
}

pub(crate) fn ensure_within(what: &str, required: u128, limit: u128) -> Result<()> {
    if required > limit {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            required,
            limit,
        });
    }
    Ok(())
}
