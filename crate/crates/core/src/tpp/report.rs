use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use super::TppTriple;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Triples whose final membership test was run.
    pub candidates_examined: u64,
    /// Subgroups or pairs discarded by a pruning rule before reaching that test.
    pub pruned: u64,
    pub wall_time_ms: u64,
}

/// Outcome of a subgroup-triple search.
#[derive(Debug, Clone)]
pub struct TppReport {
    pub group: String,
    pub order: usize,
    /// Exact unless `budget_exhausted`, in which case a lower bound.
    pub beta0: u64,
    pub rho0: Ratio<u64>,
    /// Triples of size `beta0`, one per unordered member set, members
    /// listed with `|S| >= |T| >= |U|`, in canonical lattice order.
    pub maximal_subgroup_triples: Vec<TppTriple>,
    /// Number of maximal triples found (may exceed the stored list).
    pub witness_count: u64,
    /// False when the stored list was capped or the witness pass ran out
    /// of budget.
    pub witnesses_complete: bool,
    pub beta: Option<u64>,
    pub rho: Option<Ratio<u64>>,
    pub stats: SearchStats,
    pub budget_exhausted: bool,
}

impl TppReport {
    /// Records a subset-search result; `rho >= rho0` is the caller's to check.
    pub fn with_subset_capacity(mut self, beta: u64) -> Self {
        self.beta = Some(beta);
        self.rho = Some(Ratio::new(beta, self.order as u64));
        self
    }

    pub fn to_json(&self) -> Value {
        let triples: Vec<Value> = self
            .maximal_subgroup_triples
            .iter()
            .map(|t| json!(t.to_indices()))
            .collect();
        let mut v = json!({
            "group": self.group,
            "order": self.order,
            "beta0": self.beta0,
            "rho0_num": self.rho0.numer(),
            "rho0_den": self.rho0.denom(),
            "triples": triples,
            "witness_count": self.witness_count,
            "witnesses_complete": self.witnesses_complete,
            "budget_exhausted": self.budget_exhausted,
            "stats": self.stats,
        });
        if let (Some(beta), Some(rho)) = (self.beta, self.rho) {
            v["beta"] = json!(beta);
            v["rho_num"] = json!(rho.numer());
            v["rho_den"] = json!(rho.denom());
        }
        v
    }

    #[cfg(test)]
    pub(crate) fn exact_for_tests(order: usize, beta0: u64) -> Self {
        TppReport {
            group: String::new(),
            order,
            beta0,
            rho0: Ratio::new(beta0, order as u64),
            maximal_subgroup_triples: Vec::new(),
            witness_count: 0,
            witnesses_complete: true,
            beta: None,
            rho: None,
            stats: SearchStats::default(),
            budget_exhausted: false,
        }
    }
}
