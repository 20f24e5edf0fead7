//! Test allocation strategies, selectable by name.

use crate::error::Result;
use crate::oracle::{brute_force_plan_with, OracleConfig};
use crate::planner::{integer_plan, shortest_path_check, FractionPlan, RemainderPolicy};
use crate::registry::{Named, Registry};
use crate::structure::CutsetMatrix;

/// What every strategy may consult.
pub struct PlanContext<'a> {
    pub cutsets: &'a CutsetMatrix,
    pub fractions: &'a FractionPlan,
}

pub trait AllocationStrategy: Named + Send + Sync {
    /// Tests per component for a total budget of `n_total`. The plan may
    /// leave part of the budget unused.
    fn allocate(&self, ctx: &PlanContext<'_>, n_total: u64) -> Result<Vec<u64>>;
}

/// Optimal fractions scaled to the largest multiple of N0 in the budget.
pub struct LpOptimal;

impl Named for LpOptimal {
    fn name(&self) -> &'static str {
        "lp-optimal"
    }

    fn description(&self) -> &'static str {
        "LP-optimal fractions scaled to N- (remainder unallocated)"
    }
}

impl AllocationStrategy for LpOptimal {
    fn allocate(&self, ctx: &PlanContext<'_>, n_total: u64) -> Result<Vec<u64>> {
        Ok(integer_plan(ctx.cutsets, ctx.fractions, n_total, RemainderPolicy::Unallocated)?.tests)
    }
}

/// Equal split over the components of one shortest success path.
pub struct ShortestPath;

impl Named for ShortestPath {
    fn name(&self) -> &'static str {
        "shortest-path"
    }

    fn description(&self) -> &'static str {
        "floor(N/P) tests on each component of one shortest success path"
    }
}

impl AllocationStrategy for ShortestPath {
    fn allocate(&self, ctx: &PlanContext<'_>, n_total: u64) -> Result<Vec<u64>> {
        let cmp = shortest_path_check(ctx.fractions, ctx.cutsets)?;
        Ok(cmp.path_plan(ctx.cutsets.num_components(), n_total))
    }
}

/// Exhaustive integer search; first maximizing allocation in lexicographic order.
#[derive(Default)]
pub struct Exhaustive {
    pub config: OracleConfig,
}

impl Named for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn description(&self) -> &'static str {
        "brute-force integer optimum (small budgets only)"
    }
}

impl AllocationStrategy for Exhaustive {
    fn allocate(&self, ctx: &PlanContext<'_>, n_total: u64) -> Result<Vec<u64>> {
        let config = OracleConfig {
            witness_cap: 1,
            ..self.config
        };
        let result = brute_force_plan_with(ctx.cutsets, n_total, &config)?;
        Ok(result.witness_plans.into_iter().next().unwrap_or_default())
    }
}

pub type StrategyRegistry = Registry<dyn AllocationStrategy>;

pub const DEFAULT_STRATEGY: &str = "lp-optimal";

pub fn default_strategies() -> StrategyRegistry {
    let mut registry: StrategyRegistry = Registry::new("strategy");
    registry.register(Box::new(LpOptimal));
    registry.register(Box::new(ShortestPath));
    registry.register(Box::new(Exhaustive::default()));
    registry
}
