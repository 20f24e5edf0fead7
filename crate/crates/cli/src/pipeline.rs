//! minimal cutsets -> fractions (cached) -> integer plan -> bound -> path comparison.

use cutplan::oracle::{allocation_count, OracleConfig, MAX_VERTEX_CONSTRAINTS};
use cutplan::rational::to_fraction_string;
use cutplan::{
    brute_force_plan, confidence_bound, default_solvers, default_strategies, enumerate_lp_vertices,
    evaluate_plan, integer_plan, minimal_cutsets, minimal_pathsets, optimize_fractions_with,
    shortest_path_check, CutsetMatrix, FractionPlan, IntegerPlan, LpProblem, LpSolver, LpStatus,
    PlanContext, RemainderPolicy, SolverRegistry, StrategyRegistry,
};

use crate::cache::{structure_hash, FractionCache, Lookup};
use crate::document::StructureDocument;
use crate::error::CliError;
use crate::report::{
    format_probability, AuditCheck, AuditSection, BoundSection, ComponentFraction, EvaluatedPlan,
    ExactValue, FractionSection, InputEcho, PathSection, PathsetSummary, PlanReport, PlanSection,
    StrategyRow, REPORT_SCHEMA_VERSION,
};

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct Options {
    /// Total budget; without it only fractions are reported.
    pub tests: Option<u64>,
    pub alpha: f64,
    pub plus: bool,
    pub distribute_remainder: bool,
    pub audit: bool,
    pub cache: Option<FractionCache>,
    pub verify_cache: bool,
    pub solver: String,
    pub evaluate_plan: Option<Vec<u64>>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tests: None,
            alpha: DEFAULT_ALPHA,
            plus: false,
            distribute_remainder: false,
            audit: false,
            cache: None,
            verify_cache: false,
            solver: cutplan::solver::DEFAULT_SOLVER.to_string(),
            evaluate_plan: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// An unusable entry was replaced by a fresh solve.
    Recomputed,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: PlanReport,
    pub cache_status: CacheStatus,
    /// Operational messages (cache problems); never part of the report.
    pub notices: Vec<String>,
}

pub struct Pipeline {
    solvers: SolverRegistry,
    strategies: StrategyRegistry,
    oracle: OracleConfig,
}

impl Default for Pipeline {
    fn default() -> Self {
        Self {
            solvers: default_solvers(),
            strategies: default_strategies(),
            oracle: OracleConfig::default(),
        }
    }
}

impl Pipeline {
    pub fn new(solvers: SolverRegistry, strategies: StrategyRegistry) -> Self {
        Self {
            solvers,
            strategies,
            oracle: OracleConfig::default(),
        }
    }

    pub fn solvers(&self) -> &SolverRegistry {
        &self.solvers
    }

    pub fn strategies(&self) -> &StrategyRegistry {
        &self.strategies
    }

    /// Fraction plan from the cache when possible, otherwise solved and stored.
    pub fn fractions(
        &self,
        cutsets: &CutsetMatrix,
        solver: &dyn LpSolver,
        cache: Option<&FractionCache>,
        verify: bool,
        notices: &mut Vec<String>,
    ) -> Result<(FractionPlan, CacheStatus), CliError> {
        let Some(cache) = cache else {
            return Ok((optimize_fractions_with(cutsets, solver)?, CacheStatus::Disabled));
        };
        let status = match cache.lookup(cutsets, solver.name()) {
            Lookup::Hit(plan) => {
                if verify {
                    let fresh = optimize_fractions_with(cutsets, solver)?;
                    if fresh != plan {
                        return Err(CliError::CacheMismatch(format!(
                            "entry {} disagrees with {}",
                            cache.entry_path(&structure_hash(cutsets), solver.name()).display(),
                            solver.name()
                        )));
                    }
                }
                return Ok((plan, CacheStatus::Hit));
            }
            Lookup::Miss => CacheStatus::Miss,
            Lookup::Corrupt(reason) => {
                notices.push(format!("ignoring corrupt cache entry: {reason}"));
                CacheStatus::Recomputed
            }
        };
        let plan = optimize_fractions_with(cutsets, solver)?;
        if let Err(e) = cache.store(cutsets, &plan, solver.name()) {
            notices.push(format!("could not write cache in {}: {e}", cache.dir().display()));
        }
        Ok((plan, status))
    }

    pub fn run(&self, doc: &StructureDocument, opts: &Options) -> Result<Outcome, CliError> {
        if !(opts.alpha > 0.0 && opts.alpha < 1.0) {
            return Err(cutplan::Error::InvalidAlpha(opts.alpha).into());
        }
        let solver = self.solvers.get(&opts.solver)?;
        let structure = doc.to_structure()?;
        let cutsets = minimal_cutsets(&structure)?;
        let names = structure.component_names();
        let label = |j: usize| names[j].clone();

        let mut notices = Vec::new();
        let (fp, cache_status) =
            self.fractions(&cutsets, solver, opts.cache.as_ref(), opts.verify_cache, &mut notices)?;

        let policy = if opts.distribute_remainder {
            RemainderPolicy::RoundRobin
        } else {
            RemainderPolicy::Unallocated
        };
        let plan = opts
            .tests
            .map(|n| integer_plan(&cutsets, &fp, n, policy))
            .transpose()?;
        let plan_plus = match (&plan, opts.plus) {
            (Some(p), true) => Some(integer_plan(&cutsets, &fp, p.n_plus, RemainderPolicy::Unallocated)?),
            _ => None,
        };
        let bound = plan
            .as_ref()
            .map(|p| confidence_bound(p.n_min, opts.alpha))
            .transpose()?;
        let comparison = shortest_path_check(&fp, &cutsets)?;
        let pathsets = minimal_pathsets(&cutsets);

        let mut warnings = Vec::new();
        for j in cutsets.irrelevant_components() {
            warnings.push(format!(
                "component {} belongs to no minimal cutset and receives no tests",
                names[j]
            ));
        }
        if fp.alternative_optima {
            warnings.push(
                "alternative optimal fraction vectors exist; the reported one is the most balanced \
                 and another optimum may have a different N0"
                    .to_string(),
            );
        }

        let strategies = match opts.tests {
            Some(n) => self.strategy_rows(&cutsets, &fp, n, opts)?,
            None => Vec::new(),
        };

        let evaluated_plan = opts
            .evaluate_plan
            .as_ref()
            .map(|tests| {
                evaluate_plan(&cutsets, tests, opts.alpha).map(|e| EvaluatedPlan {
                    q_upper_decimal: format_probability(e.bound.q_upper),
                    q_upper: e.bound.q_upper,
                    tests: e.tests,
                    total: e.total,
                    n_min: e.n_min,
                })
            })
            .transpose()?;

        let audit = if opts.audit {
            Some(self.audit(&cutsets, &fp, plan.as_ref())?)
        } else {
            None
        };

        let report = PlanReport {
            report_schema_version: REPORT_SCHEMA_VERSION,
            input: InputEcho {
                name: doc.name().map(str::to_string),
                structure_hash: structure_hash(&cutsets),
                components: names.to_vec(),
                alpha: opts.alpha,
                tests: opts.tests,
                solver: solver.name().to_string(),
            },
            minimal_cutsets: cutsets
                .rows()
                .iter()
                .map(|row| row.iter().map(|&j| label(j)).collect())
                .collect(),
            pathsets: PathsetSummary {
                count: pathsets.len(),
                shortest_path_length: comparison.path_length,
            },
            fractions: FractionSection {
                components: names
                    .iter()
                    .zip(&fp.fractions)
                    .map(|(name, f)| ComponentFraction {
                        component: name.clone(),
                        fraction: f.into(),
                    })
                    .collect(),
                cutset_fraction: (&fp.cutset_fraction).into(),
                n_zero: fp.n_zero,
                alternative_optima: fp.alternative_optima,
            },
            plan: plan.as_ref().map(plan_section),
            plan_plus: plan_plus.as_ref().map(plan_section),
            bound: bound.map(|b| BoundSection {
                alpha: b.alpha,
                n_min: b.n_min,
                q_upper: b.q_upper,
                q_upper_decimal: format_probability(b.q_upper),
            }),
            path_comparison: PathSection {
                path_length: comparison.path_length,
                shortest_path: comparison.shortest_path.iter().map(|&j| label(j)).collect(),
                cutset_fraction: ExactValue::from(&comparison.cutset_fraction),
                path_fraction: ExactValue::from(&comparison.path_fraction),
                gap: ExactValue::from(&comparison.gap),
                path_n_min: opts.tests.map(|n| comparison.path_n_min(n)),
            },
            strategies,
            evaluated_plan,
            audit,
            warnings,
        };

        Ok(Outcome {
            report,
            cache_status,
            notices,
        })
    }

    fn strategy_rows(
        &self,
        cutsets: &CutsetMatrix,
        fp: &FractionPlan,
        n: u64,
        opts: &Options,
    ) -> Result<Vec<StrategyRow>, CliError> {
        let ctx = PlanContext {
            cutsets,
            fractions: fp,
        };
        let exhaustive_fits = allocation_count(cutsets.num_components(), n)
            <= self.oracle.allocation_cap.into();
        let mut rows = Vec::new();
        for strategy in self.strategies.iter() {
            // the exhaustive search is opt-in through --audit
            if strategy.name() == "exhaustive" && !(opts.audit && exhaustive_fits) {
                continue;
            }
            let tests = strategy.allocate(&ctx, n)?;
            let n_min = cutsets.min_row_total(&tests);
            rows.push(StrategyRow {
                strategy: strategy.name().to_string(),
                allocated: tests.iter().sum(),
                q_upper: confidence_bound(n_min, opts.alpha)?.q_upper,
                tests,
                n_min,
            });
        }
        Ok(rows)
    }

    fn audit(
        &self,
        cutsets: &CutsetMatrix,
        fp: &FractionPlan,
        plan: Option<&IntegerPlan>,
    ) -> Result<AuditSection, CliError> {
        let lp = LpProblem::covering(cutsets);
        let size = lp.num_constraints() + lp.num_variables();
        let lp_vertices = if size > MAX_VERTEX_CONSTRAINTS {
            AuditCheck::Skipped {
                reason: format!("{size} constraints exceed the enumeration limit of {MAX_VERTEX_CONSTRAINTS}"),
            }
        } else {
            let v = enumerate_lp_vertices(&lp)?;
            let expected = fp.cutset_fraction.recip();
            if v.status != LpStatus::Optimal || v.objective != expected {
                return Err(CliError::AuditFailed(format!(
                    "vertex enumeration optimum {} differs from 1/g = {}",
                    to_fraction_string(&v.objective),
                    to_fraction_string(&expected)
                )));
            }
            AuditCheck::Agrees {
                detail: format!(
                    "optimum {} over {} candidate bases",
                    to_fraction_string(&v.objective),
                    v.vertices_checked
                ),
            }
        };

        let integer_oracle = match plan {
            None => AuditCheck::Skipped {
                reason: "no test budget given".into(),
            },
            Some(plan) => {
                let count = allocation_count(cutsets.num_components(), plan.n_minus);
                if count > self.oracle.allocation_cap.into() {
                    AuditCheck::Skipped {
                        reason: format!(
                            "{count} allocations of N- = {} exceed the cap of {}",
                            plan.n_minus, self.oracle.allocation_cap
                        ),
                    }
                } else {
                    let result = brute_force_plan(cutsets, plan.n_minus)?;
                    let planned = cutsets.min_row_total(
                        &integer_plan(cutsets, fp, plan.n_minus, RemainderPolicy::Unallocated)?.tests,
                    );
                    if result.best_n_min != planned {
                        return Err(CliError::AuditFailed(format!(
                            "exhaustive optimum at N- = {} is {}, plan achieves {planned}",
                            plan.n_minus, result.best_n_min
                        )));
                    }
                    AuditCheck::Agrees {
                        detail: format!(
                            "best N_min {} at N- = {} over {} allocations",
                            result.best_n_min, plan.n_minus, result.search_space
                        ),
                    }
                }
            }
        };

        Ok(AuditSection {
            lp_vertices,
            integer_oracle,
        })
    }
}

fn plan_section(plan: &IntegerPlan) -> PlanSection {
    PlanSection {
        tests: plan.tests.clone(),
        n_requested: plan.n_requested,
        n_minus: plan.n_minus,
        n_plus: plan.n_plus,
        remainder: plan.remainder,
        remainder_distributed: plan.remainder_distributed,
        allocated: plan.allocated(),
        n_min: plan.n_min,
    }
}
