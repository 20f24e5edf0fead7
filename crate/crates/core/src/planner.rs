//! Optimal test fractions, integer test plans and the confidence bound.
//!
//! The fraction plan comes from the covering LP
//! `minimize Σ h_j  s.t.  Y·h >= 1, h >= 0` with optimum `H`: the fractions
//! are `f = h / H` and every minimal cutset receives at least `g = 1 / H` of
//! the tests. Scaling `f` by any multiple of `N0` (the least common
//! denominator of `f`) yields an integer plan whose least tested cutset gets
//! exactly `g·N` tests.
//!
//! When the covering LP has several optimal vertices, the reported one is the
//! most balanced: a second LP maximizes the smallest share given to any
//! component that belongs to a minimal cutset, with the total held at `H`.
//! Symmetric structures therefore always receive an even split.

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{lcm_of_denominators, to_u64, Rational};
use crate::simplex::{LpProblem, LpSolution, LpStatus};
use crate::solver::{LpSolver, SimplexSolver};
use crate::structure::{minimal_pathsets, CutsetMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionPlan {
    /// Share of all tests given to each component; sums to one.
    pub fractions: Vec<Rational>,
    /// Share every minimal cutset receives at least (the optimum).
    pub cutset_fraction: Rational,
    /// Smallest total for which every `fractions[j] * total` is integral.
    pub n_zero: u64,
    /// Another optimal fraction vector is known to exist.
    pub alternative_optima: bool,
}

impl FractionPlan {
    /// Checks every invariant exactly against `cutsets`. Does not check optimality.
    pub fn validate(&self, cutsets: &CutsetMatrix) -> std::result::Result<(), String> {
        if self.fractions.len() != cutsets.num_components() {
            return Err(format!(
                "{} fractions for {} components",
                self.fractions.len(),
                cutsets.num_components()
            ));
        }
        if self.fractions.iter().any(|f| f.is_negative()) {
            return Err("negative fraction".into());
        }
        if self.fractions.iter().sum::<Rational>() != Rational::one() {
            return Err("fractions do not sum to one".into());
        }
        let totals = cutsets.row_totals(&self.fractions);
        if totals.iter().any(|t| *t < self.cutset_fraction) {
            return Err("a cutset receives less than the cutset fraction".into());
        }
        if !totals.contains(&self.cutset_fraction) {
            return Err("cutset fraction is not attained by any cutset".into());
        }
        if BigUint::from(self.n_zero) != find_n_zero(&self.fractions) {
            return Err(format!("N0 = {} is not the least common denominator", self.n_zero));
        }
        Ok(())
    }
}

/// Optimal fractions using the exact simplex backend.
pub fn optimize_fractions(cutsets: &CutsetMatrix) -> Result<FractionPlan> {
    optimize_fractions_with(cutsets, &SimplexSolver)
}

pub fn optimize_fractions_with(cutsets: &CutsetMatrix, solver: &dyn LpSolver) -> Result<FractionPlan> {
    let lp = LpProblem::covering(cutsets);
    let solution = solver.solve(&lp)?;
    // h = (1, ..., 1) is feasible and the objective is bounded below by zero
    if solution.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "covering LP reported {:?} from solver `{}`",
            solution.status,
            solver.name()
        )));
    }
    solution
        .verify_certificate(&lp)
        .map_err(|e| Error::Internal(format!("optimality certificate rejected: {e}")))?;

    let total = solution.objective.clone();
    if !total.is_positive() {
        return Err(Error::Internal("covering LP optimum is not positive".into()));
    }
    let balanced = balanced_optimum(cutsets, solver, &total)?;
    let moved = balanced != solution.variables;
    // the original multipliers still certify the balanced point
    let certified = LpSolution {
        variables: balanced,
        ..solution
    };
    certified
        .verify_certificate(&lp)
        .map_err(|e| Error::Internal(format!("balanced optimum rejected: {e}")))?;
    let fractions: Vec<Rational> = certified.variables.iter().map(|h| h / &total).collect();
    let cutset_fraction = total.recip();
    let n_zero_big = find_n_zero(&fractions);
    let n_zero = n_zero_big
        .to_u64()
        .ok_or_else(|| Error::NZeroOverflow(n_zero_big.to_string()))?;

    let plan = FractionPlan {
        fractions,
        cutset_fraction,
        n_zero,
        alternative_optima: certified.alternative_optima || moved,
    };
    plan.validate(cutsets)
        .map_err(|e| Error::Internal(format!("fraction plan invariant: {e}")))?;
    Ok(plan)
}

/// Among covering solutions with `Σ h = total`, one maximizing the least `h_j`
/// over components that appear in some cutset.
fn balanced_optimum(cutsets: &CutsetMatrix, solver: &dyn LpSolver, total: &Rational) -> Result<Vec<Rational>> {
    let m = cutsets.num_components();
    let irrelevant = cutsets.irrelevant_components();
    // variables: h_0 .. h_{m-1}, then the floor t; maximize t
    let mut cost = vec![Rational::zero(); m + 1];
    cost[m] = -Rational::one();
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for row in cutsets.incidence() {
        let mut r: Vec<Rational> = row.into_iter().map(|b| Rational::from_integer(b.into())).collect();
        r.push(Rational::zero());
        matrix.push(r);
        rhs.push(Rational::one());
    }
    let mut budget = vec![-Rational::one(); m];
    budget.push(Rational::zero());
    matrix.push(budget);
    rhs.push(-total.clone());
    for j in (0..m).filter(|j| !irrelevant.contains(j)) {
        let mut r = vec![Rational::zero(); m + 1];
        r[j] = Rational::one();
        r[m] = -Rational::one();
        matrix.push(r);
        rhs.push(Rational::zero());
    }
    let lp = LpProblem::new(cost, matrix, rhs)?;
    let solution = solver.solve(&lp)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "balancing LP reported {:?} from solver `{}`",
            solution.status,
            solver.name()
        )));
    }
    let mut h = solution.variables;
    h.truncate(m);
    Ok(h)
}

/// Least positive integer `k` with every `k * f_j` integral: the lcm of the
/// denominators.
pub fn find_n_zero(fractions: &[Rational]) -> BigUint {
    lcm_of_denominators(fractions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RemainderPolicy {
    /// `N mod N0` tests stay unallocated.
    #[default]
    Unallocated,
    /// Hand out the remainder one test at a time to components with a
    /// nonzero fraction, in index order.
    RoundRobin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPlan {
    /// Tests per component.
    pub tests: Vec<u64>,
    pub n_requested: u64,
    /// Largest multiple of N0 not above the request.
    pub n_minus: u64,
    /// Next multiple of N0 above `n_minus`.
    pub n_plus: u64,
    /// Tests on the least tested minimal cutset of the emitted plan.
    pub n_min: u64,
    /// `n_requested mod N0`.
    pub remainder: u64,
    pub remainder_distributed: bool,
}

impl IntegerPlan {
    pub fn allocated(&self) -> u64 {
        self.tests.iter().sum()
    }
}

/// Scales the optimal fractions to the largest multiple of N0 within the budget.
pub fn integer_plan(
    cutsets: &CutsetMatrix,
    fp: &FractionPlan,
    n_requested: u64,
    policy: RemainderPolicy,
) -> Result<IntegerPlan> {
    if fp.n_zero == 0 {
        return Err(Error::Internal("N0 must be positive".into()));
    }
    if n_requested < fp.n_zero {
        return Err(Error::BudgetTooSmall {
            requested: n_requested,
            n_zero: fp.n_zero,
        });
    }
    let remainder = n_requested % fp.n_zero;
    let n_minus = n_requested - remainder;
    let n_plus = n_minus
        .checked_add(fp.n_zero)
        .ok_or_else(|| Error::InvalidPlan("N+ overflows a 64-bit integer".into()))?;

    let scale = Rational::from_integer(n_minus.into());
    let mut tests = fp
        .fractions
        .iter()
        .map(|f| {
            to_u64(&(f * &scale))
                .ok_or_else(|| Error::Internal(format!("f * N- is not a nonnegative integer for f = {f}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    if tests.iter().sum::<u64>() != n_minus {
        return Err(Error::Internal("scaled plan does not sum to N-".into()));
    }

    let expected = &fp.cutset_fraction * &scale;
    let base_n_min = cutsets.min_row_total(&tests);
    if Rational::from_integer(base_n_min.into()) != expected {
        return Err(Error::Internal(format!(
            "least tested cutset has {base_n_min} tests, expected g * N- = {expected}"
        )));
    }

    let remainder_distributed = policy == RemainderPolicy::RoundRobin && remainder > 0;
    if remainder_distributed {
        let targets: Vec<usize> = (0..tests.len()).filter(|&j| !fp.fractions[j].is_zero()).collect();
        for k in 0..remainder as usize {
            tests[targets[k % targets.len()]] += 1;
        }
    }

    Ok(IntegerPlan {
        n_min: cutsets.min_row_total(&tests),
        tests,
        n_requested,
        n_minus,
        n_plus,
        remainder,
        remainder_distributed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub alpha: f64,
    pub n_min: u64,
    /// Upper confidence bound on the system probability of failure on demand.
    pub q_upper: f64,
}

/// `min(ln(1/alpha) / n_min, 1)`, and 1 when no cutset was tested.
pub fn confidence_bound(n_min: u64, alpha: f64) -> Result<BoundResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let q_upper = if n_min == 0 {
        1.0
    } else {
        (-alpha.ln() / n_min as f64).min(1.0)
    };
    Ok(BoundResult {
        alpha,
        n_min,
        q_upper,
    })
}

/// Comparison against testing only the components of one shortest success
/// path, which guarantees each cutset `N / P` tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathComparison {
    /// Length of the shortest minimal pathset.
    pub path_length: usize,
    /// First shortest pathset in canonical order.
    pub shortest_path: Vec<usize>,
    pub cutset_fraction: Rational,
    pub path_fraction: Rational,
    /// `cutset_fraction - path_fraction`, never negative.
    pub gap: Rational,
}

impl PathComparison {
    /// `floor(n_total / P)`: the least tested cutset under the path strategy.
    pub fn path_n_min(&self, n_total: u64) -> u64 {
        n_total / self.path_length as u64
    }

    /// Splits `floor(n_total / P)` tests onto each component of the path.
    pub fn path_plan(&self, components: usize, n_total: u64) -> Vec<u64> {
        let mut tests = vec![0; components];
        for &j in &self.shortest_path {
            tests[j] = self.path_n_min(n_total);
        }
        tests
    }
}

pub fn shortest_path_check(fp: &FractionPlan, cutsets: &CutsetMatrix) -> Result<PathComparison> {
    let paths = minimal_pathsets(cutsets);
    let shortest = paths
        .iter()
        .min_by_key(|p| p.len())
        .cloned()
        .ok_or_else(|| Error::Internal("no minimal pathset".into()))?;
    let path_length = shortest.len();
    let path_fraction = Rational::new(1.into(), (path_length as i64).into());
    if fp.cutset_fraction < path_fraction {
        return Err(Error::Internal(format!(
            "cutset fraction {} is below 1/P = {}",
            fp.cutset_fraction, path_fraction
        )));
    }
    Ok(PathComparison {
        path_length,
        shortest_path: shortest,
        gap: &fp.cutset_fraction - &path_fraction,
        cutset_fraction: fp.cutset_fraction.clone(),
        path_fraction,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanEvaluation {
    pub tests: Vec<u64>,
    pub total: u64,
    pub n_min: u64,
    pub bound: BoundResult,
}

/// Least tested cutset and confidence bound for an arbitrary plan.
pub fn evaluate_plan(cutsets: &CutsetMatrix, tests: &[u64], alpha: f64) -> Result<PlanEvaluation> {
    if tests.len() != cutsets.num_components() {
        return Err(Error::InvalidPlan(format!(
            "plan has {} entries for {} components",
            tests.len(),
            cutsets.num_components()
        )));
    }
    let total = tests
        .iter()
        .try_fold(0u64, |acc, &t| acc.checked_add(t))
        .ok_or_else(|| Error::InvalidPlan("plan total overflows".into()))?;
    let n_min = cutsets.min_row_total(tests);
    Ok(PlanEvaluation {
        tests: tests.to_vec(),
        total,
        n_min,
        bound: confidence_bound(n_min, alpha)?,
    })
}
