//! Exhaustive reference computations, independent of the simplex and of the
//! fraction-based planner. Exponential by construction; only for small inputs.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::simplex::{dot, LpProblem, LpStatus};
use crate::structure::CutsetMatrix;

pub const DEFAULT_ALLOCATION_CAP: u64 = 50_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 32;
/// Largest `rows + columns` accepted by [`enumerate_lp_vertices`].
pub const MAX_VERTEX_CONSTRAINTS: usize = 18;

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub allocation_cap: u64,
    pub witness_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            allocation_cap: DEFAULT_ALLOCATION_CAP,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best_n_min: u64,
    /// Maximizing allocations in lexicographic order, capped.
    pub witness_plans: Vec<Vec<u64>>,
    /// Complete allocations evaluated after pruning.
    pub instances_searched: u64,
    /// Number of allocations in the unpruned space.
    pub search_space: u64,
}

/// Number of ways to split `n_total` tests over `m` components.
pub fn allocation_count(m: usize, n_total: u64) -> BigUint {
    // C(n + m - 1, m - 1)
    let k = m.saturating_sub(1) as u64;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n_total + i) / BigUint::from(i);
    }
    acc
}

pub fn brute_force_plan(cutsets: &CutsetMatrix, n_total: u64) -> Result<OracleResult> {
    brute_force_plan_with(cutsets, n_total, &OracleConfig::default())
}

/// Maximum least-tested-cutset total over every integer allocation of
/// `n_total` tests.
pub fn brute_force_plan_with(
    cutsets: &CutsetMatrix,
    n_total: u64,
    config: &OracleConfig,
) -> Result<OracleResult> {
    let m = cutsets.num_components();
    let count = allocation_count(m, n_total);
    let search_space = match count.to_u64() {
        Some(c) if c <= config.allocation_cap => c,
        _ => {
            return Err(Error::SearchSpaceTooLarge {
                count: count.to_string(),
                cap: config.allocation_cap,
            })
        }
    };

    let last_index: Vec<usize> = cutsets.rows().iter().map(|r| *r.last().unwrap()).collect();
    let mut search = Search {
        rows: cutsets.rows(),
        last_index,
        witness_cap: config.witness_cap,
        tests: vec![0; m],
        row_sums: vec![0; cutsets.num_cutsets()],
        best: None,
        witnesses: Vec::new(),
        evaluated: 0,
    };
    search.assign(0, n_total);

    Ok(OracleResult {
        best_n_min: search.best.unwrap_or(0),
        witness_plans: search.witnesses,
        instances_searched: search.evaluated,
        search_space,
    })
}

struct Search<'a> {
    rows: &'a [Vec<usize>],
    last_index: Vec<usize>,
    witness_cap: usize,
    tests: Vec<u64>,
    row_sums: Vec<u64>,
    best: Option<u64>,
    witnesses: Vec<Vec<u64>>,
    evaluated: u64,
}

impl Search<'_> {
    fn add(&mut self, component: usize, amount: u64, sign: bool) {
        for (i, row) in self.rows.iter().enumerate() {
            if row.binary_search(&component).is_ok() {
                if sign {
                    self.row_sums[i] += amount;
                } else {
                    self.row_sums[i] -= amount;
                }
            }
        }
    }

    /// Upper bound on any completion once components `< next` are fixed.
    fn bound(&self, next: usize, remaining: u64) -> u64 {
        self.row_sums
            .iter()
            .zip(&self.last_index)
            .map(|(&sum, &last)| if last >= next { sum + remaining } else { sum })
            .min()
            .unwrap_or(0)
    }

    fn assign(&mut self, component: usize, remaining: u64) {
        let m = self.tests.len();
        if let Some(best) = self.best {
            if self.bound(component, remaining) < best {
                return;
            }
        }
        if component + 1 == m {
            self.tests[component] = remaining;
            self.add(component, remaining, true);
            self.evaluate();
            self.add(component, remaining, false);
            self.tests[component] = 0;
            return;
        }
        for amount in 0..=remaining {
            self.tests[component] = amount;
            self.add(component, amount, true);
            self.assign(component + 1, remaining - amount);
            self.add(component, amount, false);
        }
        self.tests[component] = 0;
    }

    fn evaluate(&mut self) {
        self.evaluated += 1;
        let value = self.row_sums.iter().copied().min().unwrap_or(0);
        match self.best {
            Some(b) if value < b => {}
            Some(b) if value == b => {
                if self.witnesses.len() < self.witness_cap {
                    self.witnesses.push(self.tests.clone());
                }
            }
            _ => {
                self.best = Some(value);
                self.witnesses.clear();
                if self.witness_cap > 0 {
                    self.witnesses.push(self.tests.clone());
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOptimum {
    pub status: LpStatus,
    pub objective: Rational,
    /// First optimal vertex in enumeration order; empty unless optimal.
    pub point: Vec<Rational>,
    pub vertices_checked: u64,
}

/// Exact LP optimum by enumerating every basic solution: each choice of
/// `m` tight constraints among the rows and the nonnegativity bounds.
pub fn enumerate_lp_vertices(problem: &LpProblem) -> Result<VertexOptimum> {
    let m = problem.num_variables();
    let s = problem.num_constraints();
    if s + m > MAX_VERTEX_CONSTRAINTS {
        return Err(Error::TooManyConstraints {
            actual: s + m,
            max: MAX_VERTEX_CONSTRAINTS,
        });
    }

    let constraint = |k: usize| -> (Vec<Rational>, Rational) {
        if k < s {
            (problem.matrix()[k].clone(), problem.rhs()[k].clone())
        } else {
            let mut e = vec![Rational::zero(); m];
            e[k - s] = Rational::one();
            (e, Rational::zero())
        }
    };

    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut checked = 0u64;
    for_each_combination(s + m, m, |tight| {
        checked += 1;
        let (lhs, rhs): (Vec<_>, Vec<_>) = tight.iter().map(|&k| constraint(k)).unzip();
        let Some(x) = solve_square(lhs, rhs) else { return };
        if !problem.is_feasible(&x) {
            return;
        }
        let value = problem.objective_at(&x);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, x));
        }
    });

    let Some((objective, point)) = best else {
        return Ok(VertexOptimum {
            status: LpStatus::Infeasible,
            objective: Rational::zero(),
            point: Vec::new(),
            vertices_checked: checked,
        });
    };

    if has_improving_ray(problem) {
        return Ok(VertexOptimum {
            status: LpStatus::Unbounded,
            objective: Rational::zero(),
            point: Vec::new(),
            vertices_checked: checked,
        });
    }

    Ok(VertexOptimum {
        status: LpStatus::Optimal,
        objective,
        point,
        vertices_checked: checked,
    })
}

/// Whether some `d >= 0` with `A·d >= 0` has `c·d < 0`. Checked on the
/// vertices of the normalized recession cone `Σ d = 1`.
fn has_improving_ray(problem: &LpProblem) -> bool {
    let m = problem.num_variables();
    let s = problem.num_constraints();
    let constraint = |k: usize| -> Vec<Rational> {
        if k < s {
            problem.matrix()[k].clone()
        } else {
            let mut e = vec![Rational::zero(); m];
            e[k - s] = Rational::one();
            e
        }
    };
    let mut found = false;
    for_each_combination(s + m, m - 1, |tight| {
        if found {
            return;
        }
        let mut lhs: Vec<Vec<Rational>> = tight.iter().map(|&k| constraint(k)).collect();
        let mut rhs = vec![Rational::zero(); m - 1];
        lhs.push(vec![Rational::one(); m]);
        rhs.push(Rational::one());
        let Some(d) = solve_square(lhs, rhs) else { return };
        let is_ray = d.iter().all(|v| *v >= Rational::zero())
            && problem
                .matrix()
                .iter()
                .all(|row| dot(row, &d) >= Rational::zero());
        if is_ray && problem.objective_at(&d) < Rational::zero() {
            found = true;
        }
    });
    found
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Gauss-Jordan elimination; `None` when the system is singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        b[col] /= &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (v, pv) in a[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
            let pb = b[col].clone();
            b[r] -= &factor * pb;
        }
    }
    Some(b)
}
