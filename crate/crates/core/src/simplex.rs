//! Exact two-phase simplex for `minimize c·x subject to A·x >= b, x >= 0`.
//!
//! Every quantity is a [`Rational`]; there are no tolerances. Pivoting uses
//! Bland's rule (smallest entering index, ties in the ratio test broken by the
//! smallest basic index), so the method terminates and a given problem always
//! yields the same basic solution.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::structure::CutsetMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    cost: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LpProblem {
    pub fn new(cost: Vec<Rational>, matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        if cost.is_empty() {
            return Err(Error::InvalidProblem("at least one variable is required".into()));
        }
        if matrix.is_empty() {
            return Err(Error::InvalidProblem("at least one constraint is required".into()));
        }
        if matrix.len() != rhs.len() {
            return Err(Error::InvalidProblem(format!(
                "{} constraint rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some(i) = matrix.iter().position(|row| row.len() != cost.len()) {
            return Err(Error::InvalidProblem(format!(
                "row {i} has {} coefficients, expected {}",
                matrix[i].len(),
                cost.len()
            )));
        }
        Ok(Self { cost, matrix, rhs })
    }

    /// Covering LP over the cutset incidence matrix: minimize `Σ h_j` subject
    /// to every cutset total being at least one.
    pub fn covering(cutsets: &CutsetMatrix) -> Self {
        let matrix = cutsets
            .incidence()
            .into_iter()
            .map(|row| row.into_iter().map(|b| Rational::from_integer(b.into())).collect())
            .collect();
        Self {
            cost: vec![Rational::one(); cutsets.num_components()],
            matrix,
            rhs: vec![Rational::one(); cutsets.num_cutsets()],
        }
    }

    pub fn num_variables(&self) -> usize {
        self.cost.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.matrix.len()
    }

    pub fn cost(&self) -> &[Rational] {
        &self.cost
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.cost, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_variables()
            && x.iter().all(|v| !v.is_negative())
            && self
                .matrix
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| dot(row, x) >= *b)
    }

    /// The dual `maximize b·y s.t. Aᵀy <= c, y >= 0`, restated in this
    /// type's form as `minimize -b·y s.t. -Aᵀy >= -c, y >= 0`.
    pub fn dual(&self) -> LpProblem {
        let (s, m) = (self.num_constraints(), self.num_variables());
        let matrix = (0..m)
            .map(|j| (0..s).map(|i| -self.matrix[i][j].clone()).collect())
            .collect();
        LpProblem {
            cost: self.rhs.iter().map(|b| -b.clone()).collect(),
            matrix,
            rhs: self.cost.iter().map(|c| -c.clone()).collect(),
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. `variables` and `duals` are empty unless the status is
/// optimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: Rational,
    pub variables: Vec<Rational>,
    /// One multiplier per constraint row, proving optimality.
    pub duals: Vec<Rational>,
    /// Set when an optimal solution with different variable values is known to exist.
    pub alternative_optima: bool,
}

impl LpSolution {
    pub fn infeasible() -> Self {
        Self::non_optimal(LpStatus::Infeasible)
    }

    pub fn unbounded() -> Self {
        Self::non_optimal(LpStatus::Unbounded)
    }

    fn non_optimal(status: LpStatus) -> Self {
        Self {
            status,
            objective: Rational::zero(),
            variables: Vec::new(),
            duals: Vec::new(),
            alternative_optima: false,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Checks primal feasibility, dual feasibility and equality of the two
    /// objectives, all exactly.
    pub fn verify_certificate(&self, problem: &LpProblem) -> std::result::Result<(), String> {
        if !self.is_optimal() {
            return Err(format!("status is {:?}", self.status));
        }
        if !problem.is_feasible(&self.variables) {
            return Err("primal solution violates a constraint".into());
        }
        if problem.objective_at(&self.variables) != self.objective {
            return Err("reported objective differs from c·x".into());
        }
        if self.duals.len() != problem.num_constraints() {
            return Err("dual vector has the wrong length".into());
        }
        if self.duals.iter().any(|y| y.is_negative()) {
            return Err("negative dual multiplier".into());
        }
        for j in 0..problem.num_variables() {
            let lhs: Rational = (0..problem.num_constraints())
                .map(|i| &self.duals[i] * &problem.matrix[i][j])
                .sum();
            if lhs > problem.cost[j] {
                return Err(format!("dual constraint for variable {j} violated"));
            }
        }
        if dot(&self.duals, &problem.rhs) != self.objective {
            return Err("dual objective differs from primal objective".into());
        }
        Ok(())
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn price(&mut self, cost: &[Rational]) {
        let ncols = cost.len();
        self.reduced = cost.to_vec();
        self.value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if !self.rows[i][j].is_zero() {
                    self.reduced[j] -= cb * &self.rows[i][j];
                }
            }
            self.value += cb * &self.rhs[i];
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[c].clone();
        if !factor.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.value += &factor * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Row leaving the basis if column `c` enters, by the minimum ratio test
    /// with Bland's tie-break. `None` means the column is an unbounded ray.
    fn leaving_row(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            best = match best {
                None => Some((i, ratio)),
                Some((k, r)) => {
                    if ratio < r || (ratio == r && self.basis[i] < self.basis[k]) {
                        Some((i, ratio))
                    } else {
                        Some((k, r))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self, columns: usize) -> Outcome {
        loop {
            let Some(c) = (0..columns).find(|&j| self.reduced[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let Some(r) = self.leaving_row(c) else {
                return Outcome::Unbounded;
            };
            self.pivot(r, c);
        }
    }
}

/// Solves the problem exactly. Infeasibility and unboundedness are reported
/// through [`LpSolution::status`].
pub fn solve_lp(problem: &LpProblem) -> LpSolution {
    let m = problem.num_variables();
    let s = problem.num_constraints();

    // Row i becomes sign_i * (A_i x - slack_i) = sign_i * b_i with a
    // nonnegative right-hand side. Rows with b_i > 0 start on an artificial
    // variable, the rest on their slack.
    let needs_artificial: Vec<bool> = problem.rhs.iter().map(|b| b.is_positive()).collect();
    let artificial_count = needs_artificial.iter().filter(|&&a| a).count();
    let real = m + s;
    let ncols = real + artificial_count;

    let mut rows = Vec::with_capacity(s);
    let mut rhs = Vec::with_capacity(s);
    let mut basis = Vec::with_capacity(s);
    let mut next_artificial = real;
    for i in 0..s {
        let mut row = vec![Rational::zero(); ncols];
        if needs_artificial[i] {
            row[..m].clone_from_slice(&problem.matrix[i]);
            row[m + i] = -Rational::one();
            row[next_artificial] = Rational::one();
            basis.push(next_artificial);
            next_artificial += 1;
            rhs.push(problem.rhs[i].clone());
        } else {
            for (cell, a) in row.iter_mut().zip(&problem.matrix[i]) {
                *cell = -a.clone();
            }
            row[m + i] = Rational::one();
            basis.push(m + i);
            rhs.push(-problem.rhs[i].clone());
        }
        rows.push(row);
    }

    let mut tableau = Tableau {
        rows,
        rhs,
        basis,
        reduced: Vec::new(),
        value: Rational::zero(),
    };

    if artificial_count > 0 {
        let mut phase_one_cost = vec![Rational::zero(); ncols];
        for c in phase_one_cost.iter_mut().skip(real) {
            *c = Rational::one();
        }
        tableau.price(&phase_one_cost);
        // phase one is bounded below by zero
        let _ = tableau.run(ncols);
        if tableau.value.is_positive() {
            return LpSolution::infeasible();
        }
        // Remaining artificials sit at zero; pivot them out or drop redundant rows.
        let mut i = 0;
        while i < tableau.rows.len() {
            if tableau.basis[i] >= real {
                match (0..real).find(|&j| !tableau.rows[i][j].is_zero()) {
                    Some(j) => {
                        tableau.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tableau.rows.remove(i);
                        tableau.rhs.remove(i);
                        tableau.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    cost[..m].clone_from_slice(&problem.cost);
    tableau.price(&cost);
    if let Outcome::Unbounded = tableau.run(real) {
        return LpSolution::unbounded();
    }

    let mut values = vec![Rational::zero(); real];
    for (i, &b) in tableau.basis.iter().enumerate() {
        values[b] = tableau.rhs[i].clone();
    }
    let variables: Vec<Rational> = values[..m].to_vec();
    // reduced cost of slack i is the multiplier of the original row i
    let duals: Vec<Rational> = (0..s).map(|i| tableau.reduced[m + i].clone()).collect();
    let alternative_optima = has_alternative_optimum(&tableau, real);

    LpSolution {
        status: LpStatus::Optimal,
        objective: problem.objective_at(&variables),
        variables,
        duals,
        alternative_optima,
    }
}

/// A nonbasic column with zero reduced cost that can enter with a positive
/// step (or without limit) leads to a different optimal point. Degenerate
/// zero steps are inconclusive and not reported.
fn has_alternative_optimum(tableau: &Tableau, columns: usize) -> bool {
    (0..columns)
        .filter(|j| !tableau.basis.contains(j))
        .filter(|&j| tableau.reduced[j].is_zero())
        .any(|j| match tableau.leaving_row(j) {
            None => true,
            Some(r) => tableau.rhs[r].is_positive(),
        })
}
