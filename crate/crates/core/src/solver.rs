//! Named LP backends behind a common trait.

use crate::error::{Error, Result};
use crate::oracle::enumerate_lp_vertices;
use crate::registry::{Named, Registry};
use crate::simplex::{solve_lp, LpProblem, LpSolution, LpStatus};

/// An LP backend. Its name is recorded as cache provenance.
pub trait LpSolver: Named + Send + Sync {
    fn solve(&self, problem: &LpProblem) -> Result<LpSolution>;
}

/// Exact two-phase simplex with Bland's rule.
#[derive(Debug, Default, Clone, Copy)]
pub struct SimplexSolver;

impl Named for SimplexSolver {
    fn name(&self) -> &'static str {
        "simplex"
    }

    fn description(&self) -> &'static str {
        "exact two-phase simplex, Bland pivoting"
    }
}

impl LpSolver for SimplexSolver {
    fn solve(&self, problem: &LpProblem) -> Result<LpSolution> {
        Ok(solve_lp(problem))
    }
}

/// Exhaustive basic-solution enumeration of the primal and of its dual.
/// Limited to small problems.
#[derive(Debug, Default, Clone, Copy)]
pub struct VertexSolver;

impl Named for VertexSolver {
    fn name(&self) -> &'static str {
        "vertex-enumeration"
    }

    fn description(&self) -> &'static str {
        "exhaustive vertex enumeration (rows + columns <= 18)"
    }
}

impl LpSolver for VertexSolver {
    fn solve(&self, problem: &LpProblem) -> Result<LpSolution> {
        let primal = enumerate_lp_vertices(problem)?;
        match primal.status {
            LpStatus::Infeasible => return Ok(LpSolution::infeasible()),
            LpStatus::Unbounded => return Ok(LpSolution::unbounded()),
            LpStatus::Optimal => {}
        }
        let dual = enumerate_lp_vertices(&problem.dual())?;
        if dual.status != LpStatus::Optimal || -dual.objective.clone() != primal.objective {
            return Err(Error::Internal(
                "vertex enumeration found no matching dual optimum".into(),
            ));
        }
        Ok(LpSolution {
            status: LpStatus::Optimal,
            objective: primal.objective,
            variables: primal.point,
            duals: dual.point,
            alternative_optima: false,
        })
    }
}

pub type SolverRegistry = Registry<dyn LpSolver>;

pub const DEFAULT_SOLVER: &str = "simplex";

/// Registry holding every built-in LP backend.
pub fn default_solvers() -> SolverRegistry {
    let mut registry = Registry::new("solver");
    registry.register(Box::new(SimplexSolver) as Box<dyn LpSolver>);
    registry.register(Box::new(VertexSolver));
    registry
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::structure::CutsetMatrix;

    #[test]
    fn registry_lookup() {
        let registry = default_solvers();
        assert_eq!(registry.names(), vec!["simplex", "vertex-enumeration"]);
        assert_eq!(registry.get("simplex").unwrap().name(), "simplex");
        assert!(matches!(
            registry.get("interior-point"),
            Err(Error::UnknownStrategy { .. })
        ));
    }

    #[test]
    fn backends_agree_with_certificates() {
        let y = CutsetMatrix::from_sets(5, vec![vec![0, 1], vec![1, 2], vec![0, 2, 3], vec![4]])
            .unwrap();
        let lp = LpProblem::covering(&y);
        for solver in default_solvers().iter() {
            let sol = solver.solve(&lp).unwrap();
            assert_eq!(sol.objective, ratio(5, 2), "{}", solver.name());
            sol.verify_certificate(&lp).unwrap();
        }
    }
}
