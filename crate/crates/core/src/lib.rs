//! Optimal statistical test plans for coherent multi-component systems.
//!
//! Given the minimal cutsets of a system, the planner finds the split of a
//! test budget over components that maximizes the number of failure-free
//! tests seen by the least tested minimal cutset, then turns that count into
//! a conservative upper confidence bound on the system probability of failure
//! on demand.
//!
//! ```
//! use cutplan::{integer_plan, optimize_fractions, CutsetMatrix, RemainderPolicy};
//!
//! let y = CutsetMatrix::from_sets(5, vec![vec![0, 1], vec![1, 2], vec![0, 2, 3], vec![4]]).unwrap();
//! let fp = optimize_fractions(&y).unwrap();
//! assert_eq!(fp.n_zero, 5);
//! let plan = integer_plan(&y, &fp, 20003, RemainderPolicy::Unallocated).unwrap();
//! assert_eq!(plan.tests, vec![4000, 4000, 4000, 0, 8000]);
//! assert_eq!(plan.n_min, 8000);
//! ```

pub mod error;
pub mod oracle;
pub mod planner;
pub mod rational;
pub mod registry;
pub mod simplex;
pub mod solver;
pub mod strategy;
pub mod structure;

pub use error::{Error, ErrorKind, Result};
pub use oracle::{brute_force_plan, enumerate_lp_vertices, OracleConfig, OracleResult};
pub use planner::{
    confidence_bound, evaluate_plan, find_n_zero, integer_plan, optimize_fractions,
    optimize_fractions_with, shortest_path_check, BoundResult, FractionPlan, IntegerPlan,
    PathComparison, PlanEvaluation, RemainderPolicy,
};
pub use rational::Rational;
pub use registry::{Named, Registry};
pub use simplex::{solve_lp, LpProblem, LpSolution, LpStatus};
pub use solver::{default_solvers, LpSolver, SimplexSolver, SolverRegistry, VertexSolver};
pub use strategy::{default_strategies, AllocationStrategy, PlanContext, StrategyRegistry};
pub use structure::{
    minimal_cutsets, minimal_pathsets, shortest_path_length, CutsetMatrix, SystemStructure,
};
