use cutplan::rational::int;
use cutplan::{enumerate_lp_vertices, solve_lp, LpProblem, LpStatus, Rational};
use proptest::prelude::*;

fn lp(cost: Vec<i64>, rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> LpProblem {
    LpProblem::new(
        cost.into_iter().map(int).collect(),
        rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect(),
        rhs.into_iter().map(int).collect(),
    )
    .unwrap()
}

fn general_lp() -> impl Strategy<Value = LpProblem> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(s, m)| {
        (
            prop::collection::vec(-2i64..=4, m),
            prop::collection::vec(prop::collection::vec(-2i64..=3, m), s),
            prop::collection::vec(-2i64..=3, s),
        )
            .prop_map(|(c, a, b)| lp(c, a, b))
    })
}

fn covering_lp() -> impl Strategy<Value = LpProblem> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(s, m)| {
        prop::collection::vec(prop::collection::vec(0i64..=1, m), s)
            .prop_map(move |a| lp(vec![1; m], a, vec![1; s]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn simplex_matches_vertex_enumeration(problem in general_lp()) {
        let sol = solve_lp(&problem);
        let reference = enumerate_lp_vertices(&problem).unwrap();
        prop_assert_eq!(sol.status, reference.status);
        if sol.status == LpStatus::Optimal {
            prop_assert_eq!(&sol.objective, &reference.objective);
            prop_assert!(sol.verify_certificate(&problem).is_ok());
        }
    }

    #[test]
    fn covering_lps_are_solved_with_certificates(problem in covering_lp()) {
        let sol = solve_lp(&problem);
        let reference = enumerate_lp_vertices(&problem).unwrap();
        prop_assert_eq!(sol.status, reference.status);
        if sol.status == LpStatus::Optimal {
            prop_assert_eq!(&sol.objective, &reference.objective);
            prop_assert!(sol.verify_certificate(&problem).is_ok());
            prop_assert_eq!(solve_lp(&problem), sol);
        }
    }
}

#[test]
fn fractional_data_is_exact() {
    // minimize x + y s.t. (1/3) x + (1/7) y >= 1, (1/2) x + 3 y >= 2
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let problem = LpProblem::new(
        vec![int(1), int(1)],
        vec![vec![r(1, 3), r(1, 7)], vec![r(1, 2), int(3)]],
        vec![int(1), int(2)],
    )
    .unwrap();
    let sol = solve_lp(&problem);
    let reference = enumerate_lp_vertices(&problem).unwrap();
    assert_eq!(sol.objective, reference.objective);
    sol.verify_certificate(&problem).unwrap();
}
