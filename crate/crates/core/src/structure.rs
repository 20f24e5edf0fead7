//! System fault-tolerance structure, minimal cutsets and minimal pathsets.
//!
//! Component state vectors use `true` for a failed component. A structure is
//! coherent: failing more components never repairs the system.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest component count accepted for explicit truth tables.
pub const MAX_TRUTH_TABLE_COMPONENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    /// `failed[state]` where bit `j` of `state` is set iff component `j` failed.
    TruthTable(Vec<bool>),
    /// The system fails iff every component of some listed set failed.
    Cutsets(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemStructure {
    names: Vec<String>,
    definition: Definition,
}

impl SystemStructure {
    pub fn from_cutsets(names: Vec<String>, cutsets: Vec<Vec<usize>>) -> Result<Self> {
        check_names(&names)?;
        for set in &cutsets {
            if let Some(&j) = set.iter().find(|&&j| j >= names.len()) {
                return Err(Error::InvalidStructure(format!(
                    "cutset refers to component index {j} but only {} components exist",
                    names.len()
                )));
            }
        }
        Ok(Self {
            names,
            definition: Definition::Cutsets(cutsets),
        })
    }

    /// Builds a structure from cutsets given by component label.
    pub fn from_named_cutsets<S: AsRef<str>>(names: &[S], cutsets: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let sets = cutsets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|label| {
                        let label = label.as_ref();
                        names.iter().position(|n| n == label).ok_or_else(|| {
                            Error::InvalidStructure(format!("unknown component `{label}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cutsets(names, sets)
    }

    pub fn from_truth_table(names: Vec<String>, failed: Vec<bool>) -> Result<Self> {
        check_names(&names)?;
        let m = names.len();
        if m > MAX_TRUTH_TABLE_COMPONENTS {
            return Err(Error::TruthTableTooLarge {
                components: m,
                max: MAX_TRUTH_TABLE_COMPONENTS,
            });
        }
        if failed.len() != 1usize << m {
            return Err(Error::InvalidStructure(format!(
                "truth table for {m} components needs {} states, got {}",
                1usize << m,
                failed.len()
            )));
        }
        Ok(Self {
            names,
            definition: Definition::TruthTable(failed),
        })
    }

    /// Tabulates `phi` over every state; `phi` receives failure indicators.
    pub fn from_function(names: Vec<String>, phi: impl Fn(&[bool]) -> bool) -> Result<Self> {
        let m = names.len();
        if m > MAX_TRUTH_TABLE_COMPONENTS {
            return Err(Error::TruthTableTooLarge {
                components: m,
                max: MAX_TRUTH_TABLE_COMPONENTS,
            });
        }
        let table = (0..1usize << m)
            .map(|state| phi(&state_bits(state, m)))
            .collect();
        Self::from_truth_table(names, table)
    }

    pub fn component_names(&self) -> &[String] {
        &self.names
    }

    pub fn num_components(&self) -> usize {
        self.names.len()
    }

    pub fn definition(&self) -> &Definition {
        &self.definition
    }

    /// Evaluates the structure function for a failure vector.
    pub fn is_failed(&self, state: &[bool]) -> bool {
        match &self.definition {
            Definition::TruthTable(t) => t[state_index(state)],
            Definition::Cutsets(sets) => sets.iter().any(|s| s.iter().all(|&j| state[j])),
        }
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::InvalidStructure("at least one component is required".into()));
    }
    let mut seen = HashSet::new();
    for n in names {
        if n.is_empty() {
            return Err(Error::InvalidStructure("component labels must be nonempty".into()));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidStructure(format!("duplicate component label `{n}`")));
        }
    }
    Ok(())
}

fn state_bits(state: usize, m: usize) -> Vec<bool> {
    (0..m).map(|j| state >> j & 1 == 1).collect()
}

fn state_index(state: &[bool]) -> usize {
    state
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &x)| if x { acc | 1 << j } else { acc })
}

/// Renders a state as a bit string, component 1 first.
pub fn state_string(state: usize, m: usize) -> String {
    (0..m)
        .map(|j| if state >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Incidence matrix of the minimal cutsets: one row per cutset, as a sorted
/// list of component indices. Rows are distinct, nonempty, pairwise
/// incomparable and in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutsetMatrix {
    components: usize,
    rows: Vec<Vec<usize>>,
}

impl CutsetMatrix {
    /// Validates an already minimal family. Row order and order inside rows
    /// may be arbitrary; the result is canonical.
    pub fn new(components: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if components == 0 {
            return Err(Error::InvalidStructure("at least one component is required".into()));
        }
        if rows.is_empty() {
            return Err(Error::DegenerateStructure { always_failed: false });
        }
        let mut canonical = Vec::with_capacity(rows.len());
        for mut row in rows {
            row.sort_unstable();
            row.dedup();
            if row.is_empty() {
                return Err(Error::DegenerateStructure { always_failed: true });
            }
            if let Some(&j) = row.last().filter(|&&j| j >= components) {
                return Err(Error::InvalidStructure(format!(
                    "cutset refers to component index {j} but only {components} components exist"
                )));
            }
            canonical.push(row);
        }
        canonical.sort();
        for (a, b) in canonical.iter().zip(canonical.iter().skip(1)) {
            if a == b {
                return Err(Error::InvalidStructure(format!("duplicate cutset {a:?}")));
            }
        }
        for (i, a) in canonical.iter().enumerate() {
            for (k, b) in canonical.iter().enumerate() {
                if i != k && is_subset(a, b) {
                    return Err(Error::InvalidStructure(format!(
                        "cutset {b:?} is not minimal (contains {a:?})"
                    )));
                }
            }
        }
        Ok(Self {
            components,
            rows: canonical,
        })
    }

    /// Removes duplicates and non-minimal sets before validating.
    pub fn from_sets(components: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.iter().any(|s| s.is_empty()) {
            return Err(Error::DegenerateStructure { always_failed: true });
        }
        Self::new(components, minimize_family(sets))
    }

    /// Series system: any single failure fails the system.
    pub fn series(m: usize) -> Result<Self> {
        Self::new(m, (0..m).map(|j| vec![j]).collect())
    }

    /// The system fails as soon as any `k` of its `n` components fail.
    pub fn k_failures_of_n(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidStructure(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        Self::new(n, k_subsets(n, k))
    }

    /// The system works while at least `k` of its `n` components work
    /// (`2oo3` voting is `k_good_of_n(2, 3)`).
    pub fn k_good_of_n(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidStructure(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        Self::k_failures_of_n(n - k + 1, n)
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    pub fn num_cutsets(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn contains(&self, row: usize, component: usize) -> bool {
        self.rows[row].binary_search(&component).is_ok()
    }

    /// Dense 0/1 rows.
    pub fn incidence(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0u8; self.components];
                for &j in row {
                    dense[j] = 1;
                }
                dense
            })
            .collect()
    }

    /// Components that belong to no minimal cutset.
    pub fn irrelevant_components(&self) -> Vec<usize> {
        let mut used = vec![false; self.components];
        for row in &self.rows {
            for &j in row {
                used[j] = true;
            }
        }
        (0..self.components).filter(|&j| !used[j]).collect()
    }

    pub fn is_failed(&self, state: &[bool]) -> bool {
        self.rows.iter().any(|row| row.iter().all(|&j| state[j]))
    }

    /// Total of `values` over each cutset.
    pub fn row_totals<T>(&self, values: &[T]) -> Vec<T>
    where
        T: Clone + std::iter::Sum<T>,
    {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&j| values[j].clone()).sum())
            .collect()
    }

    /// Smallest per-cutset total of `tests` (the least tested cutset).
    pub fn min_row_total(&self, tests: &[u64]) -> u64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&j| tests[j]).sum::<u64>())
            .min()
            .unwrap_or(0)
    }

    /// Canonical text: component count, then one 0/1 line per row.
    pub fn canonical_text(&self) -> String {
        let mut out = format!("components {}\n", self.components);
        for row in self.incidence() {
            out.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CutsetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.incidence() {
            let line: Vec<String> = row.iter().map(|b| b.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `a ⊆ b` for sorted index lists.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut k) = (0, 0);
    while i < a.len() && k < b.len() {
        match a[i].cmp(&b[k]) {
            std::cmp::Ordering::Equal => return true,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
        }
    }
    false
}

/// Sorts each set, drops duplicates and supersets, returns canonical order.
fn minimize_family(sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    // shorter sets first so that every kept set is checked against all its subsets
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| is_subset(k, &s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Inclusion-minimal failure states of a coherent structure.
pub fn minimal_cutsets(structure: &SystemStructure) -> Result<CutsetMatrix> {
    let m = structure.num_components();
    match structure.definition() {
        Definition::Cutsets(sets) => CutsetMatrix::from_sets(m, sets.clone()),
        Definition::TruthTable(table) => {
            check_coherence(table, m)?;
            let mut rows = Vec::new();
            for (state, &failed) in table.iter().enumerate() {
                if !failed {
                    continue;
                }
                let minimal = (0..m)
                    .filter(|&j| state >> j & 1 == 1)
                    .all(|j| !table[state & !(1 << j)]);
                if minimal {
                    rows.push((0..m).filter(|&j| state >> j & 1 == 1).collect());
                }
            }
            CutsetMatrix::new(m, rows)
        }
    }
}

fn check_coherence(table: &[bool], m: usize) -> Result<()> {
    if table.iter().all(|&b| b) {
        return Err(Error::DegenerateStructure { always_failed: true });
    }
    if table.iter().all(|&b| !b) {
        return Err(Error::DegenerateStructure { always_failed: false });
    }
    for (state, &failed) in table.iter().enumerate() {
        if !failed {
            continue;
        }
        for j in 0..m {
            let up = state | 1 << j;
            if up != state && !table[up] {
                return Err(Error::NonCoherentStructure {
                    lower: state_string(state, m),
                    upper: state_string(up, m),
                });
            }
        }
    }
    // coherent and not constant implies phi(0) = 0 and phi(1) = 1
    Ok(())
}

/// Minimal sets of components that intersect every minimal cutset: the
/// minimal success paths. Canonical (lexicographic) order.
pub fn minimal_pathsets(cutsets: &CutsetMatrix) -> Vec<Vec<usize>> {
    minimal_hitting_sets(cutsets.rows())
}

/// Incremental (Berge) dualization: the family of minimal transversals is
/// refined one row at a time and re-minimized after each step.
pub fn minimal_hitting_sets(family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut transversals: Vec<Vec<usize>> = vec![Vec::new()];
    for row in family {
        let mut next = Vec::new();
        for t in &transversals {
            if intersects(t, row) {
                next.push(t.clone());
            } else {
                for &j in row {
                    let mut ext = t.clone();
                    let pos = ext.binary_search(&j).unwrap_err();
                    ext.insert(pos, j);
                    next.push(ext);
                }
            }
        }
        transversals = minimize_family(next);
    }
    transversals
}

/// Size of the smallest minimal pathset.
pub fn shortest_path_length(cutsets: &CutsetMatrix) -> usize {
    minimal_pathsets(cutsets)
        .iter()
        .map(Vec::len)
        .min()
        .expect("a valid cutset matrix always has a pathset")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(m: usize) -> Vec<String> {
        (1..=m).map(|j| format!("C{j}")).collect()
    }

    fn two_of_three_table() -> SystemStructure {
        SystemStructure::from_function(names(3), |x| x.iter().filter(|&&b| b).count() >= 2).unwrap()
    }

    pub(crate) fn five_component() -> CutsetMatrix {
        CutsetMatrix::from_sets(5, vec![vec![0, 1], vec![1, 2], vec![0, 2, 3], vec![4]]).unwrap()
    }

    #[test]
    fn two_of_three_truth_table() {
        let y = minimal_cutsets(&two_of_three_table()).unwrap();
        assert_eq!(y.rows(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn five_component_cutset_list() {
        let s = SystemStructure::from_named_cutsets(
            &["C1", "C2", "C3", "C4", "C5"],
            &[
                vec!["C1", "C2"],
                vec!["C2", "C3"],
                vec!["C1", "C3", "C4"],
                vec!["C5"],
            ],
        )
        .unwrap();
        let y = minimal_cutsets(&s).unwrap();
        assert_eq!(y.rows(), &[vec![0, 1], vec![0, 2, 3], vec![1, 2], vec![4]]);
        assert_eq!(y.num_cutsets(), 4);
        assert!(y.irrelevant_components().is_empty());
    }

    #[test]
    fn series_truth_table() {
        let s = SystemStructure::from_function(names(2), |x| x[0] || x[1]).unwrap();
        let y = minimal_cutsets(&s).unwrap();
        assert_eq!(y.rows(), &[vec![0], vec![1]]);
    }

    #[test]
    fn non_minimal_input_is_reduced() {
        let s = SystemStructure::from_cutsets(names(2), vec![vec![0], vec![0, 1], vec![0]]).unwrap();
        let y = minimal_cutsets(&s).unwrap();
        assert_eq!(y.rows(), &[vec![0]]);
        assert_eq!(y.irrelevant_components(), vec![1]);
    }

    #[test]
    fn non_coherent_table_is_rejected_with_witness() {
        // fails only when exactly component 1 is down
        let s = SystemStructure::from_function(names(2), |x| x[0] && !x[1]).unwrap();
        match minimal_cutsets(&s) {
            Err(Error::NonCoherentStructure { lower, upper }) => {
                assert_eq!(lower, "10");
                assert_eq!(upper, "11");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_structures() {
        let never = SystemStructure::from_function(names(2), |_| false).unwrap();
        assert_eq!(
            minimal_cutsets(&never),
            Err(Error::DegenerateStructure { always_failed: false })
        );
        let always = SystemStructure::from_function(names(2), |_| true).unwrap();
        assert_eq!(
            minimal_cutsets(&always),
            Err(Error::DegenerateStructure { always_failed: true })
        );
        let empty_set = SystemStructure::from_cutsets(names(2), vec![vec![]]).unwrap();
        assert_eq!(
            minimal_cutsets(&empty_set),
            Err(Error::DegenerateStructure { always_failed: true })
        );
        let no_sets = SystemStructure::from_cutsets(names(2), vec![]).unwrap();
        assert_eq!(
            minimal_cutsets(&no_sets),
            Err(Error::DegenerateStructure { always_failed: false })
        );
    }

    #[test]
    fn invalid_inputs() {
        assert!(SystemStructure::from_cutsets(vec![], vec![]).is_err());
        assert!(SystemStructure::from_cutsets(vec!["A".into(), "A".into()], vec![]).is_err());
        assert!(SystemStructure::from_cutsets(names(2), vec![vec![2]]).is_err());
        assert!(SystemStructure::from_truth_table(names(2), vec![false; 3]).is_err());
        assert!(matches!(
            SystemStructure::from_truth_table(names(21), vec![]),
            Err(Error::TruthTableTooLarge { .. })
        ));
        assert!(SystemStructure::from_named_cutsets(&["A"], &[vec!["B"]]).is_err());
    }

    #[test]
    fn matrix_validation() {
        assert!(CutsetMatrix::new(2, vec![vec![0], vec![0, 1]]).is_err());
        assert!(CutsetMatrix::new(2, vec![vec![0], vec![0]]).is_err());
        assert!(CutsetMatrix::new(2, vec![vec![]]).is_err());
        assert!(CutsetMatrix::new(2, vec![vec![5]]).is_err());
        let y = CutsetMatrix::new(3, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(y.rows(), &[vec![0], vec![1, 2]]);
        assert_eq!(y.incidence(), vec![vec![1, 0, 0], vec![0, 1, 1]]);
        assert_eq!(y.canonical_text(), "components 3\n100\n011\n");
    }

    #[test]
    fn pathsets() {
        let y = CutsetMatrix::k_good_of_n(2, 3).unwrap();
        assert_eq!(minimal_pathsets(&y), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(shortest_path_length(&y), 2);

        let y = five_component();
        let paths = minimal_pathsets(&y);
        assert!(paths.contains(&vec![0, 1, 4]));
        assert_eq!(shortest_path_length(&y), 3);

        let y = CutsetMatrix::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(minimal_pathsets(&y), vec![vec![0], vec![1]]);

        for m in 1..=6 {
            assert_eq!(shortest_path_length(&CutsetMatrix::series(m).unwrap()), m);
        }
    }

    #[test]
    fn k_out_of_n_builders() {
        assert_eq!(
            CutsetMatrix::k_good_of_n(2, 3).unwrap(),
            CutsetMatrix::k_failures_of_n(2, 3).unwrap()
        );
        assert_eq!(CutsetMatrix::k_failures_of_n(1, 4).unwrap(), CutsetMatrix::series(4).unwrap());
        assert_eq!(CutsetMatrix::k_failures_of_n(3, 5).unwrap().num_cutsets(), 10);
        assert!(CutsetMatrix::k_failures_of_n(0, 3).is_err());
        assert!(CutsetMatrix::k_good_of_n(4, 3).is_err());
    }
}
