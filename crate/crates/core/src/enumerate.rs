//! Isomorphism-free generation of k-regular digraphs with loops and multiarcs.
//!
//! Matrices are built one row at a time. After each row the partial matrix is
//! tested against every relabeling that moves finished rows to the front; if
//! one of them yields a smaller prefix, no completion can be the canonical
//! (lexicographically smallest) form and the branch is cut. A completed matrix
//! that survives the final test is canonical, so each isomorphism class is
//! produced exactly once and no deduplication is needed.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::canonical::{canonical_labeling, prefix_test, AutomorphismGroup, Permutation};
use crate::digraph::{Digraph, MAX_NODES};
use crate::error::{Error, Result};
use crate::polya::CycleIndex;
use crate::transforms::{CountTable, TableKind};

/// Restrictions on the generated classes. All three compose independently.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EnumerationFilter {
    pub forbid_multiarcs: bool,
    pub forbid_loops: bool,
    pub connected_only: bool,
}

impl EnumerationFilter {
    pub fn accepts(&self, rec: &GraphRecord) -> bool {
        !(self.forbid_multiarcs && rec.multiarcs > 0
            || self.forbid_loops && rec.loops > 0
            || self.connected_only && rec.components != 1)
    }
}

/// One unlabeled class: its canonical representative and derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRecord {
    pub graph: Digraph,
    pub aut_order: usize,
    pub cycle_index: CycleIndex,
    pub components: usize,
    pub loops: usize,
    pub multiarcs: usize,
}

impl GraphRecord {
    /// Record for the class of `g`; `g` need not be canonical.
    pub fn from_graph(g: &Digraph) -> Self {
        let lab = canonical_labeling(g);
        Self::from_parts(lab.form, &lab.group)
    }

    /// `graph` must be canonical and `group` its automorphism group.
    pub fn from_parts(graph: Digraph, group: &AutomorphismGroup) -> Self {
        GraphRecord {
            aut_order: group.order(),
            cycle_index: CycleIndex::of_group(group),
            components: graph.weak_components().count,
            loops: graph.loop_count(),
            multiarcs: graph.multiarc_count(),
            graph,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of labeled digraphs in this class, `n!/|Aut|`.
    pub fn labeled_count(&self) -> BigUint {
        self.cycle_index
            .labeled_count()
            .expect("automorphism group order divides n!")
    }
}

/// Execution knobs that do not affect the result.
#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the machine's parallelism.
    pub workers: Option<usize>,
    /// Wall-clock limit for the search.
    pub budget: Option<Duration>,
}

pub fn enumerate_unlabeled(n: usize, k: usize, filter: EnumerationFilter) -> Result<Vec<GraphRecord>> {
    enumerate_unlabeled_with(n, k, filter, &EnumerationOptions::default())
}

/// Returns one record per isomorphism class of `k`-regular digraphs on `n`
/// nodes passing `filter`, sorted by the row-major flattening of the
/// canonical form. The output does not depend on the worker count.
pub fn enumerate_unlabeled_with(
    n: usize,
    k: usize,
    filter: EnumerationFilter,
    options: &EnumerationOptions,
) -> Result<Vec<GraphRecord>> {
    if n > MAX_NODES {
        return Err(Error::TooManyNodes { n, max: MAX_NODES });
    }
    if k == 0 || k > u8::MAX as usize {
        return Err(Error::UnsupportedDegree(k));
    }
    let generator = Generator {
        n,
        k: k as u8,
        max_entry: if filter.forbid_multiarcs { 1 } else { k as u8 },
        forbid_loops: filter.forbid_loops,
        deadline: options.budget.map(|b| (Instant::now() + b, b)),
        aborted: AtomicBool::new(false),
    };

    let run = || generator.run();
    let found = match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }?;

    let mut records: Vec<GraphRecord> = found
        .into_iter()
        .map(|(flat, auts)| {
            let graph = Digraph::from_flat(n, flat).expect("generated matrix has size n");
            GraphRecord::from_parts(graph, &AutomorphismGroup::from_elements(n, auts))
        })
        .filter(|rec| filter.accepts(rec))
        .collect();
    records.sort_unstable_by(|a, b| a.graph.flat().cmp(b.graph.flat()));
    Ok(records)
}

type Found = (Vec<u8>, Vec<Permutation>);

struct Generator {
    n: usize,
    k: u8,
    max_entry: u8,
    forbid_loops: bool,
    deadline: Option<(Instant, Duration)>,
    aborted: AtomicBool,
}

#[derive(Clone)]
struct Partial {
    adj: Vec<u8>,
    col_sums: [u8; MAX_NODES],
    rows: usize,
}

impl Generator {
    fn run(&self) -> Result<Vec<Found>> {
        let root = Partial {
            adj: vec![0; self.n * self.n],
            col_sums: [0; MAX_NODES],
            rows: 0,
        };
        // Expand a few levels serially so there is enough work to share.
        let mut frontier = vec![root];
        let target = 4 * rayon::current_num_threads().max(1);
        while frontier.len() < target && frontier.iter().all(|p| p.rows + 1 < self.n) {
            let mut next = Vec::new();
            for p in &frontier {
                self.children(p, |child| next.push(child));
            }
            frontier = next;
        }

        let parts: Vec<Result<Vec<Found>>> = frontier
            .into_par_iter()
            .map(|mut p| {
                let mut out = Vec::new();
                self.extend(&mut p, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
        }
        Ok(all)
    }

    fn check_budget(&self) -> Result<()> {
        if let Some((deadline, budget)) = self.deadline {
            if self.aborted.load(Ordering::Relaxed) || Instant::now() > deadline {
                self.aborted.store(true, Ordering::Relaxed);
                return Err(Error::BudgetExceeded {
                    seconds: budget.as_secs(),
                });
            }
        }
        Ok(())
    }

    fn extend(&self, p: &mut Partial, out: &mut Vec<Found>) -> Result<()> {
        self.check_budget()?;
        if p.rows == self.n {
            if let Some(auts) = prefix_test(&p.adj, self.n, self.n, true) {
                out.push((p.adj.clone(), auts));
            }
            return Ok(());
        }
        let mut result = Ok(());
        let mut children = Vec::new();
        self.children(p, |child| children.push(child));
        for mut child in children {
            result = self.extend(&mut child, out);
            if result.is_err() {
                break;
            }
        }
        result
    }

    /// Calls `emit` with every one-row extension of `p` that can still
    /// complete to a canonical matrix.
    fn children(&self, p: &Partial, mut emit: impl FnMut(Partial)) {
        let n = self.n;
        let r = p.rows;
        let rows_after = n - r - 1;
        let mut row = [0u8; MAX_NODES];
        self.fill_row(p, r, 0, self.k, rows_after, &mut row, &mut |row| {
            let mut child = p.clone();
            child.adj[r * n..(r + 1) * n].copy_from_slice(&row[..n]);
            for c in 0..n {
                child.col_sums[c] += row[c];
            }
            child.rows += 1;
            if child.rows == n || prefix_test(&child.adj, n, child.rows, false).is_some() {
                emit(child);
            }
        });
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_row(
        &self,
        p: &Partial,
        r: usize,
        c: usize,
        remaining: u8,
        rows_after: usize,
        row: &mut [u8; MAX_NODES],
        emit: &mut dyn FnMut(&[u8; MAX_NODES]),
    ) {
        let n = self.n;
        if c == n {
            if remaining == 0 {
                emit(row);
            }
            return;
        }
        let capacity = self.k - p.col_sums[c];
        let mut hi = remaining.min(capacity).min(self.max_entry);
        if self.forbid_loops && c == r {
            hi = 0;
        }
        for v in 0..=hi {
            // what is left of this column must fit into the rows below
            let left = (capacity - v) as usize;
            if left > self.max_entry as usize * rows_after {
                continue;
            }
            row[c] = v;
            self.fill_row(p, r, c + 1, remaining - v, rows_after, row, emit);
        }
        row[c] = 0;
    }
}

/// Number of `n x n` nonnegative integer matrices with every row and column
/// sum equal to `k` (the labeled k-regular digraphs with loops and multiarcs).
///
/// Rows are placed one at a time; the state is the multiset of remaining
/// column sums, memoized.
pub fn count_labeled(n: usize, k: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut memo: HashMap<Vec<usize>, BigUint> = HashMap::new();
    count_completions(vec![k; n], k, &mut memo)
}

fn count_completions(deficits: Vec<usize>, k: usize, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if deficits.iter().all(|&d| d == 0) {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&deficits) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut row = vec![0; deficits.len()];
    let mut successors = Vec::new();
    rows_within(&deficits, 0, k, &mut row, &mut successors);
    for mut next in successors {
        next.sort_unstable();
        total += count_completions(next, k, memo);
    }
    memo.insert(deficits, total.clone());
    total
}

fn rows_within(deficits: &[usize], c: usize, remaining: usize, row: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if c == deficits.len() {
        if remaining == 0 {
            out.push(deficits.iter().zip(row.iter()).map(|(d, r)| d - r).collect());
        }
        return;
    }
    for v in 0..=remaining.min(deficits[c]) {
        row[c] = v;
        rows_within(deficits, c + 1, remaining - v, row, out);
    }
    row[c] = 0;
}

/// Every labeled `k`-regular digraph on `n` nodes, by exhaustive search.
/// Exponential; intended for cross-checks at small `n`.
pub fn labeled_matrices(n: usize, k: usize) -> Vec<Digraph> {
    fn rec(n: usize, k: usize, cell: usize, adj: &mut Vec<u8>, out: &mut Vec<Digraph>) {
        if cell == n * n {
            out.push(Digraph::from_flat(n, adj.clone()).expect("size n"));
            return;
        }
        let (r, c) = (cell / n, cell % n);
        let row_sum: usize = adj[r * n..r * n + c].iter().map(|&x| x as usize).sum();
        let col_sum: usize = (0..r).map(|i| adj[i * n + c] as usize).sum();
        let hi = (k - row_sum).min(k - col_sum);
        let lo = if c == n - 1 { k - row_sum } else { 0 };
        let lo = if r == n - 1 { lo.max(k - col_sum) } else { lo };
        for v in lo..=hi {
            adj[cell] = v as u8;
            rec(n, k, cell + 1, adj, out);
        }
        adj[cell] = 0;
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut vec![0; n * n], &mut out);
    out
}

/// Generate-and-deduplicate over all labeled matrices. Independent of the
/// orderly generator; only practical for small `n`.
pub fn enumerate_unlabeled_naive(n: usize, k: usize, filter: EnumerationFilter) -> Vec<GraphRecord> {
    let mut forms: Vec<Digraph> = labeled_matrices(n, k)
        .iter()
        .map(crate::canonical::canonical_form)
        .collect();
    forms.sort_unstable_by(|a, b| a.flat().cmp(b.flat()));
    forms.dedup();
    forms
        .iter()
        .map(GraphRecord::from_graph)
        .filter(|rec| filter.accepts(rec))
        .collect()
}

/// Tallies records by weak component count into row `n` of an unlabeled table.
pub fn classify_by_components(records: &[GraphRecord]) -> CountTable {
    let mut table = CountTable::new(TableKind::Unlabeled);
    for rec in records {
        table.add(rec.n(), rec.components, &BigUint::one());
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONE: EnumerationFilter = EnumerationFilter {
        forbid_multiarcs: false,
        forbid_loops: false,
        connected_only: false,
    };

    fn count(n: usize, k: usize, filter: EnumerationFilter) -> usize {
        enumerate_unlabeled(n, k, filter).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(0, 2, NONE), 1);
        assert_eq!(count(1, 2, NONE), 1);
        assert_eq!(count(2, 2, NONE), 3);
        assert_eq!(count(3, 2, NONE), 8);
    }

    #[test]
    fn filtered_counts() {
        let simple = EnumerationFilter {
            forbid_multiarcs: true,
            ..NONE
        };
        assert_eq!(count(4, 2, simple), 8);
        let loopless_simple = EnumerationFilter {
            forbid_multiarcs: true,
            forbid_loops: true,
            ..NONE
        };
        assert_eq!(count(5, 2, loopless_simple), 5);
        let connected = EnumerationFilter {
            connected_only: true,
            ..NONE
        };
        assert_eq!(count(2, 2, connected), 2);
    }

    #[test]
    fn empty_graph_record() {
        let recs = enumerate_unlabeled(0, 2, NONE).unwrap();
        assert_eq!(recs[0].aut_order, 1);
        assert_eq!(recs[0].components, 0);
        assert_eq!(recs[0].labeled_count(), BigUint::one());
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(count_labeled(0, 2), 1u32.into());
        assert_eq!(count_labeled(3, 2), 21u32.into());
        assert_eq!(count_labeled(4, 1), 24u32.into());
        assert_eq!(count_labeled(7, 2), 9135630u32.into());
        assert_eq!(labeled_matrices(3, 2).len(), 21);
        assert_eq!(labeled_matrices(4, 1).len(), 24);
    }

    #[test]
    fn output_is_strictly_sorted() {
        let recs = enumerate_unlabeled(5, 2, NONE).unwrap();
        assert!(recs.windows(2).all(|w| w[0].graph.flat() < w[1].graph.flat()));
    }

    #[test]
    fn orderly_matches_naive() {
        for n in 0..=4 {
            let fast = enumerate_unlabeled(n, 2, NONE).unwrap();
            let slow = enumerate_unlabeled_naive(n, 2, NONE);
            assert_eq!(fast, slow, "n={n}");
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = EnumerationOptions {
            workers: Some(1),
            budget: None,
        };
        let four = EnumerationOptions {
            workers: Some(4),
            budget: None,
        };
        let a = enumerate_unlabeled_with(5, 2, NONE, &one).unwrap();
        let b = enumerate_unlabeled_with(5, 2, NONE, &four).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_budget_fails() {
        let opts = EnumerationOptions {
            workers: Some(1),
            budget: Some(Duration::ZERO),
        };
        let err = enumerate_unlabeled_with(6, 2, NONE, &opts).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn classification_row() {
        let recs = enumerate_unlabeled(4, 2, NONE).unwrap();
        let t = classify_by_components(&recs);
        assert_eq!(t.row_u64(4), vec![14, 8, 2, 1]);
    }
}
