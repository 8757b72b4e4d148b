//! Cross-validation suite run by `regdigraph verify`.
//!
//! Every check compares two independently computed quantities, or a computed
//! quantity against a published count, and reports the first entry where
//! they diverge.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::canonical::{apply_permutation, canonical_form, Permutation};
use crate::enumerate::{count_labeled, enumerate_unlabeled_with, EnumerationFilter, EnumerationOptions, GraphRecord};
use crate::error::Result;
use crate::formats::{read_reg, write_reg};
use crate::lovelock::{from_bipartite, render_term, to_bipartite};
use crate::polya::rooted_table;
use crate::reference;
use crate::transforms::{
    assemble_unlabeled_table, bell_numbers, bell_transform, labeled_table_from_records,
    partition_numbers, partitions_into_parts_table, stirling1_table, stirling2_table, verify_egf,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{status} {}", self.name)
        } else {
            write!(f, "{status} {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: impl Into<String>, outcome: std::result::Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

/// Where the per-`n` record lists come from (fresh enumeration or a cache).
pub trait RecordSource {
    fn records(&mut self, n: usize, k: usize) -> Result<Vec<GraphRecord>>;
}

/// Enumerates on demand.
pub struct Fresh(pub EnumerationOptions);

impl RecordSource for Fresh {
    fn records(&mut self, n: usize, k: usize) -> Result<Vec<GraphRecord>> {
        enumerate_unlabeled_with(n, k, EnumerationFilter::default(), &self.0)
    }
}

/// Compares `got[i]` with `want[i]`; column labels start at `first`.
fn compare_row(n: usize, got: &[BigUint], want: &[u64], first: usize) -> std::result::Result<(), String> {
    for (i, &w) in want.iter().enumerate() {
        let g = got.get(i).and_then(|v| v.to_u64());
        if g != Some(w) {
            return Err(format!(
                "entry ({n},{}): expected {w}, got {}",
                i + first,
                got.get(i).map(|v| v.to_string()).unwrap_or_else(|| "nothing".into())
            ));
        }
    }
    Ok(())
}

/// Runs every check that applies for node counts up to `max_n`.
pub fn run(max_n: usize, source: &mut dyn RecordSource) -> Report {
    let mut report = Report::default();
    let mut by_n: BTreeMap<usize, Vec<GraphRecord>> = BTreeMap::new();
    for n in 0..=max_n {
        match source.records(n, 2) {
            Ok(recs) => {
                by_n.insert(n, recs);
            }
            Err(e) => {
                report.record(format!("load classes n={n}"), Err(e.to_string()));
                return report;
            }
        }
    }

    unlabeled_checks(max_n, &by_n, &mut report);
    labeled_checks(max_n, &by_n, &mut report);
    rooted_checks(&by_n, &mut report);
    filter_checks(max_n, &by_n, &mut report);
    if max_n >= 3 {
        report.record("cycle indices at n=3", cycle_indices_n3(&by_n[&3]));
    }
    one_regular_checks(max_n, source, &mut report);
    round_trip_checks(max_n.min(6), &by_n, &mut report);
    report
}

fn unlabeled_checks(max_n: usize, by_n: &BTreeMap<usize, Vec<GraphRecord>>, report: &mut Report) {
    let lists: Vec<&[GraphRecord]> = by_n.values().map(Vec::as_slice).collect();
    match assemble_unlabeled_table(lists) {
        Err(e) => report.record("components: enumeration vs multiset transform", Err(e.to_string())),
        Ok(table) => {
            report.record("components: enumeration vs multiset transform", Ok(()));
            for n in 1..=max_n.min(reference::UNLABELED_BY_COMPONENTS.len()) {
                report.record(
                    format!("unlabeled by components n={n}"),
                    compare_row(n, &table.row(n), reference::UNLABELED_BY_COMPONENTS[n - 1], 1),
                );
            }
            let totals = (0..=max_n.min(9)).try_for_each(|n| {
                let got = table.row_total(n);
                let want = reference::UNLABELED_TOTALS[n];
                if got.to_u64() == Some(want) {
                    Ok(())
                } else {
                    Err(format!("n={n}: expected {want}, got {got}"))
                }
            });
            report.record("unlabeled totals", totals);
            let diagonal = (2..=max_n).try_for_each(|n| {
                match (table.get(n, n).to_u64(), table.get(n, n - 1).to_u64()) {
                    (Some(1), Some(2)) => Ok(()),
                    (a, b) => Err(format!("n={n}: (n,n)={a:?}, (n,n-1)={b:?}")),
                }
            });
            report.record("diagonal entries 1 and 2", diagonal);
        }
    }
}

fn labeled_checks(max_n: usize, by_n: &BTreeMap<usize, Vec<GraphRecord>>, report: &mut Report) {
    let lists: Vec<&[GraphRecord]> = by_n.values().map(Vec::as_slice).collect();
    let from_classes = labeled_table_from_records(lists);
    let connected: Vec<BigUint> = (1..=max_n).map(|n| from_classes.get(n, 1)).collect();

    for n in 0..=max_n {
        let name = if n == 3 {
            "sum n!/|A| = 21 at n=3".to_string()
        } else {
            format!("sum n!/|A| = labeled count n={n}")
        };
        let sum = from_classes.row_total(n);
        let direct = count_labeled(n, 2);
        report.record(
            name,
            if sum == direct {
                Ok(())
            } else {
                Err(format!("classes give {sum}, labeled search gives {direct}"))
            },
        );
    }

    let upto = max_n.min(reference::LABELED_BY_COMPONENTS.len());
    match verify_egf(&connected, upto) {
        Err(e) => report.record("labeled: EGF vs Bell transform", Err(e.to_string())),
        Ok(egf) => {
            report.record("labeled: EGF vs Bell transform", Ok(()));
            for n in 1..=upto {
                let bell: std::result::Result<Vec<BigUint>, _> =
                    (1..=n).map(|c| bell_transform(&connected, n, c)).collect();
                let outcome = match bell {
                    Err(e) => Err(e.to_string()),
                    Ok(row) => compare_row(n, &row, reference::LABELED_BY_COMPONENTS[n - 1], 1)
                        .and_then(|_| compare_row(n, &egf.row(n), reference::LABELED_BY_COMPONENTS[n - 1], 1))
                        .and_then(|_| compare_row(n, &from_classes.row(n), reference::LABELED_BY_COMPONENTS[n - 1], 1)),
                };
                report.record(format!("labeled by components n={n}"), outcome);
            }
        }
    }
}

fn rooted_checks(by_n: &BTreeMap<usize, Vec<GraphRecord>>, report: &mut Report) {
    let rows = by_n
        .iter()
        .filter(|(&n, _)| n >= 1)
        .map(|(&n, recs)| (n, recs.as_slice()));
    match rooted_table(rows) {
        Err(e) => report.record("rooted counts", Err(e.to_string())),
        Ok(table) => {
            for (&n, row) in &table.rows {
                let mut outcome = if row.is_palindromic() {
                    Ok(())
                } else {
                    Err(format!("row {n} is not palindromic"))
                };
                if outcome.is_ok() && by_n[&n].len() != row.coefficients[0].to_usize().unwrap_or(0) {
                    outcome = Err(format!("entry ({n},0) differs from the class count"));
                }
                if outcome.is_ok() && n <= reference::ROOTED.len() {
                    outcome = compare_row(n, &row.coefficients, reference::ROOTED[n - 1], 0);
                }
                report.record(format!("rooted counts n={n}"), outcome);
            }
        }
    }
}

type Predicate<'a> = &'a dyn Fn(&GraphRecord) -> bool;

fn filter_checks(max_n: usize, by_n: &BTreeMap<usize, Vec<GraphRecord>>, report: &mut Report) {
    let count = |n: usize, f: Predicate| by_n[&n].iter().filter(|r| f(r)).count() as u64;
    let series: [(&str, usize, &[u64], Predicate); 3] = [
        ("no multiarcs", 2, &reference::NO_MULTIARCS_FROM_2, &|r| r.multiarcs == 0),
        ("no multiarcs, no loops", 3, &reference::SIMPLE_LOOPLESS_FROM_3, &|r| {
            r.multiarcs == 0 && r.loops == 0
        }),
        ("no loops", 2, &reference::LOOPLESS_FROM_2, &|r| r.loops == 0),
    ];
    for (name, first, want, pred) in series {
        let outcome = want
            .iter()
            .enumerate()
            .map(|(i, &w)| (first + i, w))
            .filter(|&(n, _)| n <= max_n)
            .try_for_each(|(n, w)| {
                let got = count(n, pred);
                if got == w {
                    Ok(())
                } else {
                    Err(format!("n={n}: expected {w}, got {got}"))
                }
            });
        report.record(format!("filter: {name}"), outcome);
    }
}

fn cycle_indices_n3(records: &[GraphRecord]) -> std::result::Result<(), String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut weighted = BigUint::default();
    for rec in records {
        *seen.entry(rec.cycle_index.to_string()).or_default() += 1;
        weighted += rec.labeled_count();
    }
    let want: BTreeMap<String, usize> = reference::CYCLE_INDICES_N3
        .iter()
        .map(|&(z, m)| (z.to_string(), m))
        .collect();
    if seen != want {
        return Err(format!("cycle indices {seen:?}"));
    }
    if weighted != BigUint::from(21u32) {
        return Err(format!("weighted sum {weighted}"));
    }
    Ok(())
}

fn one_regular_checks(max_n: usize, source: &mut dyn RecordSource, report: &mut Report) {
    let p = partition_numbers(max_n);
    let parts = partitions_into_parts_table(max_n);
    let stirling2 = stirling2_table(max_n);
    let stirling1 = stirling1_table(max_n);
    let bell = bell_numbers(max_n);
    let mut lists = Vec::new();
    for n in 0..=max_n {
        match source.records(n, 1) {
            Ok(r) => lists.push(r),
            Err(e) => {
                report.record("1-regular classes", Err(e.to_string()));
                return;
            }
        }
    }
    let unlabeled = match assemble_unlabeled_table(lists.iter().map(Vec::as_slice)) {
        Ok(t) => t,
        Err(e) => {
            report.record("1-regular classes", Err(e.to_string()));
            return;
        }
    };
    let unlabeled_outcome = (1..=max_n).try_for_each(|n| {
        if unlabeled.get(n, 1) != BigUint::from(1u32) {
            return Err(format!("n={n}: {} connected classes", unlabeled.get(n, 1)));
        }
        if unlabeled.row_total(n) != p[n] {
            return Err(format!("n={n}: {} classes, p(n) = {}", unlabeled.row_total(n), p[n]));
        }
        (1..=n).try_for_each(|c| {
            if unlabeled.get(n, c) == parts[n][c] {
                Ok(())
            } else {
                Err(format!("entry ({n},{c}): {} vs p(n,c) = {}", unlabeled.get(n, c), parts[n][c]))
            }
        })
    });
    report.record("1-regular: unlabeled counts are partition numbers", unlabeled_outcome);

    // The Bell transform seeded with one connected structure per size.
    let ones = vec![BigUint::from(1u32); max_n];
    let seeded = (1..=max_n).try_for_each(|n| {
        let mut total = BigUint::default();
        for c in 1..=n {
            let v = bell_transform(&ones, n, c).map_err(|e| e.to_string())?;
            if v != stirling2[n][c] {
                return Err(format!("entry ({n},{c}): {v} vs S(n,c) = {}", stirling2[n][c]));
            }
            total += v;
        }
        if total != bell[n] {
            return Err(format!("n={n}: {total} vs Bell = {}", bell[n]));
        }
        Ok(())
    });
    report.record("1-regular: Bell transform of ones gives Stirling and Bell numbers", seeded);

    // Actual labeled counts: permutations by number of cycles.
    let labeled = labeled_table_from_records(lists.iter().map(Vec::as_slice));
    let actual = (1..=max_n).try_for_each(|n| {
        (1..=n).try_for_each(|c| {
            if labeled.get(n, c) == stirling1[n][c] {
                Ok(())
            } else {
                Err(format!("entry ({n},{c}): {} vs c(n,c) = {}", labeled.get(n, c), stirling1[n][c]))
            }
        })
    });
    report.record("1-regular: labeled counts are cycle counts of permutations", actual);
}

fn round_trip_checks(upto: usize, by_n: &BTreeMap<usize, Vec<GraphRecord>>, report: &mut Report) {
    let reg = (0..=upto).try_for_each(|n| {
        let text = write_reg(&by_n[&n]);
        let back = read_reg(&text).map_err(|e| format!("n={n}: {e}"))?;
        if write_reg(&back) != text {
            return Err(format!("n={n}: rewritten file differs"));
        }
        Ok(())
    });
    report.record("Reg write/read round trip", reg);

    let lovelock = (1..=upto).try_for_each(|n| {
        for rec in &by_n[&n] {
            let b = to_bipartite(&rec.graph).map_err(|e| e.to_string())?;
            let back = from_bipartite(&b).map_err(|e| e.to_string())?;
            let term = render_term(&rec.graph).map_err(|e| e.to_string())?;
            if back != rec.graph
                || !term.is_fully_contracted()
                || term.self_contractions() != rec.loops
                || term.to_digraph().ok().as_ref() != Some(&rec.graph)
            {
                return Err(format!("n={n}: {:?}", rec.graph));
            }
        }
        Ok(())
    });
    report.record("tensor term round trip", lovelock);

    // Reversed labels must canonicalize back to the same representative.
    let canon = (1..=upto).try_for_each(|n| {
        let rev = Permutation::new((0..n).rev().collect()).expect("reversal");
        for rec in &by_n[&n] {
            let moved = apply_permutation(&rec.graph, &rev).map_err(|e| e.to_string())?;
            if canonical_form(&moved) != rec.graph {
                return Err(format!("n={n}: {:?}", rec.graph));
            }
        }
        Ok(())
    });
    report.record("canonical form under relabeling", canon);
}
