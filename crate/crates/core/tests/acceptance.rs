//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! them. Set `REGDIGRAPH_STRETCH=1` to add the n=9 class count.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use regdigraph::enumerate::{enumerate_unlabeled_naive, labeled_matrices};
use regdigraph::formats::{count_v_lines_with_prefix, read_reg, write_reg};
use regdigraph::reference;
use regdigraph::transforms::{
    bell_numbers, partition_numbers, partitions_into_parts_table, stirling1_table, stirling2_table,
};
use regdigraph::{
    apply_permutation, assemble_unlabeled_table, bell_transform, canonical_form, classify_by_components,
    count_labeled, enumerate_unlabeled, enumerate_unlabeled_with, from_bipartite, rooted_table, to_bipartite,
    verify_egf, EnumerationFilter, EnumerationOptions, GraphRecord, Permutation,
};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn all() -> EnumerationFilter {
    EnumerationFilter::default()
}

fn classes(n: usize, k: usize) -> Vec<GraphRecord> {
    enumerate_unlabeled(n, k, all()).expect("enumeration")
}

fn check_eq<T: PartialEq + std::fmt::Debug>(what: String, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn sum_labeled(records: &[GraphRecord]) -> BigUint {
    records.iter().map(GraphRecord::labeled_count).sum()
}

/// Connected labeled counts for n = 1..=max, from the unlabeled classes.
fn connected_labeled(by_n: &BTreeMap<usize, Vec<GraphRecord>>, max: usize) -> Vec<BigUint> {
    (1..=max)
        .map(|n| sum_labeled(&by_n[&n].iter().filter(|r| r.components == 1).cloned().collect::<Vec<_>>()))
        .collect()
}

fn criterion_1(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    for n in 1..=8 {
        let table = classify_by_components(&by_n[&n]);
        check_eq(
            format!("n={n} by components"),
            table.row(n),
            big(reference::UNLABELED_BY_COMPONENTS[n - 1]),
        )?;
        check_eq(format!("n={n} total"), by_n[&n].len() as u64, reference::UNLABELED_TOTALS[n])?;
    }
    let assembled = assemble_unlabeled_table((1..=7).map(|n| by_n[&n].as_slice())).map_err(|e| e.to_string())?;
    for n in 1..=7 {
        check_eq(
            format!("n={n} assembled"),
            assembled.row(n),
            big(reference::UNLABELED_BY_COMPONENTS[n - 1]),
        )?;
    }
    let start = Instant::now();
    let eight = enumerate_unlabeled_with(
        8,
        2,
        all(),
        &EnumerationOptions {
            workers: None,
            budget: Some(Duration::from_secs(600)),
        },
    )
    .map_err(|e| e.to_string())?;
    check_eq("n=8 within budget".into(), eight.len() as u64, reference::UNLABELED_TOTALS[8])?;
    eprintln!("n=8 enumerated in {:.2} s", start.elapsed().as_secs_f64());
    if std::env::var_os("REGDIGRAPH_STRETCH").is_some() {
        let nine = classes(9, 2);
        check_eq(
            "n=9 by components".into(),
            classify_by_components(&nine).row(9),
            big(reference::UNLABELED_BY_COMPONENTS[8]),
        )?;
    }
    Ok(())
}

fn criterion_2(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    let connected = connected_labeled(by_n, 7);
    let egf = verify_egf(&connected, 7).map_err(|e| e.to_string())?;
    let mut entries = 0;
    for n in 1..=7 {
        let want = big(reference::LABELED_BY_COMPONENTS[n - 1]);
        for c in 1..=n {
            let bell = bell_transform(&connected, n, c).map_err(|e| e.to_string())?;
            check_eq(format!("bell ({n},{c})"), &bell, &want[c - 1])?;
            check_eq(format!("egf ({n},{c})"), &egf.get(n, c), &want[c - 1])?;
            entries += 1;
        }
        check_eq(
            format!("n={n} total"),
            egf.row_total(n),
            BigUint::from(reference::LABELED_TOTALS[n - 1]),
        )?;
    }
    check_eq("entries compared".into(), entries, 28)
}

fn criterion_3(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    for n in 1..=7 {
        let sum = sum_labeled(&by_n[&n]);
        check_eq(format!("n={n} count_labeled"), &sum, &count_labeled(n, 2))?;
        let independent = if n <= 5 {
            BigUint::from(labeled_matrices(n, 2).len())
        } else {
            BigUint::from(reference::LABELED_BY_COMPONENTS[n - 1].iter().sum::<u64>())
        };
        check_eq(format!("n={n} independent"), &sum, &independent)?;
    }
    Ok(())
}

fn criterion_4(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    let table = rooted_table((1..=8).map(|n| (n, by_n[&n].as_slice()))).map_err(|e| e.to_string())?;
    for n in 1..=8 {
        let row = table.row(n).ok_or(format!("row {n} missing"))?;
        if !row.is_palindromic() {
            return Err(format!("row {n} is not palindromic"));
        }
        check_eq(
            format!("row {n} r=0"),
            row.coefficients[0].clone(),
            BigUint::from(by_n[&n].len()),
        )?;
        let want = reference::ROOTED[n - 1];
        check_eq(format!("row {n}"), row.coefficients[..want.len()].to_vec(), big(want))?;
    }
    Ok(())
}

fn criterion_5(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    let count = |n: usize, f: EnumerationFilter| by_n[&n].iter().filter(|r| f.accepts(r)).count() as u64;
    let no_multi = EnumerationFilter {
        forbid_multiarcs: true,
        ..all()
    };
    let no_loops = EnumerationFilter {
        forbid_loops: true,
        ..all()
    };
    let simple = EnumerationFilter {
        forbid_multiarcs: true,
        forbid_loops: true,
        ..all()
    };
    let sequences: [(&str, EnumerationFilter, usize, &[u64]); 3] = [
        ("no multiarcs", no_multi, 2, &reference::NO_MULTIARCS_FROM_2),
        ("no multiarcs or loops", simple, 3, &reference::SIMPLE_LOOPLESS_FROM_3),
        ("no loops", no_loops, 2, &reference::LOOPLESS_FROM_2),
    ];
    for (name, filter, first, want) in sequences {
        for (i, &w) in want.iter().enumerate() {
            let n = first + i;
            check_eq(format!("{name} n={n}"), count(n, filter), w)?;
            let direct = enumerate_unlabeled(n, 2, filter).map_err(|e| e.to_string())?.len() as u64;
            check_eq(format!("{name} n={n} generated"), direct, w)?;
        }
    }
    for (i, &w) in reference::NO_MULTIARCS_FROM_2.iter().enumerate() {
        let text = write_reg(&by_n[&(i + 2)]);
        check_eq(format!("V0 lines n={}", i + 2), count_v_lines_with_prefix(&text, "V0 ") as u64, w)?;
    }
    for (i, &w) in reference::SIMPLE_LOOPLESS_FROM_3.iter().enumerate() {
        let text = write_reg(&by_n[&(i + 3)]);
        check_eq(format!("V0 0 lines n={}", i + 3), count_v_lines_with_prefix(&text, "V0 0 ") as u64, w)?;
    }
    Ok(())
}

fn criterion_6(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    let mut got: BTreeMap<String, usize> = BTreeMap::new();
    for r in &by_n[&3] {
        *got.entry(r.cycle_index.to_string()).or_default() += 1;
    }
    let want: BTreeMap<String, usize> = reference::CYCLE_INDICES_N3
        .iter()
        .map(|&(z, m)| (z.to_string(), m))
        .collect();
    check_eq("cycle index multiset".into(), got, want)?;
    check_eq("weighted sum".into(), sum_labeled(&by_n[&3]), BigUint::from(21u32))
}

fn criterion_7() -> Outcome {
    const MAX: usize = 8;
    let p = partition_numbers(MAX);
    let parts = partitions_into_parts_table(MAX);
    let s2 = stirling2_table(MAX);
    let s1 = stirling1_table(MAX);
    let bell = bell_numbers(MAX);
    let ones = vec![BigUint::from(1u32); MAX];
    for n in 1..=MAX {
        let recs = classes(n, 1);
        let table = classify_by_components(&recs);
        check_eq(format!("U1({n},1)"), table.get(n, 1), BigUint::from(1u32))?;
        check_eq(format!("U1({n})"), BigUint::from(recs.len()), p[n].clone())?;
        check_eq(format!("U1 row {n}"), table.row(n), parts[n][1..=n].to_vec())?;
        let mut row_total = BigUint::from(0u32);
        let mut labeled = vec![BigUint::from(0u32); n];
        for r in &recs {
            labeled[r.components - 1] += r.labeled_count();
        }
        for c in 1..=n {
            let l = bell_transform(&ones, n, c).map_err(|e| e.to_string())?;
            check_eq(format!("L1({n},{c})"), &l, &s2[n][c])?;
            row_total += l;
            check_eq(format!("labeled permutations ({n},{c})"), &labeled[c - 1], &s1[n][c])?;
        }
        check_eq(format!("L1({n})"), row_total, bell[n].clone())?;
    }
    Ok(())
}

fn property_suites(by_n: &BTreeMap<usize, Vec<GraphRecord>>) -> Outcome {
    for n in 0..=4 {
        let naive: Vec<_> = enumerate_unlabeled_naive(n, 2, all()).into_iter().map(|r| r.graph).collect();
        let orderly: Vec<_> = by_n[&n].iter().map(|r| r.graph.clone()).collect();
        check_eq(format!("brute force vs orderly n={n}"), naive, orderly)?;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let n = rng.gen_range(1..=6);
        let rec = by_n[&n].choose(&mut rng).expect("classes");
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(&mut rng);
        let p = Permutation::new(mapping).map_err(|e| e.to_string())?;
        let moved = apply_permutation(&rec.graph, &p).map_err(|e| e.to_string())?;
        if canonical_form(&moved) != canonical_form(&rec.graph) {
            return Err(format!("trial {trial}: canonical form moved under {:?}", p.mapping()));
        }
    }

    for n in 1..=6 {
        for rec in &by_n[&n] {
            let b = to_bipartite(&rec.graph).map_err(|e| e.to_string())?;
            if from_bipartite(&b).map_err(|e| e.to_string())? != rec.graph {
                return Err(format!("bipartite round trip n={n} on {:?}", rec.graph.to_arc_list()));
            }
        }
    }

    for n in 0..=6 {
        let text = write_reg(&by_n[&n]);
        let back = read_reg(&text).map_err(|e| e.to_string())?;
        check_eq(format!("Reg round trip n={n}"), write_reg(&back), text)?;
    }
    Ok(())
}

fn cli_enumerate(workers: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_regdigraph"))
        .args(["--workers", &workers.to_string(), "enumerate", "--nodes", "6"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let max = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let first = cli_enumerate(max)?;
    if first.is_empty() {
        return Err("empty output".into());
    }
    for run in 1..3 {
        if cli_enumerate(max)? != first {
            return Err(format!("run {} differs from run 1", run + 1));
        }
    }
    if cli_enumerate(1)? != first {
        return Err(format!("1 worker differs from {max} workers"));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let by_n: BTreeMap<usize, Vec<GraphRecord>> = (0..=8).map(|n| (n, classes(n, 2))).collect();

    let criteria: Vec<Criterion> = vec![
        ("1 unlabeled classes by components", Box::new(|| criterion_1(&by_n))),
        ("2 labeled counts by components", Box::new(|| criterion_2(&by_n))),
        ("3 labeled and unlabeled counts agree", Box::new(|| criterion_3(&by_n))),
        ("4 rooted counts", Box::new(|| criterion_4(&by_n))),
        ("5 filtered sequences", Box::new(|| criterion_5(&by_n))),
        ("6 cycle indices at n=3", Box::new(|| criterion_6(&by_n))),
        ("7 one-regular identities", Box::new(criterion_7)),
        ("8 property suites", Box::new(|| property_suites(&by_n))),
        ("9 determinism", Box::new(determinism)),
    ];

    let mut failed = Vec::new();
    for (name, check) in &criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
