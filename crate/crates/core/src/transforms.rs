//! Sequence transforms from connected counts to counts by component number.
//!
//! Unlabeled classes combine by the multiset transform over partitions of
//! `n`; labeled ones by the Bell transform over compositions of `n`, which is
//! also computed a second way by exponentiating the exponential generating
//! function. The 1-regular case has closed forms (partition numbers, Stirling
//! and Bell numbers), recomputed here from their recurrences.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumerate::GraphRecord;
use crate::error::{Error, Result};
use crate::polya::factorial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    Labeled,
    Unlabeled,
}

/// Counts indexed by node count `n` and weak component count `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub kind: TableKind,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub fn new(kind: TableKind) -> Self {
        CountTable {
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, n: usize, c: usize, value: &BigUint) {
        *self.entries.entry((n, c)).or_default() += value;
    }

    pub fn set(&mut self, n: usize, c: usize, value: BigUint) {
        self.entries.insert((n, c), value);
    }

    /// Marks row `n` present even if every entry is zero.
    pub fn ensure_row(&mut self, n: usize) {
        if !self.has_row(n) {
            self.entries.insert((n, n), BigUint::zero());
        }
    }

    pub fn get(&self, n: usize, c: usize) -> BigUint {
        self.entries.get(&(n, c)).cloned().unwrap_or_default()
    }

    pub fn has_row(&self, n: usize) -> bool {
        self.entries.range((n, 0)..=(n, usize::MAX)).next().is_some()
    }

    /// Node counts with at least one entry, ascending.
    pub fn ns(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.entries.keys().map(|&(n, _)| n).collect();
        ns.dedup();
        ns
    }

    pub fn max_n(&self) -> Option<usize> {
        self.entries.keys().next_back().map(|&(n, _)| n)
    }

    /// Entries `c = 1..=n` of row `n`.
    pub fn row(&self, n: usize) -> Vec<BigUint> {
        (1..=n).map(|c| self.get(n, c)).collect()
    }

    pub fn row_u64(&self, n: usize) -> Vec<u64> {
        self.row(n)
            .iter()
            .map(|v| v.to_u64().expect("fits in u64"))
            .collect()
    }

    /// Total over all component counts, including `c = 0` (only the empty graph).
    pub fn row_total(&self, n: usize) -> BigUint {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(_, v)| v)
            .sum()
    }
}

fn connected_at(connected: &[BigUint], i: usize) -> &BigUint {
    &connected[i - 1]
}

fn check_prefix(connected: &[BigUint], n: usize) -> Result<()> {
    if connected.len() < n {
        return Err(Error::InsufficientPrefix {
            have: connected.len(),
            need: n,
        });
    }
    Ok(())
}

/// `C(a + m - 1, m)`: multisets of size `m` from `a` kinds.
fn multichoose(a: &BigUint, m: usize) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..m {
        acc = acc * (a + j) / (j + 1);
    }
    acc
}

/// Partitions of `n` into exactly `parts` parts, each listed nonincreasing,
/// in reverse lexicographic order.
pub fn partitions_into(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n < parts {
            return;
        }
        // the largest remaining part is at least ceil(n/parts)
        let lo = n.div_ceil(parts);
        for p in (lo..=max.min(n - (parts - 1))).rev() {
            prefix.push(p);
            rec(n - p, parts - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, parts, n, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into exactly `parts` positive parts, lexicographic.
pub fn compositions_into(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n < parts {
            return;
        }
        for p in 1..=n - (parts - 1) {
            prefix.push(p);
            rec(n - p, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, parts, &mut Vec::new(), &mut out);
    out
}

/// Unlabeled count with `c` components from connected counts
/// `connected[i-1] = U(i, 1)`: over partitions of `n` into `c` parts with
/// part `i` repeated `m_i` times, sums the product of `C(U(i,1) + m_i - 1, m_i)`.
pub fn multiset_transform(connected: &[BigUint], n: usize, c: usize) -> Result<BigUint> {
    check_prefix(connected, n)?;
    let mut total = BigUint::zero();
    for partition in partitions_into(n, c) {
        let mut term = BigUint::one();
        let mut i = 0;
        while i < partition.len() {
            let part = partition[i];
            let mult = partition[i..].iter().take_while(|&&p| p == part).count();
            term *= multichoose(connected_at(connected, part), mult);
            i += mult;
        }
        total += term;
    }
    Ok(total)
}

/// Labeled count with `c` components from connected counts
/// `connected[i-1] = L(i, 1)`: `(1/c!)` times the sum over compositions of
/// `n` into `c` positive parts of `multinomial(n; n_1..n_c) * prod L(n_i, 1)`.
pub fn bell_transform(connected: &[BigUint], n: usize, c: usize) -> Result<BigUint> {
    check_prefix(connected, n)?;
    let n_fact = factorial(n);
    let mut total = BigUint::zero();
    for comp in compositions_into(n, c) {
        let mut denom = BigUint::one();
        let mut prod = BigUint::one();
        for &part in &comp {
            denom *= factorial(part);
            prod *= connected_at(connected, part);
        }
        total += &n_fact / denom * prod;
    }
    let (q, r) = total.div_rem(&factorial(c));
    if !r.is_zero() {
        return Err(Error::NonIntegral {
            what: format!("Bell transform sum at n={n}, c={c} over {c}!"),
        });
    }
    Ok(q)
}

/// Labeled table up to `upto` nodes from `exp(t * L(x))`, where
/// `L(x) = sum L(n,1) x^n / n!`. The series `F = exp(t L)` satisfies
/// `F' = t L' F`, so `n f_n = t * sum_j j l_j f_{n-j}` with each `f_n` a
/// polynomial in `t`. The result is checked entry by entry against
/// [`bell_transform`].
pub fn verify_egf(connected: &[BigUint], upto: usize) -> Result<CountTable> {
    check_prefix(connected, upto)?;
    let l: Vec<BigRational> = (0..=upto)
        .map(|j| {
            if j == 0 {
                BigRational::zero()
            } else {
                BigRational::new(
                    connected_at(connected, j).clone().into(),
                    factorial(j).into(),
                )
            }
        })
        .collect();
    // f[n][c] = [x^n t^c] F
    let mut f: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for n in 1..=upto {
        let mut fn_poly = vec![BigRational::zero(); n + 1];
        for j in 1..=n {
            let weight = &l[j] * BigRational::from_integer(j.into());
            for (c, coeff) in f[n - j].iter().enumerate() {
                fn_poly[c + 1] += coeff * &weight;
            }
        }
        let inv_n = BigRational::new(1.into(), n.into());
        for x in fn_poly.iter_mut() {
            *x *= &inv_n;
        }
        f.push(fn_poly);
    }

    let mut table = CountTable::new(TableKind::Labeled);
    for (n, poly) in f.iter().enumerate().skip(1) {
        let n_fact = BigRational::from_integer(factorial(n).into());
        for c in 1..=n {
            let value = &poly[c] * &n_fact;
            if !value.is_integer() {
                return Err(Error::NonIntegral {
                    what: format!("EGF coefficient at n={n}, c={c}"),
                });
            }
            let value = value.to_integer().to_biguint().ok_or_else(|| Error::NonIntegral {
                what: format!("negative EGF coefficient at n={n}, c={c}"),
            })?;
            let bell = bell_transform(connected, n, c)?;
            if bell != value {
                return Err(Error::CrossCheck {
                    what: format!("entry ({n},{c}): EGF gives {value}, Bell transform gives {bell}"),
                });
            }
            table.set(n, c, value);
        }
    }
    Ok(table)
}

/// Builds the unlabeled table from complete per-`n` record lists, and checks
/// that every entry equals the multiset transform of the connected column.
/// The lists must cover `n = 1, 2, ..., max` without gaps; an `n = 0` list
/// is allowed.
pub fn assemble_unlabeled_table<'a, I>(records_by_n: I) -> Result<CountTable>
where
    I: IntoIterator<Item = &'a [GraphRecord]>,
{
    let mut table = CountTable::new(TableKind::Unlabeled);
    for records in records_by_n {
        for rec in records {
            table.add(rec.n(), rec.components, &BigUint::one());
        }
    }
    let max_n = table.max_n().unwrap_or(0);
    let connected: Vec<BigUint> = (1..=max_n).map(|n| table.get(n, 1)).collect();
    for n in 1..=max_n {
        if !table.has_row(n) {
            return Err(Error::InsufficientPrefix {
                have: n - 1,
                need: max_n,
            });
        }
        for c in 1..=n {
            let direct = table.get(n, c);
            let via = multiset_transform(&connected, n, c)?;
            if direct != via {
                return Err(Error::CrossCheck {
                    what: format!(
                        "entry ({n},{c}): {direct} classes enumerated, multiset transform gives {via}"
                    ),
                });
            }
        }
    }
    Ok(table)
}

/// Labeled counts by component number, summing `n!/|Aut|` over classes.
pub fn labeled_table_from_records<'a, I>(records_by_n: I) -> CountTable
where
    I: IntoIterator<Item = &'a [GraphRecord]>,
{
    let mut table = CountTable::new(TableKind::Labeled);
    for records in records_by_n {
        for rec in records {
            table.add(rec.n(), rec.components, &rec.labeled_count());
        }
    }
    table
}

/// Partition numbers `p(0..=upto)` by Euler's pentagonal number recurrence.
pub fn partition_numbers(upto: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=upto {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign_positive = k % 2 == 1;
            let mut add = |g: usize| {
                if g <= n {
                    if sign_positive {
                        plus += &p[n - g];
                    } else {
                        minus += &p[n - g];
                    }
                }
            };
            add(g1);
            add(k * (3 * k + 1) / 2);
        }
        p.push(plus - minus);
    }
    p
}

/// `p(n, c)`, partitions of `n` into exactly `c` parts:
/// `p(n, c) = p(n-1, c-1) + p(n-c, c)`.
pub fn partitions_into_parts_table(upto: usize) -> Vec<Vec<BigUint>> {
    let mut t = vec![vec![BigUint::zero(); upto + 1]; upto + 1];
    t[0][0] = BigUint::one();
    for n in 1..=upto {
        for c in 1..=n {
            let a = t[n - 1][c - 1].clone();
            let b = if n >= c { t[n - c][c].clone() } else { BigUint::zero() };
            t[n][c] = a + b;
        }
    }
    t
}

/// Stirling numbers of the second kind: `S(n, c) = c S(n-1, c) + S(n-1, c-1)`.
pub fn stirling2_table(upto: usize) -> Vec<Vec<BigUint>> {
    let mut s = vec![vec![BigUint::zero(); upto + 1]; upto + 1];
    s[0][0] = BigUint::one();
    for n in 1..=upto {
        for c in 1..=n {
            s[n][c] = &s[n - 1][c] * c + &s[n - 1][c - 1];
        }
    }
    s
}

/// Unsigned Stirling numbers of the first kind (permutations of `n` with `c`
/// cycles): `c(n, k) = (n-1) c(n-1, k) + c(n-1, k-1)`.
pub fn stirling1_table(upto: usize) -> Vec<Vec<BigUint>> {
    let mut s = vec![vec![BigUint::zero(); upto + 1]; upto + 1];
    s[0][0] = BigUint::one();
    for n in 1..=upto {
        for c in 1..=n {
            s[n][c] = &s[n - 1][c] * (n - 1) + &s[n - 1][c - 1];
        }
    }
    s
}

/// Bell numbers as row sums of the Stirling triangle.
pub fn bell_numbers(upto: usize) -> Vec<BigUint> {
    stirling2_table(upto)
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn partition_generation() {
        assert_eq!(partitions_into(4, 2), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions_into(5, 3), vec![vec![3, 1, 1], vec![2, 2, 1]]);
        assert_eq!(partitions_into(0, 0), vec![Vec::<usize>::new()]);
        assert!(partitions_into(2, 3).is_empty());
        assert_eq!(
            compositions_into(4, 2),
            vec![vec![1, 3], vec![2, 2], vec![3, 1]]
        );
    }

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_transform(&big(&[1, 2, 5, 14]), 4, 2).unwrap(), 8u32.into());
        assert_eq!(multiset_transform(&big(&[1, 2, 5, 14, 50]), 5, 3).unwrap(), 8u32.into());
        assert_eq!(multiset_transform(&big(&[1]), 1, 1).unwrap(), 1u32.into());
        assert!(matches!(
            multiset_transform(&big(&[1, 2]), 4, 2),
            Err(Error::InsufficientPrefix { have: 2, need: 4 })
        ));
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_transform(&big(&[1, 2, 14, 201]), 4, 2).unwrap(), 68u32.into());
        assert_eq!(
            bell_transform(&big(&[1, 2, 14, 201, 4704]), 5, 2).unwrap(),
            1285u32.into()
        );
    }

    #[test]
    fn one_regular_closed_forms() {
        let ones = vec![BigUint::one(); 8];
        let parts = partitions_into_parts_table(8);
        let stirling = stirling2_table(8);
        for n in 1..=8 {
            for c in 1..=n {
                assert_eq!(multiset_transform(&ones, n, c).unwrap(), parts[n][c]);
                assert_eq!(bell_transform(&ones, n, c).unwrap(), stirling[n][c]);
            }
        }
    }

    #[test]
    fn oracle_sequences() {
        assert_eq!(partition_numbers(10), big(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]));
        assert_eq!(bell_numbers(6), big(&[1, 1, 2, 5, 15, 52, 203]));
        assert_eq!(stirling1_table(4)[4], big(&[0, 6, 11, 6, 1]));
        // row sums of p(n, c) are p(n)
        let parts = partitions_into_parts_table(12);
        let p = partition_numbers(12);
        for n in 0..=12 {
            assert_eq!(parts[n].iter().sum::<BigUint>(), p[n]);
        }
    }

    #[test]
    fn bell_numbers_match_bell_triangle() {
        // Aitken's array: independent of the Stirling recurrence
        let mut row = vec![BigUint::one()];
        let mut bells = vec![BigUint::one()];
        for _ in 0..10 {
            let mut next = vec![row.last().unwrap().clone()];
            for x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            bells.push(next[0].clone());
            row = next;
        }
        assert_eq!(bell_numbers(10), bells);
    }

    #[test]
    fn egf_single_value() {
        let t = verify_egf(&big(&[1]), 1).unwrap();
        assert_eq!(t.get(1, 1), BigUint::one());
        assert_eq!(t.ns(), vec![1]);
    }

    #[test]
    fn egf_one_regular_gives_bell_numbers() {
        let t = verify_egf(&vec![BigUint::one(); 6], 6).unwrap();
        let sums: Vec<BigUint> = (1..=6).map(|n| t.row_total(n)).collect();
        assert_eq!(sums, big(&[1, 2, 5, 15, 52, 203]));
    }

    #[test]
    fn count_table_rows() {
        let mut t = CountTable::new(TableKind::Unlabeled);
        t.add(3, 1, &5u32.into());
        t.add(3, 2, &2u32.into());
        t.add(3, 3, &1u32.into());
        assert_eq!(t.row_u64(3), vec![5, 2, 1]);
        assert_eq!(t.row_total(3), 8u32.into());
        assert_eq!(t.get(3, 4), BigUint::zero());
        assert!(!t.has_row(2));
    }
}
