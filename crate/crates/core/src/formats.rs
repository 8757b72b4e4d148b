//! Text formats: Reg files, cycle-index and tensor-term strings, DOT, TSV.
//!
//! A Reg file holds two lines per graph:
//!
//! ```text
//! [0,1][0,1][1,0][1,0]
//! V2 0 (t1^2+t2)/2
//! ```
//!
//! The first line is the sorted arc list. The second is `V`, the number of
//! adjacency cells holding a multiarc, the number of loops, and the cycle
//! index of the automorphism group. Lines end in a single `\n`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::canonical::canonical_labeling;
use crate::digraph::{ArcList, Digraph};
use crate::enumerate::GraphRecord;
use crate::error::{Error, Result};
use crate::lovelock::{Factor, Index, TensorTerm};
use crate::polya::{CycleIndex, RootedTable};
use crate::transforms::CountTable;

impl fmt::Display for CycleIndex {
    /// `(t1^3+3t1t2+2t3)/6`: monomials in descending exponent order, unit
    /// coefficients and exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (j, (exps, coeff)) in self.terms().enumerate() {
            if j > 0 {
                f.write_char('+')?;
            }
            let constant = exps.iter().all(|&e| e == 0);
            if !coeff.is_one() || constant {
                write!(f, "{coeff}")?;
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "t{}", i + 1)?,
                    _ => write!(f, "t{}^{e}", i + 1)?,
                }
            }
        }
        write!(f, ")/{}", self.denominator())
    }
}

impl FromStr for CycleIndex {
    type Err = String;

    /// Inverse of the `Display` rendering. The degree is the weight
    /// `sum i e_i` shared by all monomials.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let rest = s
            .strip_prefix('(')
            .ok_or_else(|| format!("cycle index must start with '(': {s:?}"))?;
        let close = rest
            .rfind(")/")
            .ok_or_else(|| format!("cycle index needs ')/denominator': {s:?}"))?;
        let body = &rest[..close];
        let denominator = parse_nat(&rest[close + 2..])?;

        let mut monomials: Vec<(BTreeMap<usize, u32>, BigUint)> = Vec::new();
        for mono in body.split('+') {
            monomials.push(parse_monomial(mono)?);
        }
        let weight = |m: &BTreeMap<usize, u32>| m.iter().map(|(&i, &e)| i * e as usize).sum::<usize>();
        let n = monomials.first().map(|(m, _)| weight(m)).unwrap_or(0);
        let mut terms = BTreeMap::new();
        for (vars, coeff) in monomials {
            if weight(&vars) != n {
                return Err(format!("monomials of different weight in {s:?}"));
            }
            let mut exps = vec![0u32; n];
            for (i, e) in vars {
                exps[i - 1] += e;
            }
            *terms.entry(exps).or_insert_with(BigUint::default) += coeff;
        }
        CycleIndex::from_terms(n, terms, denominator).map_err(|e| e.to_string())
    }
}

fn parse_nat(s: &str) -> std::result::Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a number, found {s:?}"));
    }
    BigUint::from_str(s).map_err(|e| e.to_string())
}

fn split_digits(s: &str) -> (&str, &str) {
    let end = s.bytes().position(|b| !b.is_ascii_digit()).unwrap_or(s.len());
    s.split_at(end)
}

fn parse_monomial(s: &str) -> std::result::Result<(BTreeMap<usize, u32>, BigUint), String> {
    let (digits, mut rest) = split_digits(s);
    let coeff = if digits.is_empty() {
        BigUint::one()
    } else {
        parse_nat(digits)?
    };
    if digits.is_empty() && rest.is_empty() {
        return Err("empty monomial".into());
    }
    let mut vars = BTreeMap::new();
    while !rest.is_empty() {
        let after_t = rest
            .strip_prefix('t')
            .ok_or_else(|| format!("expected 't' in monomial {s:?}"))?;
        let (index, tail) = split_digits(after_t);
        let index: usize = index.parse().map_err(|_| format!("bad variable index in {s:?}"))?;
        if index == 0 {
            return Err(format!("variable t0 in {s:?}"));
        }
        let (exp, tail) = match tail.strip_prefix('^') {
            Some(t) => {
                let (e, t) = split_digits(t);
                (e.parse::<u32>().map_err(|_| format!("bad exponent in {s:?}"))?, t)
            }
            None => (1, tail),
        };
        *vars.entry(index).or_insert(0) += exp;
        rest = tail;
    }
    Ok((vars, coeff))
}

impl fmt::Display for TensorTerm {
    /// Factors separated by one space; each factor is `R[^u^v_l_m]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(
                f,
                "R[^{}^{}_{}_{}]",
                factor.upper[0], factor.upper[1], factor.lower[0], factor.lower[1]
            )?;
        }
        Ok(())
    }
}

impl FromStr for TensorTerm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut factors = Vec::new();
        for word in s.split(' ').filter(|w| !w.is_empty()) {
            let body = word
                .strip_prefix("R[")
                .and_then(|w| w.strip_suffix(']'))
                .ok_or_else(|| format!("malformed factor {word:?}"))?;
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            let mut rest = body;
            while let Some(marker) = rest.chars().next() {
                let tail = &rest[1..];
                let end = tail.find(['^', '_']).unwrap_or(tail.len());
                let index = parse_index(&tail[..end])?;
                match marker {
                    '^' if lower.is_empty() => upper.push(index),
                    '_' => lower.push(index),
                    _ => return Err(format!("unexpected slot order in {word:?}")),
                }
                rest = &tail[end..];
            }
            if upper.len() != 2 || lower.len() != 2 {
                return Err(format!("factor {word:?} needs two upper and two lower slots"));
            }
            factors.push(Factor {
                upper: [upper[0], upper[1]],
                lower: [lower[0], lower[1]],
            });
        }
        Ok(TensorTerm { factors })
    }
}

fn parse_index(s: &str) -> std::result::Result<Index, String> {
    let mut chars = s.chars();
    let letter = chars
        .next()
        .filter(char::is_ascii_lowercase)
        .ok_or_else(|| format!("bad index {s:?}"))?;
    let round: usize = match chars.as_str() {
        "" => 0,
        digits => digits.parse().map_err(|_| format!("bad index {s:?}"))?,
    };
    Ok(Index(round * 26 + (letter as u8 - b'a') as usize))
}

/// `[t,h]` pairs, concatenated without separators.
pub fn format_arc_list(arcs: &ArcList) -> String {
    let mut s = String::with_capacity(6 * arcs.len());
    for (t, h) in arcs.iter() {
        let _ = write!(s, "[{t},{h}]");
    }
    s
}

/// The `V` line of a record.
pub fn format_v_line(rec: &GraphRecord) -> String {
    format!("V{} {} {}", rec.multiarcs, rec.loops, rec.cycle_index)
}

pub fn write_reg(records: &[GraphRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push_str(&format_arc_list(&rec.graph.to_arc_list()));
        out.push('\n');
        out.push_str(&format_v_line(rec));
        out.push('\n');
    }
    out
}

/// Parses an arc line; whitespace between and inside bracket pairs is ignored.
pub fn parse_arc_list(line: &str) -> std::result::Result<ArcList, String> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut arcs = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| format!("expected '[' at {rest:?}"))?;
        let close = inner
            .find(']')
            .ok_or_else(|| format!("unterminated pair at {rest:?}"))?;
        let (t, h) = inner[..close]
            .split_once(',')
            .ok_or_else(|| format!("expected 'tail,head' in {:?}", &inner[..close]))?;
        let t: usize = t.parse().map_err(|_| format!("bad tail {t:?}"))?;
        let h: usize = h.parse().map_err(|_| format!("bad head {h:?}"))?;
        arcs.push((t, h));
        rest = &inner[close + 1..];
    }
    Ok(ArcList(arcs))
}

/// Reads a Reg file. The node count of each record is the degree of its
/// cycle index; the graph must be regular, and the multiarc count, loop
/// count and cycle index on the `V` line must match the ones recomputed from
/// the arc list. Graphs are kept with the labeling found in the file.
pub fn read_reg(text: &str) -> Result<Vec<GraphRecord>> {
    let lines: Vec<&str> = text.split_terminator('\n').map(|l| l.trim_end_matches('\r')).collect();
    if !lines.len().is_multiple_of(2) {
        return Err(Error::parse(lines.len(), "record is missing its V line"));
    }
    let mut records = Vec::with_capacity(lines.len() / 2);
    for (pair, chunk) in lines.chunks(2).enumerate() {
        let arc_line = 2 * pair + 1;
        let v_line = arc_line + 1;
        let arcs = parse_arc_list(chunk[0]).map_err(|m| Error::parse(arc_line, m))?;
        let (multiarcs, loops, cycle_index) = parse_v_line(chunk[1]).map_err(|m| Error::parse(v_line, m))?;

        let n = cycle_index.degree();
        let graph = Digraph::from_arc_list(&arcs, n).map_err(|e| Error::Inconsistent {
            line: arc_line,
            message: e.to_string(),
        })?;
        if n > 0 && (arcs.len() % n != 0 || !graph.is_k_regular(arcs.len() / n)) {
            return Err(Error::Inconsistent {
                line: arc_line,
                message: format!("{} arcs on {n} nodes do not form a regular digraph", arcs.len()),
            });
        }
        let group = canonical_labeling(&graph).group;
        let rec = GraphRecord::from_parts(graph, &group);
        let mismatch = |what: &str, file: String, actual: String| Error::Inconsistent {
            line: v_line,
            message: format!("{what} is {file} in the file but {actual} for the arc list"),
        };
        if rec.multiarcs != multiarcs {
            return Err(mismatch("multiarc count", multiarcs.to_string(), rec.multiarcs.to_string()));
        }
        if rec.loops != loops {
            return Err(mismatch("loop count", loops.to_string(), rec.loops.to_string()));
        }
        if rec.cycle_index != cycle_index {
            return Err(mismatch(
                "cycle index",
                cycle_index.to_string(),
                rec.cycle_index.to_string(),
            ));
        }
        records.push(rec);
    }
    Ok(records)
}

fn parse_v_line(line: &str) -> std::result::Result<(usize, usize, CycleIndex), String> {
    let rest = line
        .strip_prefix('V')
        .ok_or_else(|| format!("expected a line starting with 'V', found {line:?}"))?;
    let mut fields = rest.splitn(3, ' ');
    let mut number = |name: &str| -> std::result::Result<usize, String> {
        let f = fields.next().ok_or_else(|| format!("missing {name}"))?;
        f.parse().map_err(|_| format!("bad {name} {f:?}"))
    };
    let multiarcs = number("multiarc count")?;
    let loops = number("loop count")?;
    let z = fields.next().ok_or("missing cycle index")?;
    Ok((multiarcs, loops, z.parse()?))
}

/// Counts records whose `V` line starts with `prefix`, the text-level filter
/// (`"V0"`: no multiarcs; `"V0 0"`: no multiarcs and no loops).
pub fn count_v_lines_with_prefix(reg_text: &str, prefix: &str) -> usize {
    reg_text
        .lines()
        .skip(1)
        .step_by(2)
        .filter(|l| l.starts_with(prefix))
        .count()
}

/// Graphviz description of `g`: every node, then one edge per arc.
pub fn export_dot(g: &Digraph, name: &str) -> String {
    let mut s = format!("digraph {name} {{\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for (t, h) in g.to_arc_list().iter() {
        let _ = writeln!(s, "  {t} -> {h};");
    }
    s.push_str("}\n");
    s
}

/// Tab-separated counts: header `n, 1..=max, sum`, one row per `n`, cells
/// beyond `c = n` blank.
pub fn export_table(t: &CountTable) -> String {
    let max = t.max_n().unwrap_or(0);
    let mut s = String::from("n");
    for c in 1..=max {
        let _ = write!(s, "\t{c}");
    }
    s.push_str("\tsum\n");
    for n in t.ns() {
        let _ = write!(s, "{n}");
        for c in 1..=max {
            if c <= n {
                let _ = write!(s, "\t{}", t.get(n, c));
            } else {
                s.push('\t');
            }
        }
        let _ = writeln!(s, "\t{}", t.row_total(n));
    }
    s
}

/// Tab-separated rooted counts: header `n, 0..=max`; row `n` stops at `r = n`.
pub fn export_rooted(t: &RootedTable) -> String {
    let max = t.rows.keys().next_back().copied().unwrap_or(0);
    let mut s = String::from("n");
    for r in 0..=max {
        let _ = write!(s, "\t{r}");
    }
    s.push('\n');
    for (n, row) in &t.rows {
        let _ = write!(s, "{n}");
        for v in &row.coefficients {
            let _ = write!(s, "\t{v}");
        }
        s.push('\n');
    }
    s
}
