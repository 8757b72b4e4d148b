//! Canonical form under simultaneous row/column relabeling, and automorphism groups.
//!
//! The canonical form of a digraph is the relabeling whose row-major adjacency
//! flattening is lexicographically smallest. It is found by a depth-first
//! search that places one node per position. Nodes not yet placed live in an
//! ordered partition of the remaining positions; placing node `v` at position
//! `r` fixes row `r` completely, because the lexicographically best row puts
//! the entries `adj[v][w]` in ascending order inside every cell. Sorting each
//! cell by that key also splits it, so later choices are restricted to nodes
//! that agree on every row fixed so far.

use std::cmp::Ordering;
use std::fmt;

use crate::digraph::{Digraph, MAX_NODES};
use crate::error::{Error, Result};

/// A bijection on `0..n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(mapping));
            }
            seen[x] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `e[i - 1]` is the number of cycles of length `i`, for `i` in `1..=n`.
    pub fn cycle_type(&self) -> Vec<u32> {
        let n = self.0.len();
        let mut counts = vec![0u32; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            counts[len - 1] += 1;
        }
        counts
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Returns the digraph `h` with `h[p(r)][p(c)] = g[r][c]`.
pub fn apply_permutation(g: &Digraph, p: &Permutation) -> Result<Digraph> {
    let n = g.n();
    if p.len() != n {
        return Err(Error::SizeMismatch { perm: p.len(), n });
    }
    let mut out = Digraph::empty(n)?;
    for r in 0..n {
        for c in 0..n {
            out.set(p.apply(r), p.apply(c), g.get(r, c));
        }
    }
    Ok(out)
}

/// The permutations of the nodes that leave the adjacency matrix unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    /// Wraps an explicit element list; elements are sorted and deduplicated.
    pub fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        AutomorphismGroup { n, elements }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Checks closure under composition and the presence of the identity.
    pub fn is_group(&self) -> bool {
        if !self.contains(&Permutation::identity(self.n)) {
            return false;
        }
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// Result of a full canonical labeling search.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    /// Canonical representative of the isomorphism class.
    pub form: Digraph,
    /// Maps each canonical position to the node of the input placed there.
    pub labeling: Permutation,
    /// Automorphism group of the input digraph.
    pub group: AutomorphismGroup,
}

pub fn canonical_form(g: &Digraph) -> Digraph {
    canonical_labeling(g).form
}

pub fn automorphism_group(g: &Digraph) -> AutomorphismGroup {
    canonical_labeling(g).group
}

pub fn canonical_labeling(g: &Digraph) -> CanonicalLabeling {
    let n = g.n();
    let mut search = MinSearch {
        n,
        adj: g.flat(),
        current: vec![0; n * n],
        best: None,
        leaves: Vec::new(),
        order: [0; MAX_NODES],
    };
    search.descend(0, Cells::unit(n));
    let best = search.best.expect("search always reaches a leaf");
    let form = Digraph::from_flat(n, best).expect("canonical matrix has the input size");
    let labeling = Permutation(search.leaves[0].clone());
    let first_inv = labeling.inverse();
    let elements = search
        .leaves
        .iter()
        .map(|leaf| Permutation(leaf.clone()).compose(&first_inv))
        .collect();
    CanonicalLabeling {
        form,
        labeling,
        group: AutomorphismGroup::from_elements(n, elements),
    }
}

/// True iff `g` equals its own canonical form.
pub fn is_canonical(g: &Digraph) -> bool {
    prefix_test(g.flat(), g.n(), g.n(), false).is_some()
}

/// Ordered partition of positions: positions `< r` hold a fixed node each,
/// the rest are grouped into cells of interchangeable nodes.
#[derive(Clone, Copy)]
pub(crate) struct Cells {
    seq: [u8; MAX_NODES],
    starts: u32,
}

impl Cells {
    pub(crate) fn unit(n: usize) -> Self {
        let mut seq = [0u8; MAX_NODES];
        for (i, s) in seq.iter_mut().enumerate().take(n) {
            *s = i as u8;
        }
        Cells { seq, starts: 1 }
    }

    #[inline]
    fn cell_end(&self, p: usize, n: usize) -> usize {
        let above = self.starts >> (p + 1);
        if above == 0 {
            n
        } else {
            (p + 1 + above.trailing_zeros() as usize).min(n)
        }
    }

    /// Places the node at index `idx` onto position `r` (the start of its
    /// cell), splits every later cell by that node's out-row, and writes the
    /// resulting canonical row into `row`.
    #[inline]
    fn individualize(&self, adj: &[u8], n: usize, r: usize, idx: usize, row: &mut [u8]) -> Cells {
        let mut next = *self;
        next.seq.swap(r, idx);
        next.starts |= 1 << r;
        if r + 1 < n {
            next.starts |= 1 << (r + 1);
        }
        let v = next.seq[r] as usize;
        let out = &adj[v * n..(v + 1) * n];
        let mut s = r + 1;
        while s < n {
            let t = next.cell_end(s, n);
            if t - s > 1 {
                let cell = &mut next.seq[s..t];
                cell.sort_unstable_by_key(|&w| out[w as usize]);
                for p in s + 1..t {
                    if out[next.seq[p] as usize] != out[next.seq[p - 1] as usize] {
                        next.starts |= 1 << p;
                    }
                }
            }
            s = t;
        }
        for (c, slot) in row.iter_mut().enumerate().take(n) {
            *slot = out[next.seq[c] as usize];
        }
        next
    }
}

struct MinSearch<'a> {
    n: usize,
    adj: &'a [u8],
    current: Vec<u8>,
    best: Option<Vec<u8>>,
    leaves: Vec<Vec<usize>>,
    order: [u8; MAX_NODES],
}

impl MinSearch<'_> {
    fn descend(&mut self, r: usize, cells: Cells) {
        let n = self.n;
        if r == n {
            let labeling: Vec<usize> = self.order[..n].iter().map(|&x| x as usize).collect();
            match self.best.as_deref().map(|b| self.current.as_slice().cmp(b)) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => self.leaves.push(labeling),
                _ => {
                    self.best = Some(self.current.clone());
                    self.leaves.clear();
                    self.leaves.push(labeling);
                }
            }
            return;
        }
        let end = cells.cell_end(r, n);
        let mut children: Vec<(Cells, [u8; MAX_NODES])> = Vec::with_capacity(end - r);
        let mut min_row = [u8::MAX; MAX_NODES];
        for idx in r..end {
            let mut row = [0u8; MAX_NODES];
            let child = cells.individualize(self.adj, n, r, idx, &mut row);
            match row[..n].cmp(&min_row[..n]) {
                Ordering::Less => {
                    min_row = row;
                    children.clear();
                    children.push((child, row));
                }
                Ordering::Equal => children.push((child, row)),
                Ordering::Greater => {}
            }
        }
        for (child, row) in children {
            self.current[r * n..(r + 1) * n].copy_from_slice(&row[..n]);
            if let Some(best) = &self.best {
                let upto = (r + 1) * n;
                if self.current[..upto] > best[..upto] {
                    continue;
                }
            }
            self.order[r] = child.seq[r];
            self.descend(r + 1, child);
        }
    }
}

/// Tests whether a matrix whose first `filled` rows are final can still be
/// the canonical form of some completion. Only relabelings that bring filled
/// rows to the front can be evaluated; if one of them produces a smaller
/// prefix, no completion is canonical and `None` is returned.
///
/// With `filled == n` this is an exact canonicity test. When `collect` is set
/// the automorphisms found on the way are returned, which for a canonical
/// complete matrix is its whole automorphism group.
pub(crate) fn prefix_test(adj: &[u8], n: usize, filled: usize, collect: bool) -> Option<Vec<Permutation>> {
    let mut state = PrefixSearch {
        n,
        filled,
        adj,
        collect,
        order: [0; MAX_NODES],
        found: Vec::new(),
    };
    if state.descend(0, Cells::unit(n)) {
        Some(state.found)
    } else {
        None
    }
}

struct PrefixSearch<'a> {
    n: usize,
    filled: usize,
    adj: &'a [u8],
    collect: bool,
    order: [u8; MAX_NODES],
    found: Vec<Permutation>,
}

impl PrefixSearch<'_> {
    /// Returns false as soon as a smaller prefix is found.
    fn descend(&mut self, r: usize, cells: Cells) -> bool {
        let n = self.n;
        if r == self.filled {
            if self.collect && r == n {
                self.found
                    .push(Permutation(self.order[..n].iter().map(|&x| x as usize).collect()));
            }
            return true;
        }
        let end = cells.cell_end(r, n);
        let target = &self.adj[r * n..(r + 1) * n];
        for idx in r..end {
            if cells.seq[idx] as usize >= self.filled {
                continue;
            }
            let mut row = [0u8; MAX_NODES];
            let child = cells.individualize(self.adj, n, r, idx, &mut row);
            match row[..n].cmp(target) {
                Ordering::Less => return false,
                Ordering::Greater => {}
                Ordering::Equal => {
                    self.order[r] = child.seq[r];
                    if !self.descend(r + 1, child) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
