//! Adjacency-matrix digraphs with loops and multiarcs.

use std::fmt;

use crate::error::{Error, Result};

/// Largest node count the fixed-width search structures support.
pub const MAX_NODES: usize = 16;

/// A directed multigraph on nodes `0..n`, stored as a row-major adjacency
/// matrix of arc multiplicities. `adj[r][c]` counts the arcs from `r` to `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    adj: Vec<u8>,
}

/// Ordered `(tail, head)` list describing a labeled digraph.
///
/// Lists produced by [`Digraph::to_arc_list`] are sorted ascending, with
/// multiarcs appearing as repeated pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ArcList(pub Vec<(usize, usize)>);

/// Weak connected components: `assignment[v]` is the component id of node `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub count: usize,
    pub assignment: Vec<usize>,
}

impl Digraph {
    /// The digraph on `n` nodes with no arcs.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::TooManyNodes { n, max: MAX_NODES });
        }
        Ok(Digraph {
            n,
            adj: vec![0; n * n],
        })
    }

    /// Builds a digraph from a square matrix given row by row.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut g = Digraph::empty(n)?;
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    n,
                });
            }
            g.adj[r * n..(r + 1) * n].copy_from_slice(row);
        }
        Ok(g)
    }

    /// Builds a digraph from a row-major flattening of length `n * n`.
    pub fn from_flat(n: usize, adj: Vec<u8>) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::TooManyNodes { n, max: MAX_NODES });
        }
        if adj.len() != n * n {
            return Err(Error::NotSquare {
                row: 0,
                len: adj.len(),
                n,
            });
        }
        Ok(Digraph { n, adj })
    }

    pub fn from_arc_list(arcs: &ArcList, n: usize) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        for &(t, h) in &arcs.0 {
            if t >= n || h >= n {
                return Err(Error::NodeOutOfRange {
                    node: t.max(h),
                    n,
                });
            }
            let cell = &mut g.adj[t * n + h];
            *cell = cell.checked_add(1).ok_or(Error::MultiplicityOverflow)?;
        }
        Ok(g)
    }

    pub fn to_arc_list(&self) -> ArcList {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for r in 0..self.n {
            for c in 0..self.n {
                for _ in 0..self.get(r, c) {
                    arcs.push((r, c));
                }
            }
        }
        ArcList(arcs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.adj[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        self.adj[r * self.n + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.adj[r * self.n..(r + 1) * self.n]
    }

    /// Row-major flattening of the adjacency matrix.
    pub fn flat(&self) -> &[u8] {
        &self.adj
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|&x| x as usize).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).map(|r| self.get(r, v) as usize).sum()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(|&x| x as usize).sum()
    }

    /// True iff every in- and out-degree equals `k`. Loops count once toward each.
    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.out_degree(v) == k && self.in_degree(v) == k)
    }

    /// Trace of the adjacency matrix.
    pub fn loop_count(&self) -> usize {
        (0..self.n).map(|v| self.get(v, v) as usize).sum()
    }

    /// Number of matrix cells holding 2 or more arcs. A double loop is one cell.
    pub fn multiarc_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x >= 2).count()
    }

    /// Components of the underlying simple graph (directions dropped, loops ignored).
    /// Ids are assigned in order of each component's smallest node.
    pub fn weak_components(&self) -> ComponentPartition {
        let n = self.n;
        let mut assignment = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if assignment[start] != usize::MAX {
                continue;
            }
            assignment[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if w != v
                        && assignment[w] == usize::MAX
                        && (self.get(v, w) > 0 || self.get(w, v) > 0)
                    {
                        assignment[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        ComponentPartition { count, assignment }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|r| self.row(r)))
            .finish()
    }
}

impl ArcList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }
}

impl From<Vec<(usize, usize)>> for ArcList {
    fn from(arcs: Vec<(usize, usize)>) -> Self {
        ArcList(arcs)
    }
}
