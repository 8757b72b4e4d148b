//! Correspondence between 2-regular digraphs and full contractions of
//! products of Riemann tensors.
//!
//! Factor `i` of a product is node `i`. An index carried down by factor `b`
//! and up by factor `t` is an arc `b -> t`; its two ends are the bottom copy
//! of `b` and the top copy of `t` in the bipartite picture. Loops are indices
//! contracted within a single factor.

use std::fmt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Degree-2 bipartite multigraph between `n` bottom and `n` top nodes.
/// Edges are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Validates the degree-2 condition on both sides.
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut bottom = vec![0usize; n];
        let mut top = vec![0usize; n];
        for &(b, t) in &edges {
            if b >= n || t >= n {
                return Err(Error::NodeOutOfRange { node: b.max(t), n });
            }
            bottom[b] += 1;
            top[t] += 1;
        }
        for (side, degrees) in [('b', &bottom), ('t', &top)] {
            if let Some((node, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d != 2) {
                return Err(Error::BipartiteDegree { side, node, degree });
            }
        }
        edges.sort_unstable();
        Ok(BipartiteGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(bottom, top)` pairs, sorted, repeated for parallel edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn require_two_regular(g: &Digraph) -> Result<()> {
    if g.is_k_regular(2) {
        Ok(())
    } else {
        Err(Error::NotRegular { k: 2 })
    }
}

/// Splits every node into a bottom (tails) and a top (heads) copy.
pub fn to_bipartite(g: &Digraph) -> Result<BipartiteGraph> {
    require_two_regular(g)?;
    BipartiteGraph::new(g.n(), g.to_arc_list().0)
}

/// Coalesces the bottom and top copy of every node.
pub fn from_bipartite(b: &BipartiteGraph) -> Result<Digraph> {
    Digraph::from_arc_list(&b.edges.clone().into(), b.n)
}

/// A contraction index, printed as `a`..`z`, then `a1`..`z1`, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(pub usize);

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = (b'a' + (self.0 % 26) as u8) as char;
        match self.0 / 26 {
            0 => write!(f, "{letter}"),
            round => write!(f, "{letter}{round}"),
        }
    }
}

/// One Riemann factor: two contravariant (upper) and two covariant (lower) slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub upper: [Index; 2],
    pub lower: [Index; 2],
}

impl Factor {
    /// Indices contracted within this factor.
    pub fn self_contractions(&self) -> usize {
        self.lower
            .iter()
            .filter(|x| self.upper.contains(x))
            .count()
    }
}

/// A fully contracted product of Riemann tensors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorTerm {
    pub factors: Vec<Factor>,
}

impl TensorTerm {
    pub fn index_count(&self) -> usize {
        2 * self.factors.len()
    }

    /// True iff indices are exactly `0..2n`, each once upper and once lower.
    pub fn is_fully_contracted(&self) -> bool {
        let m = self.index_count();
        let mut up = vec![0usize; m];
        let mut down = vec![0usize; m];
        for f in &self.factors {
            for x in f.upper {
                if x.0 >= m {
                    return false;
                }
                up[x.0] += 1;
            }
            for x in f.lower {
                if x.0 >= m {
                    return false;
                }
                down[x.0] += 1;
            }
        }
        up.iter().chain(&down).all(|&c| c == 1)
    }

    pub fn self_contractions(&self) -> usize {
        self.factors.iter().map(Factor::self_contractions).sum()
    }

    /// The digraph whose arc `b -> t` is an index lowered on factor `b` and
    /// raised on factor `t`.
    pub fn to_digraph(&self) -> Result<Digraph> {
        let n = self.factors.len();
        let m = self.index_count();
        let mut tail = vec![None; m];
        let mut head = vec![None; m];
        for (i, f) in self.factors.iter().enumerate() {
            for x in f.lower {
                *tail.get_mut(x.0).ok_or(Error::NodeOutOfRange { node: x.0, n: m })? = Some(i);
            }
            for x in f.upper {
                *head.get_mut(x.0).ok_or(Error::NodeOutOfRange { node: x.0, n: m })? = Some(i);
            }
        }
        let arcs = tail
            .into_iter()
            .zip(head)
            .map(|pair| match pair {
                (Some(t), Some(h)) => Ok((t, h)),
                _ => Err(Error::NotRegular { k: 2 }),
            })
            .collect::<Result<Vec<_>>>()?;
        Digraph::from_arc_list(&arcs.into(), n)
    }
}

/// Assigns index `j` to the `j`-th arc of the sorted arc list. It fills a
/// lower slot of the tail factor and an upper slot of the head factor; each
/// factor's slots are filled in arc-list order.
pub fn render_term(g: &Digraph) -> Result<TensorTerm> {
    require_two_regular(g)?;
    let n = g.n();
    let mut lower: Vec<Vec<Index>> = vec![Vec::with_capacity(2); n];
    let mut upper: Vec<Vec<Index>> = vec![Vec::with_capacity(2); n];
    for (j, &(t, h)) in g.to_arc_list().iter().enumerate() {
        lower[t].push(Index(j));
        upper[h].push(Index(j));
    }
    let factors = lower
        .into_iter()
        .zip(upper)
        .map(|(lo, up)| Factor {
            upper: [up[0], up[1]],
            lower: [lo[0], lo[1]],
        })
        .collect();
    Ok(TensorTerm { factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[u8]]) -> Digraph {
        Digraph::from_rows(rows).unwrap()
    }

    #[test]
    fn bipartite_expansion() {
        let b = to_bipartite(&g(&[&[0, 2], &[2, 0]])).unwrap();
        assert_eq!(b.edges(), &[(0, 1), (0, 1), (1, 0), (1, 0)]);
        let b = to_bipartite(&g(&[&[2]])).unwrap();
        assert_eq!(b.edges(), &[(0, 0), (0, 0)]);
        let b = to_bipartite(&g(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(b.edges(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn coalescing() {
        let b = BipartiteGraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(from_bipartite(&b).unwrap(), g(&[&[2]]));
        let b = BipartiteGraph::new(2, vec![(1, 0), (0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(from_bipartite(&b).unwrap(), g(&[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn degree_violations() {
        let err = BipartiteGraph::new(2, vec![(0, 0), (0, 0), (0, 1), (1, 1)]).unwrap_err();
        assert!(matches!(err, Error::BipartiteDegree { side: 'b', node: 0, degree: 3 }));
        assert!(to_bipartite(&g(&[&[1, 0], &[1, 1]])).is_err());
        assert!(render_term(&g(&[&[1]])).is_err());
    }

    #[test]
    fn double_two_cycle_term() {
        // arcs a,b: 0->1 and c,d: 1->0
        let term = render_term(&g(&[&[0, 2], &[2, 0]])).unwrap();
        assert_eq!(term.to_string(), "R[^c^d_a_b] R[^a^b_c_d]");
        assert!(term.is_fully_contracted());
        assert_eq!(term.self_contractions(), 0);
    }

    #[test]
    fn double_loop_term() {
        let term = render_term(&g(&[&[2]])).unwrap();
        assert_eq!(term.to_string(), "R[^a^b_a_b]");
        assert_eq!(term.self_contractions(), 2);
        assert_eq!(term.to_digraph().unwrap(), g(&[&[2]]));
    }

    #[test]
    fn index_names() {
        assert_eq!(Index(0).to_string(), "a");
        assert_eq!(Index(25).to_string(), "z");
        assert_eq!(Index(26).to_string(), "a1");
        assert_eq!(Index(53).to_string(), "b2");
    }
}
