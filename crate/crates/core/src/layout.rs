//! Linear arrangements, their cut measures, and conversions to and from
//! linear reassembling trees.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::set::VertexSet;
use crate::tree::ReassemblyTree;

/// A vertex sequence; position `i` (1-based) holds the vertex placed at `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LinearArrangement {
    order: Vec<Vertex>,
}

impl LinearArrangement {
    /// Accepts any sequence of distinct positive ids.
    pub fn new(order: Vec<Vertex>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &v in &order {
            if v == 0 || v > crate::set::MAX_VERTICES {
                return Err(Error::PermutationMismatch(format!("invalid vertex id {v}")));
            }
            if seen.contains(v) {
                return Err(Error::PermutationMismatch(format!("vertex {v} repeated")));
            }
            seen.insert(v);
        }
        if order.is_empty() {
            return Err(Error::PermutationMismatch("empty arrangement".into()));
        }
        Ok(LinearArrangement { order })
    }

    /// Parses one line of whitespace-separated ids.
    pub fn parse(text: &str) -> Result<Self> {
        let order = text
            .split_whitespace()
            .map(|t| {
                t.parse::<Vertex>()
                    .map_err(|_| Error::PermutationMismatch(format!("`{t}` is not a vertex id")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order)
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.order.iter().collect()
    }

    pub fn first(&self) -> Vertex {
        self.order[0]
    }

    pub fn last(&self) -> Vertex {
        self.order[self.order.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        LinearArrangement {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    /// 1-based positions indexed by vertex id; unused ids hold 0.
    pub fn positions(&self) -> Vec<usize> {
        let max = self.order.iter().copied().max().unwrap_or(0);
        let mut pos = vec![0; max + 1];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn check_over(&self, g: &Graph) -> Result<()> {
        let found = self.vertex_set();
        if found == g.vertices() && self.order.len() == g.n() {
            Ok(())
        } else {
            Err(Error::PermutationMismatch(format!(
                "arrangement covers {found}, graph has {}",
                g.vertices()
            )))
        }
    }

    /// Subsequence on the vertices of `keep`.
    pub fn restrict(&self, keep: VertexSet) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if !keep.is_subset(self.vertex_set()) {
            return Err(Error::NotSubset(keep));
        }
        Ok(LinearArrangement {
            order: self.order.iter().copied().filter(|&v| keep.contains(v)).collect(),
        })
    }
}

impl fmt::Display for LinearArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for LinearArrangement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementReport {
    pub cuts: Vec<usize>,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

/// Prefix cuts; entry `i` is the number of edges leaving the first `i + 1`
/// vertices. Does not check that `order` covers the graph.
pub fn prefix_cuts(g: &Graph, order: &[Vertex]) -> Vec<usize> {
    let mut prefix = VertexSet::EMPTY;
    let mut cut = 0usize;
    order
        .iter()
        .map(|&v| {
            let inside = (g.neighbors(v) & prefix).len();
            cut = cut + g.deg(v) - 2 * inside;
            prefix.insert(v);
            cut
        })
        .collect()
}

/// Sum of edge lengths, computed independently of the cuts.
pub fn total_length(g: &Graph, phi: &LinearArrangement) -> usize {
    let pos = phi.positions();
    g.edges().iter().map(|e| pos[e.lo].abs_diff(pos[e.hi])).sum()
}

pub fn evaluate_arrangement(g: &Graph, phi: &LinearArrangement) -> Result<ArrangementReport> {
    phi.check_over(g)?;
    let cuts = prefix_cuts(g, phi.order());
    let alpha = cuts.iter().copied().max().unwrap_or(0);
    let beta = cuts.iter().sum();
    let gamma = total_length(g, phi);
    debug_assert_eq!(beta, gamma, "cut sum differs from total edge length");
    Ok(ArrangementReport {
        cuts,
        alpha,
        beta,
        gamma,
    })
}

pub fn edge_length(g: &Graph, phi: &LinearArrangement, e: Edge) -> Result<usize> {
    phi.check_over(g)?;
    g.check_edge(e)?;
    let pos = phi.positions();
    Ok(pos[e.lo].abs_diff(pos[e.hi]))
}

/// Arrangement read off a linear tree. The two vertices of the smallest
/// non-singleton cluster go first, lower degree first, ties by id.
pub fn induce_arrangement(g: &Graph, tree: &ReassemblyTree) -> Result<LinearArrangement> {
    if tree.ground_set() != g.vertices() {
        return Err(Error::GroundSetMismatch {
            expected: g.vertices(),
            found: tree.ground_set(),
        });
    }
    let chain = tree.chain()?;
    if chain.is_empty() {
        return Ok(LinearArrangement {
            order: tree.ground_set().to_vec(),
        });
    }
    let mut first_two = chain[0].to_vec();
    first_two.sort_by_key(|&v| (g.deg(v), v));
    let mut order = first_two;
    for w in chain.windows(2) {
        order.extend((w[1] - w[0]).iter());
    }
    Ok(LinearArrangement { order })
}

/// Linear tree whose clusters are the prefixes of `phi`.
pub fn induce_reassembling(g: &Graph, phi: &LinearArrangement) -> Result<ReassemblyTree> {
    phi.check_over(g)?;
    ReassemblyTree::linear(phi.order())
}

/// True when `w` is one of the first two vertices of the linear tree and
/// its degree does not exceed the other one's.
pub fn is_anchored_reassembling(g: &Graph, tree: &ReassemblyTree, w: Vertex) -> bool {
    if tree.ground_set() != g.vertices() || !g.contains_vertex(w) {
        return false;
    }
    if g.n() == 1 {
        return true;
    }
    match tree.chain() {
        Ok(chain) => {
            let start = chain[0];
            start.contains(w) && {
                let other = (start - VertexSet::singleton(w)).min_vertex().expect("pair");
                g.deg(w) <= g.deg(other)
            }
        }
        Err(_) => false,
    }
}

/// True when `phi` starts at `w` and the second vertex has degree at
/// least `deg(w)`.
pub fn is_anchored_arrangement(g: &Graph, phi: &LinearArrangement, w: Vertex) -> bool {
    if phi.check_over(g).is_err() || phi.first() != w {
        return false;
    }
    phi.len() == 1 || g.deg(w) <= g.deg(phi.order()[1])
}

pub fn restrict_tree(tree: &ReassemblyTree, keep: VertexSet) -> Result<ReassemblyTree> {
    tree.restrict(keep)
}

pub fn restrict_arrangement(phi: &LinearArrangement, keep: VertexSet) -> Result<LinearArrangement> {
    phi.restrict(keep)
}
