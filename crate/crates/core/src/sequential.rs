//! Sequential reassembling driven by an edge ordering, partition chains,
//! and the maps between orderings and strict binary trees.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::set::VertexSet;
use crate::tree::ReassemblyTree;

/// A sequence of edges, each at most once.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeOrdering {
    edges: Vec<Edge>,
}

impl EdgeOrdering {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &e in &edges {
            if !seen.insert(e) {
                return Err(Error::IncompleteOrdering(format!("edge {e} repeated")));
            }
        }
        Ok(EdgeOrdering { edges })
    }

    /// One edge `u v` per line; blank lines and `#` lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ids: Vec<&str> = line.split_whitespace().collect();
            let parsed: Option<Vec<usize>> = ids.iter().map(|t| t.parse().ok()).collect();
            match parsed.as_deref() {
                Some(&[u, v]) if u != v && u > 0 && v > 0 => edges.push(Edge::new(u, v)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("expected an edge `u v`, got `{line}`"),
                    })
                }
            }
        }
        Self::new(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Checks that the ordering is a permutation of `E(g)`.
    pub fn check_over(&self, g: &Graph) -> Result<()> {
        for &e in &self.edges {
            if !g.has_edge(e.lo, e.hi) {
                return Err(Error::IncompleteOrdering(format!("{e} is not an edge")));
            }
        }
        if self.edges.len() != g.m() {
            return Err(Error::IncompleteOrdering(format!(
                "{} of {} edges listed",
                self.edges.len(),
                g.m()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for EdgeOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{} {}", e.lo, e.hi)?;
        }
        Ok(())
    }
}

impl Serialize for EdgeOrdering {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges.serialize(s)
    }
}

/// `n` partitions of the vertex set, from all singletons to one block,
/// each obtained from the previous one by merging two blocks.
/// Blocks are kept sorted by minimum vertex.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PartitionChain {
    partitions: Vec<Vec<VertexSet>>,
}

impl PartitionChain {
    pub fn new(ground: VertexSet, partitions: Vec<Vec<VertexSet>>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidChain(m.to_string()));
        if partitions.len() != ground.len() {
            return bad(&format!(
                "expected {} partitions, found {}",
                ground.len(),
                partitions.len()
            ));
        }
        let partitions: Vec<Vec<VertexSet>> = partitions
            .into_iter()
            .map(|mut p| {
                p.sort_by_key(|b| b.min_vertex());
                p
            })
            .collect();
        for p in &partitions {
            let mut union = VertexSet::EMPTY;
            for &b in p {
                if b.is_empty() || !union.is_disjoint(b) {
                    return bad("blocks must be non-empty and disjoint");
                }
                union = union | b;
            }
            if union != ground {
                return bad("a partition does not cover the ground set");
            }
        }
        if partitions[0].len() != ground.len() {
            return bad("the first partition must consist of singletons");
        }
        for w in partitions.windows(2) {
            if merged_pair(&w[0], &w[1]).is_none() {
                return bad("consecutive partitions must differ by one merge");
            }
        }
        Ok(PartitionChain { partitions })
    }

    /// The chain that merges the children of each internal node of `tree`
    /// in post-order.
    pub fn from_tree(tree: &ReassemblyTree) -> Self {
        let mut current: Vec<VertexSet> = tree.ground_set().iter().map(VertexSet::singleton).collect();
        let mut partitions = vec![current.clone()];
        for x in tree.post_order() {
            if x.len() > 1 {
                current.retain(|b| !b.is_subset(x));
                current.push(x);
                current.sort_by_key(|b| b.min_vertex());
                partitions.push(current.clone());
            }
        }
        PartitionChain { partitions }
    }

    pub fn partitions(&self) -> &[Vec<VertexSet>] {
        &self.partitions
    }

    pub fn ground_set(&self) -> VertexSet {
        self.partitions[0].iter().fold(VertexSet::EMPTY, |a, &b| a | b)
    }

    /// The pair of blocks merged at each step, smaller minimum first.
    pub fn merges(&self) -> Vec<(VertexSet, VertexSet)> {
        self.partitions
            .windows(2)
            .map(|w| merged_pair(&w[0], &w[1]).expect("validated chain"))
            .collect()
    }

    /// Every block appearing in the chain.
    pub fn blocks(&self) -> BTreeSet<VertexSet> {
        self.partitions.iter().flatten().copied().collect()
    }

    pub fn to_tree(&self) -> ReassemblyTree {
        ReassemblyTree::validate(self.ground_set(), self.blocks()).expect("a chain describes a tree")
    }
}

fn merged_pair(before: &[VertexSet], after: &[VertexSet]) -> Option<(VertexSet, VertexSet)> {
    if after.len() + 1 != before.len() {
        return None;
    }
    let gone: Vec<VertexSet> = before.iter().filter(|b| !after.contains(b)).copied().collect();
    let new: Vec<VertexSet> = after.iter().filter(|b| !before.contains(b)).copied().collect();
    match (gone.as_slice(), new.as_slice()) {
        (&[a, b], &[c]) if a | b == c => Some((a, b)),
        _ => None,
    }
}

/// One merge of a sequential reassembling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// The ordering entry that triggered the merge.
    pub edge: Edge,
    pub merged: [VertexSet; 2],
    /// All edges joining the two merged blocks.
    pub bridges: Vec<Edge>,
    /// Bridges other than `edge`; they are removed from the ordering
    /// without triggering a merge of their own.
    pub consumed: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequentialTrace {
    pub chain: PartitionChain,
    pub steps: Vec<TraceStep>,
}

/// Runs the sequential process and records each merge.
pub fn seq_trace(g: &Graph, pi: &EdgeOrdering) -> Result<SequentialTrace> {
    pi.check_over(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut block_of: Vec<VertexSet> = (0..=g.n())
        .map(|v| if v == 0 { VertexSet::EMPTY } else { VertexSet::singleton(v) })
        .collect();
    let mut current: Vec<VertexSet> = g.vertices().iter().map(VertexSet::singleton).collect();
    let mut partitions = vec![current.clone()];
    let mut steps = Vec::new();
    for &e in pi.edges() {
        let a = block_of[e.lo];
        let b = block_of[e.hi];
        if a == b {
            continue;
        }
        let (a, b) = if a.min_vertex() < b.min_vertex() { (a, b) } else { (b, a) };
        let bridges = g.bridges_unchecked(a, b);
        let consumed = bridges.iter().copied().filter(|&f| f != e).collect();
        let joined = a | b;
        for v in joined {
            block_of[v] = joined;
        }
        current.retain(|&x| x != a && x != b);
        current.push(joined);
        current.sort_by_key(|x| x.min_vertex());
        partitions.push(current.clone());
        steps.push(TraceStep {
            edge: e,
            merged: [a, b],
            bridges,
            consumed,
        });
    }
    debug_assert_eq!(partitions.len(), g.n());
    Ok(SequentialTrace {
        chain: PartitionChain { partitions },
        steps,
    })
}

pub fn seq_reassemble(g: &Graph, pi: &EdgeOrdering) -> Result<PartitionChain> {
    Ok(seq_trace(g, pi)?.chain)
}

/// The binary tree formed by all blocks of the sequential process.
pub fn bin(g: &Graph, pi: &EdgeOrdering) -> Result<ReassemblyTree> {
    Ok(seq_reassemble(g, pi)?.to_tree())
}

/// An ordering whose sequential process reproduces `chain`: at each merge
/// the least bridge, then the remaining bridges in increasing order.
pub fn chain_to_ordering(g: &Graph, chain: &PartitionChain) -> Result<EdgeOrdering> {
    if chain.ground_set() != g.vertices() {
        return Err(Error::GroundSetMismatch {
            expected: g.vertices(),
            found: chain.ground_set(),
        });
    }
    let mut edges = Vec::with_capacity(g.m());
    for (a, b) in chain.merges() {
        let bridges = g.bridges_unchecked(a, b);
        if bridges.is_empty() {
            return Err(Error::NotStrict(a, b));
        }
        edges.extend(bridges);
    }
    EdgeOrdering::new(edges)
}

/// The canonical ordering of a strict tree: recursively, the orderings of
/// both children (the one with the smaller first edge first) followed by
/// the sorted bridges between them.
pub fn canonical_ordering(g: &Graph, tree: &ReassemblyTree) -> Result<EdgeOrdering> {
    if let Some((a, b)) = tree.strictness_violation(g)? {
        return Err(Error::NotStrict(a, b));
    }
    EdgeOrdering::new(canonical_below(g, tree, tree.root()))
}

fn canonical_below(g: &Graph, tree: &ReassemblyTree, x: VertexSet) -> Vec<Edge> {
    let Some((t, u)) = tree.children(x).expect("cluster of tree") else {
        return Vec::new();
    };
    let ct = canonical_below(g, tree, t);
    let cu = canonical_below(g, tree, u);
    let (first, second) = if cu.first() < ct.first() { (cu, ct) } else { (ct, cu) };
    let mut out = first;
    out.extend(second);
    out.extend(g.bridges_unchecked(t, u));
    out
}
