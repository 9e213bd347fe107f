use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::set::{VertexSet, MAX_VERTICES};

/// `G` glued at `w` to a complete graph on `w` and `p = 2|E|` fresh
/// vertices `n+1..=n+p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryGraph {
    #[serde(skip)]
    base: Graph,
    w: Vertex,
    p: usize,
    #[serde(skip)]
    combined: Graph,
}

impl AuxiliaryGraph {
    pub fn build(g: &Graph, w: Vertex) -> Result<Self> {
        g.check_vertex(w)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = g.n();
        let p: usize = g.degrees().iter().sum();
        if n + p > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "auxiliary graph",
                n: n + p,
                limit: MAX_VERTICES,
            });
        }
        let k: Vec<Vertex> = std::iter::once(w).chain(n + 1..=n + p).collect();
        let clique = k
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| k[i + 1..].iter().map(move |&b| (a, b)));
        let edges = g.edges().iter().map(|e| (e.lo, e.hi)).chain(clique);
        let combined = Graph::new(n + p, edges)?;
        Ok(AuxiliaryGraph {
            base: g.clone(),
            w,
            p,
            combined,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn combined(&self) -> &Graph {
        &self.combined
    }

    pub fn w(&self) -> Vertex {
        self.w
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of vertices of the base graph.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// The fresh vertices.
    pub fn u_set(&self) -> VertexSet {
        self.combined.vertices() - self.base.vertices()
    }

    /// The clique: fresh vertices and `w`.
    pub fn k_set(&self) -> VertexSet {
        self.u_set().with(self.w)
    }

    pub fn is_clique_vertex(&self, v: Vertex) -> bool {
        v > self.n() || v == self.w
    }

    /// Base vertices other than `w`.
    pub fn is_side_vertex(&self, v: Vertex) -> bool {
        v <= self.n() && v != self.w
    }
}

/// Upper bound on the edge count of an auxiliary graph over `n` vertices.
pub fn edge_bound(n: usize) -> usize {
    n * (n - 1) * (n * n - n + 2) / 2
}
