//! Simple undirected graphs over vertex ids `1..=n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::{VertexSet, MAX_VERTICES};

pub type Vertex = usize;

/// An undirected edge with `lo < hi`. The derived ordering is the
/// lexicographic edge order used by canonical orderings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    /// Normalizes endpoint order. Panics on a self-loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "self-loop");
        Edge {
            lo: u.min(v),
            hi: u.max(v),
        }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn set(self) -> VertexSet {
        VertexSet::singleton(self.lo).with(self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from endpoint pairs. Duplicate pairs collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "graph",
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            set.insert(Edge::new(u, v));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![VertexSet::EMPTY; n];
        for e in &edges {
            adj[e.lo - 1].insert(e.hi);
            adj[e.hi - 1].insert(e.lo);
        }
        Graph { n, adj, edges }
    }

    /// Parses the edge-list text format: a header line `n m`, then `m`
    /// lines `u v`. Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line `n m`".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "graph",
                n,
                limit: MAX_VERTICES,
            });
        }

        let mut set = BTreeSet::new();
        let mut count = 0;
        for (line, l) in lines {
            let [u, v] = parse_pair(line, l)?;
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::Parse {
                        line,
                        message: format!("vertex {x} out of range 1..={n}"),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line, vertex: u });
            }
            set.insert(Edge::new(u, v));
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares {m} edges, found {count}"),
            });
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// Serializes to the edge-list format with edges sorted.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.lo, e.hi));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in increasing order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn check_subset(&self, a: VertexSet) -> Result<()> {
        if a.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(Error::NotSubset(a))
        }
    }

    /// Neighbourhood of `v`. Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v - 1]
    }

    /// Degree of `v`. Panics if `v` is not a vertex.
    pub fn deg(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|a| a.len()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_vertex(u) && self.contains_vertex(v) && self.adj[u - 1].contains(v)
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if self.has_edge(e.lo, e.hi) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// Assumes the sets are disjoint.
    pub fn count_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| (self.adj[v - 1] & b).len()).sum()
    }

    /// Edges joining the disjoint sets `a` and `b`, in increasing order.
    pub fn bridges(&self, a: VertexSet, b: VertexSet) -> Result<Vec<Edge>> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        let common = a & b;
        if !common.is_empty() {
            return Err(Error::Overlap(common));
        }
        Ok(self.bridges_unchecked(a, b))
    }

    pub(crate) fn bridges_unchecked(&self, a: VertexSet, b: VertexSet) -> Vec<Edge> {
        let mut out: Vec<Edge> = a
            .iter()
            .flat_map(|u| (self.adj[u - 1] & b).iter().map(move |v| Edge::new(u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Edge-boundary degree of `a` without membership checks.
    pub fn boundary(&self, a: VertexSet) -> usize {
        let rest = self.vertices() - a;
        self.count_between(a, rest)
    }

    pub fn boundary_degree(&self, a: VertexSet) -> Result<usize> {
        self.check_subset(a)?;
        Ok(self.boundary(a))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: Vertex, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v - 1];
            }
            frontier = (next & within) - seen;
            seen = seen | frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(1, self.vertices()) == self.vertices()
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Articulation vertices, by the low-link method.
    pub fn cut_vertices(&self) -> Result<VertexSet> {
        self.require_connected()?;
        let mut st = LowLink {
            g: self,
            disc: vec![0; self.n + 1],
            low: vec![0; self.n + 1],
            timer: 0,
            cut: VertexSet::EMPTY,
        };
        st.visit(1, 0);
        Ok(st.cut)
    }

    pub fn classify_deg3(&self) -> Result<Deg3Report> {
        let cut = self.cut_vertices()?;
        let max_degree = self.max_degree();
        let witness = (1..=self.n).find(|&v| self.deg(v) == 3 && !cut.contains(v));
        Ok(Deg3Report {
            max_degree,
            all_deg3_are_cut: witness.is_none(),
            noncut_deg3_witness: if max_degree == 3 { witness } else { None },
        })
    }

    /// Subgraph induced by `keep`, with vertices relabelled in increasing
    /// order. Returns the graph and the old id of each new vertex.
    pub fn induced(&self, keep: VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_subset(keep)?;
        if keep.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let old: Vec<Vertex> = keep.to_vec();
        let mut new_id = vec![0; self.n + 1];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.lo) && keep.contains(e.hi))
            .map(|e| Edge::new(new_id[e.lo], new_id[e.hi]))
            .collect::<Vec<_>>();
        let mut edges = edges;
        edges.sort_unstable();
        Ok((Graph::from_sorted(old.len(), edges), old))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace();
    let mut out = [0; 2];
    for slot in &mut out {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("expected two integers, got `{text}`"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{tok}` is not a non-negative integer"),
        })?;
    }
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: format!("trailing tokens in `{text}`"),
        });
    }
    Ok(out)
}

struct LowLink<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    cut: VertexSet,
}

impl LowLink<'_> {
    fn visit(&mut self, v: Vertex, parent: Vertex) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for u in self.g.neighbors(v) {
            if self.disc[u] == 0 {
                children += 1;
                self.visit(u, v);
                self.low[v] = self.low[v].min(self.low[u]);
                if parent != 0 && self.low[u] >= self.disc[v] {
                    self.cut.insert(v);
                }
            } else if u != parent {
                self.low[v] = self.low[v].min(self.disc[u]);
            }
        }
        if parent == 0 && children > 1 {
            self.cut.insert(v);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Deg3Report {
    pub max_degree: usize,
    pub all_deg3_are_cut: bool,
    pub noncut_deg3_witness: Option<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn removal_oracle(g: &Graph) -> VertexSet {
        g.vertices()
            .iter()
            .filter(|&v| {
                let rest = g.vertices() - VertexSet::singleton(v);
                match rest.min_vertex() {
                    None => false,
                    Some(s) => g.component_of(s, rest) != rest,
                }
            })
            .collect()
    }

    #[test]
    fn parse_k3() {
        let g = Graph::parse("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.to_text(), "3 3\n1 2\n1 3\n2 3\n");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Graph::parse("2 1\n1 1"),
            Err(Error::SelfLoop { line: 2, vertex: 1 })
        ));
        assert!(matches!(
            Graph::parse("2 1\n1 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("# c\n\n3 1\n1 x"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(Graph::parse("").is_err());
        assert!(Graph::parse("3 2\n1 2").is_err());
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = Graph::parse("# dup\n3 3\n1 2\n2 1\n\n2 3\n").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn degrees_and_bridges() {
        let k8 = generators::complete(8).unwrap();
        assert_eq!(k8.degree(1).unwrap(), 7);
        let s7 = generators::star(7).unwrap();
        assert_eq!(s7.degree(1).unwrap(), 7);
        assert_eq!(s7.degree(2).unwrap(), 1);
        assert!(s7.degree(9).is_err());
        let p3 = generators::path(3).unwrap();
        assert_eq!(p3.degree(2).unwrap(), 2);

        let k3 = generators::complete(3).unwrap();
        let one = VertexSet::singleton(1);
        let b = k3.bridges(one, [2, 3].iter().collect()).unwrap();
        assert_eq!(b, vec![Edge::new(1, 2), Edge::new(1, 3)]);
        assert_eq!(s7.bridges(one, s7.vertices() - one).unwrap().len(), 7);
        assert!(p3
            .bridges(one, VertexSet::singleton(3))
            .unwrap()
            .is_empty());
        assert!(matches!(
            k3.bridges(one, one),
            Err(Error::Overlap(_))
        ));
    }

    #[test]
    fn boundary_examples() {
        let k8 = generators::complete(8).unwrap();
        assert_eq!(k8.boundary_degree(k8.vertices()).unwrap(), 0);
        assert_eq!(k8.boundary_degree([2, 4, 6, 8].iter().collect()).unwrap(), 16);
        let k3 = generators::complete(3).unwrap();
        assert_eq!(k3.boundary_degree([1, 2].iter().collect()).unwrap(), 2);
        assert!(k3.boundary_degree(VertexSet::singleton(4)).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(generators::complete(3).unwrap().is_connected());
        assert!(!Graph::new(4, [(1, 2), (3, 4)]).unwrap().is_connected());
        assert!(generators::star(7).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
    }

    #[test]
    fn cut_vertex_examples() {
        let s7 = generators::star(7).unwrap();
        assert_eq!(s7.cut_vertices().unwrap().to_vec(), vec![1]);
        let c4 = generators::cycle(4).unwrap();
        assert!(c4.cut_vertices().unwrap().is_empty());
        let bowtie = Graph::new(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(bowtie.cut_vertices().unwrap().to_vec(), vec![3]);
        let two = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(two.cut_vertices(), Err(Error::Disconnected));
    }

    #[test]
    fn cut_vertices_match_removal_oracle() {
        for n in 1..=6 {
            for g in generators::enumerate_connected(n).unwrap() {
                assert_eq!(g.cut_vertices().unwrap(), removal_oracle(g), "{g:?}");
            }
        }
    }

    #[test]
    fn deg3_classification() {
        let k4 = generators::complete(4).unwrap();
        let r = k4.classify_deg3().unwrap();
        assert_eq!(r.max_degree, 3);
        assert!(!r.all_deg3_are_cut);
        assert_eq!(k4.deg(r.noncut_deg3_witness.unwrap()), 3);

        let rings = generators::ring_tree(2, 3, 2).unwrap();
        let r = rings.classify_deg3().unwrap();
        assert_eq!(r.max_degree, 3);
        assert!(r.all_deg3_are_cut);
        assert_eq!(r.noncut_deg3_witness, None);

        let q3 = generators::qcube3();
        let r = q3.classify_deg3().unwrap();
        assert!(!r.all_deg3_are_cut);
        assert!(r.noncut_deg3_witness.is_some());
    }

    #[test]
    fn induced_relabels() {
        let p4 = generators::path(4).unwrap();
        let (h, old) = p4.induced([2, 3, 4].iter().collect()).unwrap();
        assert_eq!(old, vec![2, 3, 4]);
        assert_eq!(h.edges(), &[Edge::new(1, 2), Edge::new(2, 3)]);
    }
}
