//! Binary reassembling trees stored as families of vertex clusters.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result, TreeViolation};
use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;

const NONE: usize = usize::MAX;

/// A binary tree over a ground set `V`, given by its `2|V| - 1` clusters.
///
/// Clusters are kept sorted by `(size, bits)` so that every child precedes
/// its parent and the root is last.
#[derive(Clone)]
pub struct ReassemblyTree {
    ground: VertexSet,
    clusters: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    parent: Vec<usize>,
    kids: Vec<Option<(usize, usize)>>,
}

impl PartialEq for ReassemblyTree {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.clusters == other.clusters
    }
}

impl Eq for ReassemblyTree {}

impl fmt::Debug for ReassemblyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReassemblyTree({self})")
    }
}

impl ReassemblyTree {
    /// Checks the three defining conditions and the cluster count.
    pub fn validate<I>(ground: VertexSet, clusters: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if ground.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let set: BTreeSet<VertexSet> = clusters.into_iter().collect();
        for &x in &set {
            if x.is_empty() {
                return Err(TreeViolation::EmptyCluster.into());
            }
            if !x.is_subset(ground) {
                return Err(TreeViolation::OutsideGroundSet(x).into());
            }
        }
        for v in ground {
            if !set.contains(&VertexSet::singleton(v)) {
                return Err(TreeViolation::MissingSingleton(v).into());
            }
        }
        if !set.contains(&ground) {
            return Err(TreeViolation::MissingRoot(ground).into());
        }

        let mut clusters: Vec<VertexSet> = set.iter().copied().collect();
        clusters.sort_by_key(|x| (x.len(), x.bits()));
        let index: HashMap<VertexSet, usize> =
            clusters.iter().enumerate().map(|(i, &x)| (x, i)).collect();

        let mut parent = vec![NONE; clusters.len()];
        for (i, &x) in clusters.iter().enumerate() {
            if x == ground {
                continue;
            }
            let mut found: Option<VertexSet> = None;
            for &y in &clusters {
                if x.is_disjoint(y) && index.contains_key(&(x | y)) {
                    if let Some(first) = found {
                        return Err(TreeViolation::AmbiguousSibling {
                            cluster: x,
                            first,
                            second: y,
                        }
                        .into());
                    }
                    found = Some(y);
                }
            }
            let y = found.ok_or(TreeViolation::NoSibling(x))?;
            parent[i] = index[&(x | y)];
        }

        let expected = 2 * ground.len() - 1;
        if clusters.len() != expected {
            return Err(TreeViolation::Cardinality {
                expected,
                found: clusters.len(),
            }
            .into());
        }

        let mut kids = vec![None; clusters.len()];
        for (i, &p) in parent.iter().enumerate() {
            if p == NONE {
                continue;
            }
            kids[p] = match kids[p] {
                None => Some((i, NONE)),
                Some((a, NONE)) => Some(order_pair(&clusters, a, i)),
                Some(_) => {
                    // a third child would have two siblings
                    return Err(TreeViolation::Cardinality {
                        expected,
                        found: clusters.len(),
                    }
                    .into());
                }
            };
        }

        Ok(ReassemblyTree {
            ground,
            clusters,
            index,
            parent,
            kids,
        })
    }

    /// The linear tree whose non-singleton clusters are the prefixes of
    /// `order` of size at least two.
    pub fn linear(order: &[Vertex]) -> Result<Self> {
        let mut ground = VertexSet::EMPTY;
        let mut clusters = Vec::with_capacity(2 * order.len());
        for &v in order {
            if v == 0 {
                return Err(Error::UnknownVertex(v));
            }
            if ground.contains(v) {
                return Err(Error::RepeatedLeaf(v));
            }
            ground.insert(v);
            clusters.push(VertexSet::singleton(v));
            clusters.push(ground);
        }
        Self::validate(ground, clusters)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: tokenize(text)?,
            pos: 0,
            seen: VertexSet::EMPTY,
            clusters: Vec::new(),
        };
        let root = p.node()?;
        if p.pos != p.tokens.len() {
            return Err(Error::TreeSyntax("unbalanced brackets or trailing input".into()));
        }
        Self::validate(root, p.clusters)
    }

    pub fn ground_set(&self) -> VertexSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// Clusters ordered by size, then bit pattern. The root is last.
    pub fn clusters(&self) -> &[VertexSet] {
        &self.clusters
    }

    pub fn contains(&self, x: VertexSet) -> bool {
        self.index.contains_key(&x)
    }

    fn idx(&self, x: VertexSet) -> Result<usize> {
        self.index.get(&x).copied().ok_or(Error::UnknownCluster(x))
    }

    pub fn root(&self) -> VertexSet {
        self.ground
    }

    pub fn parent(&self, x: VertexSet) -> Result<VertexSet> {
        match self.parent[self.idx(x)?] {
            NONE => Err(Error::RootCluster),
            p => Ok(self.clusters[p]),
        }
    }

    pub fn sibling(&self, x: VertexSet) -> Result<VertexSet> {
        Ok(self.parent(x)? - x)
    }

    /// The two children of `x`, smaller minimum first; `None` for leaves.
    pub fn children(&self, x: VertexSet) -> Result<Option<(VertexSet, VertexSet)>> {
        Ok(self.kids[self.idx(x)?].map(|(a, b)| (self.clusters[a], self.clusters[b])))
    }

    /// Clusters containing `v`, from `{v}` up to the root.
    pub fn path_to_root(&self, v: Vertex) -> Result<Vec<VertexSet>> {
        if !self.ground.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut i = self.index[&VertexSet::singleton(v)];
        let mut out = vec![self.clusters[i]];
        while self.parent[i] != NONE {
            i = self.parent[i];
            out.push(self.clusters[i]);
        }
        Ok(out)
    }

    pub fn height(&self) -> usize {
        self.heights()[self.clusters.len() - 1]
    }

    pub fn height_of(&self, x: VertexSet) -> Result<usize> {
        let i = self.idx(x)?;
        Ok(self.heights()[i])
    }

    fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.clusters.len()];
        for i in 0..self.clusters.len() {
            if let Some((a, b)) = self.kids[i] {
                h[i] = 1 + h[a].max(h[b]);
            }
        }
        h
    }

    pub fn subtree(&self, x: VertexSet) -> Result<Self> {
        self.idx(x)?;
        Self::validate(x, self.clusters.iter().copied().filter(|c| c.is_subset(x)))
    }

    /// True when the non-singleton clusters form one nested chain.
    pub fn is_linear(&self) -> bool {
        self.kids
            .iter()
            .flatten()
            .all(|&(a, b)| self.clusters[a].len() == 1 || self.clusters[b].len() == 1)
    }

    /// Non-singleton clusters of a linear tree, smallest first.
    pub fn chain(&self) -> Result<Vec<VertexSet>> {
        if !self.is_linear() {
            return Err(Error::NotLinear);
        }
        Ok(self.clusters.iter().copied().filter(|c| c.len() > 1).collect())
    }

    fn require_ground(&self, g: &Graph) -> Result<()> {
        if self.ground == g.vertices() {
            Ok(())
        } else {
            Err(Error::GroundSetMismatch {
                expected: g.vertices(),
                found: self.ground,
            })
        }
    }

    /// Sibling pairs `(smaller-min child, other child)` in cluster order.
    pub fn merges(&self) -> impl Iterator<Item = (VertexSet, VertexSet)> + '_ {
        self.kids
            .iter()
            .flatten()
            .map(|&(a, b)| (self.clusters[a], self.clusters[b]))
    }

    /// Strictness check: the first sibling pair with no bridge, if any.
    pub fn strictness_violation(&self, g: &Graph) -> Result<Option<(VertexSet, VertexSet)>> {
        self.require_ground(g)?;
        Ok(self
            .merges()
            .find(|&(a, b)| g.count_between(a, b) == 0))
    }

    pub fn is_strict(&self, g: &Graph) -> Result<bool> {
        Ok(self.strictness_violation(g)?.is_none())
    }

    pub fn measures(&self, g: &Graph) -> Result<MeasureReport> {
        self.require_ground(g)?;
        let per_cluster: Vec<ClusterDegree> = self
            .clusters
            .iter()
            .map(|&set| ClusterDegree {
                set,
                degree: g.boundary(set),
            })
            .collect();
        Ok(MeasureReport {
            alpha: per_cluster.iter().map(|c| c.degree).max().unwrap_or(0),
            beta: per_cluster.iter().map(|c| c.degree).sum(),
            clusters: per_cluster,
        })
    }

    /// All maximal families of at least two pairwise disjoint clusters,
    /// finest first. Each is a partition of the ground set with blocks
    /// ordered by minimum vertex.
    pub fn cross_sections(&self) -> Vec<Vec<VertexSet>> {
        let root = self.clusters.len() - 1;
        let mut all = self.cuts_below(root);
        all.retain(|p| p.len() >= 2);
        for p in &mut all {
            p.sort_by_key(|b| b.min_vertex());
        }
        all.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.iter().map(|x| x.to_vec()).cmp(b.iter().map(|x| x.to_vec())))
        });
        all
    }

    fn cuts_below(&self, i: usize) -> Vec<Vec<VertexSet>> {
        let mut out = vec![vec![self.clusters[i]]];
        if let Some((a, b)) = self.kids[i] {
            let left = self.cuts_below(a);
            let right = self.cuts_below(b);
            for l in &left {
                for r in &right {
                    out.push(l.iter().chain(r).copied().collect());
                }
            }
        }
        out
    }

    /// Restriction to `keep`: every cluster intersected with `keep`.
    pub fn restrict(&self, keep: VertexSet) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if !keep.is_subset(self.ground) {
            return Err(Error::NotSubset(keep));
        }
        Self::validate(
            keep,
            self.clusters
                .iter()
                .map(|&c| c & keep)
                .filter(|c| !c.is_empty()),
        )
    }

    /// Clusters in post-order: each merge appears after both its children,
    /// left child subtree first.
    pub fn post_order(&self) -> Vec<VertexSet> {
        let mut out = Vec::with_capacity(self.clusters.len());
        self.post_order_into(self.clusters.len() - 1, &mut out);
        out
    }

    fn post_order_into(&self, i: usize, out: &mut Vec<VertexSet>) {
        if let Some((a, b)) = self.kids[i] {
            self.post_order_into(a, out);
            self.post_order_into(b, out);
        }
        out.push(self.clusters[i]);
    }

    fn write_node(&self, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kids[i] {
            None => write!(f, "{}", self.clusters[i].min_vertex().expect("non-empty")),
            Some((a, b)) => {
                f.write_str("(")?;
                self.write_node(a, f)?;
                f.write_str(" ")?;
                self.write_node(b, f)?;
                f.write_str(")")
            }
        }
    }
}

fn order_pair(clusters: &[VertexSet], a: usize, b: usize) -> (usize, usize) {
    if clusters[a].min_vertex() < clusters[b].min_vertex() {
        (a, b)
    } else {
        (b, a)
    }
}

/// Bracket notation, smaller-minimum child first.
impl fmt::Display for ReassemblyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(self.clusters.len() - 1, f)
    }
}

impl Serialize for ReassemblyTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterDegree {
    pub set: VertexSet,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub alpha: usize,
    pub beta: usize,
    pub clusters: Vec<ClusterDegree>,
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Leaf(Vertex),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                out.push(Token::Open);
                chars.next();
            }
            ')' => {
                out.push(Token::Close);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                let v: Vertex = text[i..end]
                    .parse()
                    .map_err(|_| Error::TreeSyntax(format!("bad leaf `{}`", &text[i..end])))?;
                if v == 0 {
                    return Err(Error::TreeSyntax("vertex ids start at 1".into()));
                }
                if v > crate::set::MAX_VERTICES {
                    return Err(Error::SizeLimit {
                        what: "tree",
                        n: v,
                        limit: crate::set::MAX_VERTICES,
                    });
                }
                out.push(Token::Leaf(v));
            }
            other => {
                return Err(Error::TreeSyntax(format!(
                    "unexpected character `{other}` at byte {i}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    seen: VertexSet,
    clusters: Vec<VertexSet>,
}

impl Parser {
    fn node(&mut self) -> Result<VertexSet> {
        let set = match self.tokens.get(self.pos) {
            Some(&Token::Leaf(v)) => {
                self.pos += 1;
                if self.seen.contains(v) {
                    return Err(Error::RepeatedLeaf(v));
                }
                self.seen.insert(v);
                VertexSet::singleton(v)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let a = self.node()?;
                let b = self.node()?;
                if self.tokens.get(self.pos) != Some(&Token::Close) {
                    return Err(Error::TreeSyntax(
                        "expected `)` after two subtrees".into(),
                    ));
                }
                self.pos += 1;
                a | b
            }
            Some(Token::Close) => {
                return Err(Error::TreeSyntax("unexpected `)`".into()));
            }
            None => return Err(Error::TreeSyntax("unexpected end of input".into())),
        };
        self.clusters.push(set);
        Ok(set)
    }
}
