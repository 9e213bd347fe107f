//! Labelled instances of the graph families used throughout the toolkit.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::set::VertexSet;
use crate::tree::ReassemblyTree;

/// Edges of the 3-cube under the fixed labelling shipped with the toolkit.
pub const QCUBE3_EDGES: [(Vertex, Vertex); 12] = [
    (1, 2),
    (1, 3),
    (1, 6),
    (2, 4),
    (2, 8),
    (3, 4),
    (3, 5),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 8),
    (7, 8),
];

fn at_least(n: usize, min: usize, what: &'static str) -> Result<()> {
    if n < min {
        Err(Error::Precondition(what))
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    at_least(n, 1, "complete graph needs n >= 1")?;
    Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// Star with centre 1 and leaves `2..=k+1`.
pub fn star(k: usize) -> Result<Graph> {
    at_least(k, 1, "star needs at least one leaf")?;
    Graph::new(k + 1, (2..=k + 1).map(|v| (1, v)))
}

/// Path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Result<Graph> {
    at_least(n, 1, "path needs n >= 1")?;
    Graph::new(n, (1..n).map(|v| (v, v + 1)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    at_least(n, 3, "cycle needs n >= 3")?;
    Graph::new(n, (1..=n).map(|v| (v, v % n + 1)))
}

pub fn qcube3() -> Graph {
    Graph::new(8, QCUBE3_EDGES).expect("static cube edges")
}

/// A chain of `rings` disjoint cycles of length `ring_size`, consecutive
/// rings joined by a path with `path_len` edges. Each ring leaves from a
/// different vertex than it is entered at, so the maximum degree is 3 and
/// every degree-3 vertex separates the graph.
pub fn ring_tree(rings: usize, ring_size: usize, path_len: usize) -> Result<Graph> {
    at_least(rings, 1, "ring_tree needs at least one ring")?;
    at_least(ring_size, 3, "ring_tree rings need at least 3 vertices")?;
    at_least(path_len, 1, "ring_tree paths need at least one edge")?;
    let n = rings * ring_size + (rings - 1) * (path_len - 1);
    let mut edges = Vec::new();
    let mut next = 1;
    let mut exit: Option<Vertex> = None;
    for _ in 0..rings {
        if let Some(from) = exit {
            let mut prev = from;
            for _ in 0..path_len - 1 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            let entry = next;
            edges.push((prev, entry));
        }
        let base = next;
        for i in 0..ring_size {
            edges.push((base + i, base + (i + 1) % ring_size));
        }
        exit = Some(base + ring_size / 2);
        next = base + ring_size;
    }
    debug_assert_eq!(next - 1, n);
    Graph::new(n, edges)
}

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    at_least(n, 1, "random graph needs n >= 1")?;
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    at_least(n, 1, "random graph needs n >= 1")?;
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Largest ground set accepted by [`all_binary_trees`].
pub const TREE_ENUMERATE_LIMIT: usize = 7;

/// Every binary reassembling tree on `{1..n}`; there are (2n-3)!! of them.
pub fn all_binary_trees(n: usize) -> Result<Vec<ReassemblyTree>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > TREE_ENUMERATE_LIMIT {
        return Err(Error::SizeLimit {
            what: "tree enumeration",
            n,
            limit: TREE_ENUMERATE_LIMIT,
        });
    }
    let full = VertexSet::full(n);
    splits_of(full)
        .into_iter()
        .map(|clusters| ReassemblyTree::validate(full, clusters))
        .collect()
}

/// All cluster lists of binary trees over `s`, root included.
fn splits_of(s: VertexSet) -> Vec<Vec<VertexSet>> {
    if s.len() == 1 {
        return vec![vec![s]];
    }
    let low = VertexSet::singleton(s.min_vertex().expect("non-empty"));
    let rest = (s - low).bits();
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        sub = sub.wrapping_sub(1) & rest;
        let a = low | VertexSet::from_bits(sub);
        let b = s - a;
        for left in splits_of(a) {
            for right in splits_of(b) {
                let mut c = vec![s];
                c.extend(left.iter().copied());
                c.extend(right.iter().copied());
                out.push(c);
            }
        }
        if sub == 0 {
            break;
        }
    }
    out
}

/// Largest order accepted by [`enumerate_connected`].
pub const ENUMERATE_LIMIT: usize = 6;

/// One representative of every connected graph on `n` vertices up to
/// isomorphism. The representative is the labelling whose edge mask is
/// least among all relabellings.
pub fn enumerate_connected(n: usize) -> Result<&'static [Graph]> {
    static CACHE: [OnceLock<Vec<Graph>>; ENUMERATE_LIMIT + 1] =
        [const { OnceLock::new() }; ENUMERATE_LIMIT + 1];
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > ENUMERATE_LIMIT {
        return Err(Error::SizeLimit {
            what: "isomorphism enumeration",
            n,
            limit: ENUMERATE_LIMIT,
        });
    }
    Ok(CACHE[n].get_or_init(|| enumerate_uncached(n)))
}

fn enumerate_uncached(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut index = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = k;
        index[v][u] = k;
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if !connected_mask(n, &pairs, mask) {
            continue;
        }
        let is_canonical = perms.iter().all(|p| {
            let mut image = 0u32;
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    image |= 1 << index[p[u]][p[v]];
                }
            }
            image >= mask
        });
        if is_canonical {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(u, v))| (u + 1, v + 1));
            out.push(Graph::new(n, edges).expect("valid enumeration"));
        }
    }
    out
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut seen = 1u32;
    loop {
        let mut grown = seen;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (seen >> u & 1 == 1 || seen >> v & 1 == 1) {
                grown |= 1 << u | 1 << v;
            }
        }
        if grown == seen {
            return seen.count_ones() as usize == n;
        }
        seen = grown;
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Advances `p` to its lexicographic successor; false at the last one.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::VertexSet;

    #[test]
    fn family_sizes() {
        assert_eq!(complete(8).unwrap().m(), 28);
        let s7 = star(7).unwrap();
        assert_eq!(s7.n(), 8);
        assert!(s7.edges().iter().all(|e| e.lo == 1));
        assert_eq!(path(4).unwrap().m(), 3);
        assert_eq!(cycle(5).unwrap().m(), 5);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn qcube3_is_the_cube() {
        let q = qcube3();
        assert_eq!((q.n(), q.m()), (8, 12));
        assert!(q.degrees().iter().all(|&d| d == 3));
        // bipartite: 2-colour by BFS parity
        let mut colour = [0u8; 9];
        colour[1] = 1;
        let mut queue = vec![1];
        while let Some(v) = queue.pop() {
            for u in q.neighbors(v) {
                if colour[u] == 0 {
                    colour[u] = 3 - colour[v];
                    queue.push(u);
                } else {
                    assert_ne!(colour[u], colour[v]);
                }
            }
        }
        // girth 4: no triangles, but some 4-cycle
        for e in q.edges() {
            assert!((q.neighbors(e.lo) & q.neighbors(e.hi)).is_empty());
        }
        assert!((q.neighbors(1) & q.neighbors(4)).len() == 2);
    }

    #[test]
    fn ring_tree_shape() {
        let g = ring_tree(2, 3, 1).unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));
        let g = ring_tree(3, 4, 3).unwrap();
        assert_eq!(g.n(), 3 * 4 + 2 * 2);
        assert_eq!(g.m(), 3 * 4 + 2 * 3);
        assert!(g.is_connected());
        assert_eq!(g.max_degree(), 3);
        let cut = g.cut_vertices().unwrap();
        assert!(g.vertices().iter().filter(|&v| g.deg(v) == 3).all(|v| cut.contains(v)));
        assert_eq!(ring_tree(1, 5, 1).unwrap(), cycle(5).unwrap());
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected(7).unwrap_err().is_resource_limit());
    }

    #[test]
    fn random_connected_is_connected() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            let g = random_connected(n, 0.2, &mut rng).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.vertices(), VertexSet::full(n));
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn binary_tree_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_binary_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945]);
        let trees = all_binary_trees(4).unwrap();
        let distinct: std::collections::HashSet<String> = trees.iter().map(|t| t.to_string()).collect();
        assert_eq!(distinct.len(), 15);
        assert!(all_binary_trees(8).unwrap_err().is_resource_limit());
    }

}
