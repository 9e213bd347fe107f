//! Optimization over all binary reassemblings, linear or not.

use std::time::Instant;

use super::{millis_since, require_connected};
use super::{Mode, Objective, SolveResult, SolveStats, Witness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::tree::ReassemblyTree;

pub const BINARY_BRUTE_LIMIT: usize = 8;
pub const BINARY_DP_LIMIT: usize = 16;

fn cut_table(g: &Graph) -> Vec<u32> {
    (0..1u32 << g.n())
        .map(|s| g.boundary(VertexSet::from_bits(s as u128)) as u32)
        .collect()
}

fn to_tree(g: &Graph, clusters: &[u32]) -> Result<ReassemblyTree> {
    ReassemblyTree::validate(
        g.vertices(),
        clusters.iter().map(|&c| VertexSet::from_bits(c as u128)),
    )
}

fn check_size(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    require_connected(g)?;
    if g.n() > limit {
        Err(Error::SizeLimit {
            what,
            n: g.n(),
            limit,
        })
    } else {
        Ok(())
    }
}

struct Enumerator<'a> {
    objective: Objective,
    cut: &'a [u32],
    pending: Vec<u32>,
    clusters: Vec<u32>,
    best: Option<(u32, Vec<u32>)>,
    visited: u64,
}

impl Enumerator<'_> {
    /// Splits the most recently pushed pending cluster every possible way.
    /// Each tree is produced once: the part holding the lowest vertex is
    /// always the first child.
    fn run(&mut self, acc: u32) {
        let Some(s) = self.pending.pop() else {
            self.visited += 1;
            if self.best.as_ref().map_or(true, |(b, _)| acc < *b) {
                self.best = Some((acc, self.clusters.clone()));
            }
            return;
        };
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            sub = sub.wrapping_sub(1) & rest;
            let a = low | sub;
            let b = rest ^ sub;
            let here = self
                .objective
                .combine(self.objective.combine(acc, self.cut[a as usize]), self.cut[b as usize]);
            let depth = self.pending.len();
            self.clusters.push(a);
            self.clusters.push(b);
            for x in [a, b] {
                if x.count_ones() > 1 {
                    self.pending.push(x);
                }
            }
            self.run(here);
            self.pending.truncate(depth);
            self.clusters.truncate(self.clusters.len() - 2);
            if sub == 0 {
                break;
            }
        }
        self.pending.push(s);
    }
}

/// Exhaustive search over every binary tree on `V(g)`.
pub fn brute_force_binary_reassembling(g: &Graph, objective: Objective) -> Result<SolveResult> {
    check_size(g, "binary tree enumeration", BINARY_BRUTE_LIMIT)?;
    let start = Instant::now();
    let cut = cut_table(g);
    let full = (1u32 << g.n()) - 1;
    let mut e = Enumerator {
        objective,
        cut: &cut,
        pending: if g.n() > 1 { vec![full] } else { Vec::new() },
        clusters: vec![full],
        best: None,
        visited: 0,
    };
    e.run(0);
    let (value, clusters) = e.best.expect("at least one tree");
    Ok(SolveResult {
        objective,
        mode: Mode::BinaryReassembling,
        value: value as usize,
        witness: Witness::Tree(to_tree(g, &clusters)?),
        anchor: None,
        stats: SolveStats {
            states: e.visited,
            millis: millis_since(start),
        },
    })
}

/// Optimum over binary trees by DP over vertex subsets and their splits.
pub fn binary_split_dp(g: &Graph, objective: Objective) -> Result<SolveResult> {
    check_size(g, "binary split DP", BINARY_DP_LIMIT)?;
    let start = Instant::now();
    let n = g.n();
    let cut = cut_table(g);
    let full = (1u32 << n) - 1;
    // below[S]: cost of the subtree rooted at S, not counting S itself
    let mut below = vec![0u32; 1 << n];
    let mut choice = vec![0u32; 1 << n];
    let split_cost = |below: &[u32], a: u32, b: u32| {
        let ca = objective.combine(cut[a as usize], below[a as usize]);
        let cb = objective.combine(cut[b as usize], below[b as usize]);
        objective.combine(ca, cb)
    };
    for s in 1..=full {
        if s.count_ones() < 2 {
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u32::MAX;
        let mut sub = rest;
        loop {
            sub = sub.wrapping_sub(1) & rest;
            let a = low | sub;
            let c = split_cost(&below, a, s ^ a);
            if c < best {
                best = c;
                choice[s as usize] = a;
            }
            if sub == 0 {
                break;
            }
        }
        below[s as usize] = best;
    }
    let mut clusters = Vec::with_capacity(2 * n);
    let mut stack = vec![full];
    while let Some(s) = stack.pop() {
        clusters.push(s);
        if s.count_ones() > 1 {
            let a = choice[s as usize];
            stack.push(a);
            stack.push(s ^ a);
        }
    }
    Ok(SolveResult {
        objective,
        mode: Mode::BinaryReassembling,
        value: below[full as usize] as usize,
        witness: Witness::Tree(to_tree(g, &clusters)?),
        anchor: None,
        stats: SolveStats {
            states: 1 << n,
            millis: millis_since(start),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn enumerates_every_tree_once() {
        for n in 2..=7 {
            let g = generators::complete(n).unwrap();
            let r = brute_force_binary_reassembling(&g, Objective::Beta).unwrap();
            // (2n-3)!!
            let expected: u64 = (1..n as u64 - 1).map(|k| 2 * k + 1).product();
            assert_eq!(r.stats.states, expected, "n = {n}");
        }
    }

    #[test]
    fn split_dp_matches_enumeration() {
        for g in [
            generators::star(5).unwrap(),
            generators::cycle(6).unwrap(),
            generators::path(5).unwrap(),
            generators::complete(5).unwrap(),
        ] {
            for obj in [Objective::Alpha, Objective::Beta] {
                let a = brute_force_binary_reassembling(&g, obj).unwrap();
                let b = binary_split_dp(&g, obj).unwrap();
                assert_eq!(a.value, b.value);
                assert_eq!(a.witness.value(&g, obj).unwrap(), a.value);
                assert_eq!(b.witness.value(&g, obj).unwrap(), b.value);
            }
        }
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, []).unwrap();
        let r = brute_force_binary_reassembling(&g, Objective::Beta).unwrap();
        assert_eq!((r.value, r.stats.states), (0, 1));
        assert_eq!(binary_split_dp(&g, Objective::Alpha).unwrap().value, 0);
    }
}
