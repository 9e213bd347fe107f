//! Subset dynamic programming over prefix sets.
//!
//! The cut after a prefix depends only on the prefix as a set, so
//! `best[S]`, the cheapest way to finish an order that starts with the
//! vertices of `S`, satisfies
//! `best[S] = min_{v not in S} combine(cut(S + v), best[S + v])`.
//! One table answers the free problem and every anchored variant.

use std::time::Instant;

use super::{admissible_seconds, check_anchor, millis_since, require_connected};
use super::{Mode, Objective, SolveResult, SolveStats, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layout::LinearArrangement;
use crate::tree::ReassemblyTree;

pub const DEFAULT_DP_LIMIT: usize = 24;
const HARD_DP_LIMIT: usize = 30;

/// Vertex limit for the subset DP, from `REASM_DP_LIMIT` when set.
pub fn dp_limit() -> usize {
    std::env::var("REASM_DP_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|l| l.min(HARD_DP_LIMIT))
        .unwrap_or(DEFAULT_DP_LIMIT)
}

pub(crate) struct Table {
    objective: Objective,
    n: usize,
    adj: Vec<u32>,
    deg: Vec<u32>,
    best: Vec<u32>,
}

impl Table {
    pub(crate) fn build(g: &Graph, objective: Objective) -> Result<Self> {
        require_connected(g)?;
        let n = g.n();
        let limit = dp_limit();
        if n > limit {
            return Err(Error::SizeLimit {
                what: "subset DP",
                n,
                limit,
            });
        }
        let adj: Vec<u32> = (1..=n).map(|v| g.neighbors(v).bits() as u32).collect();
        let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut best = vec![0u32; 1usize << n];
        for s in (0..full).rev() {
            let cut_s = cut_of(&adj, full, s);
            let mut b = u32::MAX;
            let mut free = !s & full;
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= free - 1;
                let t = s | 1 << v;
                let cut_t = cut_s + deg[v] - 2 * (adj[v] & s).count_ones();
                b = b.min(objective.combine(cut_t, best[t as usize]));
            }
            best[s as usize] = b;
        }
        Ok(Table {
            objective,
            n,
            adj,
            deg,
            best,
        })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn cut(&self, s: u32) -> u32 {
        cut_of(&self.adj, self.full(), s)
    }

    /// Value of `combine(cut(S), best[S])`, the cost from prefix `S` on.
    fn through(&self, s: u32) -> u32 {
        self.objective.combine(self.cut(s), self.best[s as usize])
    }

    pub(crate) fn states(&self) -> u64 {
        self.best.len() as u64
    }

    pub(crate) fn free_value(&self) -> u32 {
        self.best[0]
    }

    /// Optimum over orders starting with `w` whose second vertex has degree
    /// at least `deg(w)`. `None` when no such second vertex exists.
    pub(crate) fn anchored_value(&self, w: Vertex) -> Option<u32> {
        let wb = 1u32 << (w - 1);
        if self.n == 1 {
            return Some(self.through(wb));
        }
        let rest = (0..self.n)
            .filter(|&v| v != w - 1 && self.deg[v] >= self.deg[w - 1])
            .map(|v| self.through(wb | 1 << v))
            .min()?;
        Some(self.objective.combine(self.cut(wb), rest))
    }

    /// Lexicographically least order with value `target` among orders that
    /// begin with `start`.
    fn complete(&self, start: &[Vertex], target: u32) -> Vec<Vertex> {
        let mut order = start.to_vec();
        let mut s = 0u32;
        let mut acc = 0u32;
        for &v in start {
            s |= 1 << (v - 1);
            acc = self.objective.combine(acc, self.cut(s));
        }
        while order.len() < self.n {
            let v = (0..self.n)
                .filter(|&v| s >> v & 1 == 0)
                .find(|&v| {
                    let t = s | 1 << v;
                    let here = self.objective.combine(acc, self.cut(t));
                    self.objective.combine(here, self.best[t as usize]) == target
                })
                .expect("a DP optimum is attained by some extension");
            s |= 1 << v;
            acc = self.objective.combine(acc, self.cut(s));
            order.push(v + 1);
        }
        order
    }

    pub(crate) fn free_witness(&self) -> Vec<Vertex> {
        self.complete(&[], self.free_value())
    }

    /// Lexicographically least optimal order anchored at `w`.
    pub(crate) fn anchored_witness(&self, g: &Graph, w: Vertex) -> Option<(u32, Vec<Vertex>)> {
        let value = self.anchored_value(w)?;
        if self.n == 1 {
            return Some((value, vec![w]));
        }
        let second = admissible_seconds(g, w)
            .find(|&v| {
                self.objective
                    .combine(self.cut(1 << (w - 1)), self.through(1 << (w - 1) | 1 << (v - 1)))
                    == value
            })
            .expect("anchored optimum attained");
        Some((value, self.complete(&[w, second], value)))
    }
}

fn cut_of(adj: &[u32], full: u32, s: u32) -> u32 {
    let outside = !s & full;
    let mut c = 0;
    let mut rest = s;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        c += (adj[u] & outside).count_ones();
    }
    c
}

/// Optimal linear arrangement by subset DP, optionally anchored.
pub fn exact_arrangement(
    g: &Graph,
    objective: Objective,
    anchor: Option<Vertex>,
) -> Result<SolveResult> {
    check_anchor(g, anchor)?;
    let start = Instant::now();
    let table = Table::build(g, objective)?;
    let (value, order) = match anchor {
        None => (table.free_value(), table.free_witness()),
        Some(w) => table.anchored_witness(g, w).ok_or(Error::AnchorInfeasible {
            anchor: w,
            degree: g.deg(w),
        })?,
    };
    Ok(SolveResult {
        objective,
        mode: Mode::Arrangement,
        value: value as usize,
        witness: Witness::Arrangement(LinearArrangement::new(order)?),
        anchor,
        stats: SolveStats {
            states: table.states(),
            millis: millis_since(start),
        },
    })
}

/// Converts an anchored arrangement value into the value of the linear
/// reassembling it induces.
pub(crate) fn reassembling_value(g: &Graph, objective: Objective, w: Vertex, arrangement: usize) -> usize {
    match objective {
        Objective::Beta => arrangement + 2 * g.m() - g.deg(w),
        Objective::Alpha => arrangement.max(g.max_degree()),
    }
}

/// Optimal linear reassembling, from anchored arrangement optima.
pub fn exact_linear_reassembling(
    g: &Graph,
    objective: Objective,
    anchor: Option<Vertex>,
) -> Result<SolveResult> {
    check_anchor(g, anchor)?;
    let start = Instant::now();
    let table = Table::build(g, objective)?;
    let candidates: Vec<Vertex> = match anchor {
        Some(w) => vec![w],
        None => g.vertices().to_vec(),
    };
    let mut best: Option<(usize, Vertex)> = None;
    for &w in &candidates {
        let Some(a) = table.anchored_value(w) else {
            if anchor.is_some() {
                return Err(Error::AnchorInfeasible {
                    anchor: w,
                    degree: g.deg(w),
                });
            }
            continue;
        };
        let value = reassembling_value(g, objective, w, a as usize);
        if best.map_or(true, |(b, _)| value < b) {
            best = Some((value, w));
        }
    }
    let (value, w) = best.expect("the minimum-degree vertex is always admissible");
    let (_, order) = table.anchored_witness(g, w).expect("feasible anchor");
    Ok(SolveResult {
        objective,
        mode: Mode::LinearReassembling,
        value,
        witness: Witness::Tree(ReassemblyTree::linear(&order)?),
        anchor: Some(w),
        stats: SolveStats {
            states: table.states(),
            millis: millis_since(start),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generators;
    use crate::layout::{evaluate_arrangement, is_anchored_arrangement};

    #[test]
    fn star_optima() {
        let s7 = generators::star(7).unwrap();
        let r = exact_arrangement(&s7, Objective::Beta, None).unwrap();
        assert_eq!(r.value, 16);
        let r = exact_arrangement(&s7, Objective::Alpha, None).unwrap();
        assert_eq!(r.value, 4);
        let r = exact_linear_reassembling(&s7, Objective::Beta, None).unwrap();
        assert_eq!(r.value, 29);
        assert_eq!(r.witness.value(&s7, Objective::Beta).unwrap(), 29);
        assert_eq!(
            exact_linear_reassembling(&s7, Objective::Beta, Some(1)),
            Err(Error::AnchorInfeasible { anchor: 1, degree: 7 })
        );
        assert!(exact_arrangement(&s7, Objective::Beta, Some(1)).is_err());
    }

    #[test]
    fn path_witness_is_lex_least() {
        let p3 = generators::path(3).unwrap();
        let r = exact_arrangement(&p3, Objective::Beta, None).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.to_string(), "1 2 3");
    }

    #[test]
    fn cube_linear_optima() {
        let q3 = fixtures::graph("q3");
        let a = exact_linear_reassembling(&q3, Objective::Alpha, None).unwrap();
        assert_eq!(a.value, 5);
        let b = exact_linear_reassembling(&q3, Objective::Beta, None).unwrap();
        assert_eq!(b.value, 49);
        assert!(b.witness.tree().unwrap().is_linear());
    }

    #[test]
    fn anchored_witness_is_anchored() {
        let g = generators::ring_tree(2, 3, 2).unwrap();
        for w in g.vertices() {
            let r = exact_arrangement(&g, Objective::Beta, Some(w)).unwrap();
            let phi = r.witness.arrangement().unwrap();
            assert!(is_anchored_arrangement(&g, phi, w));
            assert_eq!(evaluate_arrangement(&g, phi).unwrap().beta, r.value);
        }
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1, []).unwrap();
        assert_eq!(exact_arrangement(&g, Objective::Beta, None).unwrap().value, 0);
        let r = exact_linear_reassembling(&g, Objective::Alpha, Some(1)).unwrap();
        assert_eq!(r.value, 0);
    }

    #[test]
    fn rejects_disconnected_and_large() {
        let two = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            exact_arrangement(&two, Objective::Beta, None),
            Err(Error::Disconnected)
        );
        let big = generators::path(40).unwrap();
        assert!(exact_arrangement(&big, Objective::Beta, None)
            .unwrap_err()
            .is_resource_limit());
    }
}
