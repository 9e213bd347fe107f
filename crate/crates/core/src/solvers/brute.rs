//! Factorial scans over all vertex orders. Slow, simple, independent of the
//! DP; used as its oracle.

use std::time::Instant;

use super::{check_anchor, millis_since, require_connected};
use super::{Mode, Objective, SolveResult, SolveStats, Witness};
use crate::error::{Error, Result};
use crate::generators::next_permutation;
use crate::graph::{Graph, Vertex};
use crate::layout::{prefix_cuts, LinearArrangement};
use crate::tree::ReassemblyTree;

pub const BRUTE_LIMIT: usize = 10;

fn fold(objective: Objective, cuts: impl Iterator<Item = usize>) -> usize {
    cuts.fold(0, |acc, c| match objective {
        Objective::Alpha => acc.max(c),
        Objective::Beta => acc + c,
    })
}

/// Visits every order in lexicographic order, keeping the first one with
/// the least score. `None` scores are skipped.
fn scan<F>(g: &Graph, mut score: F) -> Result<Option<(usize, Vec<Vertex>, u64)>>
where
    F: FnMut(&[Vertex]) -> Option<usize>,
{
    require_connected(g)?;
    if g.n() > BRUTE_LIMIT {
        return Err(Error::SizeLimit {
            what: "brute force",
            n: g.n(),
            limit: BRUTE_LIMIT,
        });
    }
    let mut order: Vec<Vertex> = g.vertices().to_vec();
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut count = 0u64;
    loop {
        count += 1;
        if let Some(v) = score(&order) {
            if best.as_ref().map_or(true, |(b, _)| v < *b) {
                best = Some((v, order.clone()));
            }
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok(best.map(|(v, o)| (v, o, count)))
}

fn anchored_ok(g: &Graph, order: &[Vertex], anchor: Option<Vertex>) -> bool {
    match anchor {
        None => true,
        Some(w) => order[0] == w && (order.len() == 1 || g.deg(order[1]) >= g.deg(w)),
    }
}

pub fn brute_force_arrangement(
    g: &Graph,
    objective: Objective,
    anchor: Option<Vertex>,
) -> Result<SolveResult> {
    check_anchor(g, anchor)?;
    let start = Instant::now();
    let found = scan(g, |order| {
        anchored_ok(g, order, anchor).then(|| fold(objective, prefix_cuts(g, order).into_iter()))
    })?;
    let (value, order, states) = found.ok_or_else(|| infeasible(g, anchor))?;
    Ok(SolveResult {
        objective,
        mode: Mode::Arrangement,
        value,
        witness: Witness::Arrangement(LinearArrangement::new(order)?),
        anchor,
        stats: SolveStats {
            states,
            millis: millis_since(start),
        },
    })
}

/// Scans orders as linear trees: the singletons plus every prefix of size
/// at least two. Orders that differ only in their first two entries give
/// the same tree; the scan keeps the one that is anchored.
pub fn brute_force_linear_reassembling(
    g: &Graph,
    objective: Objective,
    anchor: Option<Vertex>,
) -> Result<SolveResult> {
    check_anchor(g, anchor)?;
    let start = Instant::now();
    let degrees = g.degrees();
    let found = scan(g, |order| {
        let anchored = match anchor {
            Some(_) => anchored_ok(g, order, anchor),
            None => order.len() == 1 || g.deg(order[0]) <= g.deg(order[1]),
        };
        anchored.then(|| {
            let cuts = prefix_cuts(g, order);
            fold(objective, degrees.iter().copied().chain(cuts.into_iter().skip(1)))
        })
    })?;
    let (value, order, states) = found.ok_or_else(|| infeasible(g, anchor))?;
    Ok(SolveResult {
        objective,
        mode: Mode::LinearReassembling,
        value,
        anchor: Some(order[0]),
        witness: Witness::Tree(ReassemblyTree::linear(&order)?),
        stats: SolveStats {
            states,
            millis: millis_since(start),
        },
    })
}

fn infeasible(g: &Graph, anchor: Option<Vertex>) -> Error {
    let w = anchor.expect("free scans always find an order");
    Error::AnchorInfeasible {
        anchor: w,
        degree: g.deg(w),
    }
}
