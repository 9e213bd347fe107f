use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::auxiliary::AuxiliaryGraph;
use super::sequence::vc_sequence;
use crate::error::{Error, Result};
use crate::graph::{Deg3Report, Graph, Vertex};
use crate::layout::{evaluate_arrangement, induce_arrangement, induce_reassembling, LinearArrangement};
use crate::solvers::{LinearSolver, Mode, Objective, Witness};
use crate::tree::ReassemblyTree;

/// Which problem the inner solver is asked to solve on each `G_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// Solve linear reassembling on `G_w`, return an arrangement of `G`.
    #[serde(rename = "r2a")]
    ReassemblingToArrangement,
    /// Solve arrangement on `G_w`, return a linear reassembling of `G`.
    #[serde(rename = "a2r")]
    ArrangementToReassembling,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::ReassemblingToArrangement => "r2a",
            Direction::ArrangementToReassembling => "a2r",
        }
    }

    fn inner_mode(self) -> Mode {
        match self {
            Direction::ReassemblingToArrangement => Mode::LinearReassembling,
            Direction::ArrangementToReassembling => Mode::Arrangement,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "r2a" => Ok(Direction::ReassemblingToArrangement),
            "a2r" => Ok(Direction::ArrangementToReassembling),
            _ => Err(format!("unknown direction `{s}`, expected r2a or a2r")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnchorBeta {
    pub w: Vertex,
    pub beta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestAnchor {
    pub w: Vertex,
    pub beta: usize,
    pub object: Witness,
}

/// Whether every raw optimum returned by the inner solver was already
/// unscattered and balanced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceChecks {
    pub scatter0: bool,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaReduction {
    pub anchors: Vec<AnchorBeta>,
    pub best: BestAnchor,
    pub checks: BalanceChecks,
}

struct AnchorRun {
    w: Vertex,
    beta: usize,
    object: Witness,
    checks: BalanceChecks,
}

fn run_anchor(g: &Graph, w: Vertex, direction: Direction, inner: &dyn LinearSolver) -> Result<AnchorRun> {
    let aux = AuxiliaryGraph::build(g, w)?;
    let gw = aux.combined();
    let solved = inner.solve(gw, Objective::Beta, direction.inner_mode())?;
    let raw = match &solved.witness {
        Witness::Tree(t) => induce_arrangement(gw, t)?,
        Witness::Arrangement(a) => a.clone(),
    };
    let seq = vc_sequence(&aux, raw.order().to_vec())?;
    let checks = BalanceChecks {
        scatter0: seq.scatter() == 0,
        balanced: seq.unbalance() == 0,
    };
    let order = seq.normalize()?.orient_right()?.restrict_to_base();
    debug_assert_eq!(order[0], w);
    let (beta, object) = match direction {
        Direction::ReassemblingToArrangement => {
            let phi = induce_arrangement(g, &ReassemblyTree::linear(&order)?)?;
            (evaluate_arrangement(g, &phi)?.beta, Witness::Arrangement(phi))
        }
        Direction::ArrangementToReassembling => {
            let tree = induce_reassembling(g, &LinearArrangement::new(order)?)?;
            (tree.measures(g)?.beta, Witness::Tree(tree))
        }
    };
    Ok(AnchorRun { w, beta, object, checks })
}

/// Solves the β problem opposite to `direction`'s inner problem on `g`,
/// through one auxiliary graph per vertex. `jobs` bounds the worker
/// threads; `None` uses the global pool.
pub fn reduce_beta(
    g: &Graph,
    direction: Direction,
    inner: &dyn LinearSolver,
    jobs: Option<usize>,
) -> Result<BetaReduction> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let anchors = g.vertices().to_vec();
    let work = || -> Result<Vec<AnchorRun>> {
        anchors
            .par_iter()
            .map(|&w| run_anchor(g, w, direction, inner))
            .collect()
    };
    let runs = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Solver(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let checks = BalanceChecks {
        scatter0: runs.iter().all(|r| r.checks.scatter0),
        balanced: runs.iter().all(|r| r.checks.balanced),
    };
    let rows = runs.iter().map(|r| AnchorBeta { w: r.w, beta: r.beta }).collect();
    let best = runs
        .into_iter()
        .min_by_key(|r| (r.beta, r.w))
        .expect("a graph has at least one vertex");
    Ok(BetaReduction {
        anchors: rows,
        best: BestAnchor {
            w: best.w,
            beta: best.beta,
            object: best.object,
        },
        checks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaBranch {
    /// Every degree-3 vertex is a cut vertex: solved as an arrangement.
    Direct,
    /// Some degree-3 vertex is not a cut vertex: solved as a linear
    /// reassembling and read off as an arrangement.
    ViaReassembling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaReduction {
    pub branch: AlphaBranch,
    pub deg3: Deg3Report,
    pub arrangement: LinearArrangement,
    pub cutwidth: usize,
}

/// Minimum cutwidth of a connected graph of maximum degree at most 3.
pub fn reduce_alpha(g: &Graph, inner: &dyn LinearSolver) -> Result<AlphaReduction> {
    if g.max_degree() > 3 {
        return Err(Error::DegreeTooLarge(g.max_degree()));
    }
    let deg3 = g.classify_deg3()?;
    let (branch, arrangement) = if deg3.all_deg3_are_cut {
        let r = inner.solve(g, Objective::Alpha, Mode::Arrangement)?;
        let phi = r
            .witness
            .arrangement()
            .cloned()
            .ok_or_else(|| Error::Solver("inner solver returned no arrangement".into()))?;
        (AlphaBranch::Direct, phi)
    } else {
        let r = inner.solve(g, Objective::Alpha, Mode::LinearReassembling)?;
        let tree = r
            .witness
            .tree()
            .ok_or_else(|| Error::Solver("inner solver returned no tree".into()))?;
        (AlphaBranch::ViaReassembling, induce_arrangement(g, tree)?)
    };
    let cutwidth = evaluate_arrangement(g, &arrangement)?.alpha;
    Ok(AlphaReduction {
        branch,
        deg3,
        arrangement,
        cutwidth,
    })
}

/// The linear reassembling read off an α-optimal arrangement.
pub fn alpha_reassembling_from_arrangement(g: &Graph, phi: &LinearArrangement) -> Result<ReassemblyTree> {
    induce_reassembling(g, phi)
}
