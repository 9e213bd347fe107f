//! Exact optimizers for arrangements, linear reassemblings and binary
//! reassemblings.

mod binary;
mod brute;
mod dp;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layout::LinearArrangement;
use crate::tree::ReassemblyTree;

pub use binary::{binary_split_dp, brute_force_binary_reassembling, BINARY_BRUTE_LIMIT, BINARY_DP_LIMIT};
pub use brute::{brute_force_arrangement, brute_force_linear_reassembling, BRUTE_LIMIT};
pub use dp::{dp_limit, exact_arrangement, exact_linear_reassembling, DEFAULT_DP_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Alpha,
    Beta,
}

impl Objective {
    /// Folds one more cut into a running cost.
    pub fn combine(self, acc: u32, cut: u32) -> u32 {
        match self {
            Objective::Alpha => acc.max(cut),
            Objective::Beta => acc + cut,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Alpha => "alpha",
            Objective::Beta => "beta",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "alpha" => Ok(Objective::Alpha),
            "beta" => Ok(Objective::Beta),
            _ => Err(format!("unknown objective `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Arrangement,
    LinearReassembling,
    BinaryReassembling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Arrangement(LinearArrangement),
    Tree(ReassemblyTree),
}

impl Witness {
    pub fn arrangement(&self) -> Option<&LinearArrangement> {
        match self {
            Witness::Arrangement(a) => Some(a),
            Witness::Tree(_) => None,
        }
    }

    pub fn tree(&self) -> Option<&ReassemblyTree> {
        match self {
            Witness::Tree(t) => Some(t),
            Witness::Arrangement(_) => None,
        }
    }

    /// Re-evaluates the witness under `objective`.
    pub fn value(&self, g: &Graph, objective: Objective) -> Result<usize> {
        let (alpha, beta) = match self {
            Witness::Arrangement(a) => {
                let r = crate::layout::evaluate_arrangement(g, a)?;
                (r.alpha, r.beta)
            }
            Witness::Tree(t) => {
                let r = t.measures(g)?;
                (r.alpha, r.beta)
            }
        };
        Ok(match objective {
            Objective::Alpha => alpha,
            Objective::Beta => beta,
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Arrangement(a) => a.fmt(f),
            Witness::Tree(t) => t.fmt(f),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub states: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub objective: Objective,
    pub mode: Mode,
    pub value: usize,
    pub witness: Witness,
    /// For arrangements, the requested anchor. For linear reassemblings,
    /// the vertex the witness is anchored at.
    pub anchor: Option<Vertex>,
    pub stats: SolveStats,
}

/// An exact solver for the two linear problems.
pub trait LinearSolver: Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, g: &Graph, objective: Objective, mode: Mode) -> Result<SolveResult>;
}

/// Subset dynamic programming.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactDp;

/// Exhaustive scan over all vertex orders.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForce;

impl LinearSolver for ExactDp {
    fn name(&self) -> &'static str {
        "dp"
    }

    fn solve(&self, g: &Graph, objective: Objective, mode: Mode) -> Result<SolveResult> {
        match mode {
            Mode::Arrangement => exact_arrangement(g, objective, None),
            Mode::LinearReassembling => exact_linear_reassembling(g, objective, None),
            Mode::BinaryReassembling => binary_split_dp(g, objective),
        }
    }
}

impl LinearSolver for BruteForce {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn solve(&self, g: &Graph, objective: Objective, mode: Mode) -> Result<SolveResult> {
        match mode {
            Mode::Arrangement => brute_force_arrangement(g, objective, None),
            Mode::LinearReassembling => brute_force_linear_reassembling(g, objective, None),
            Mode::BinaryReassembling => brute_force_binary_reassembling(g, objective),
        }
    }
}

pub(crate) fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

pub(crate) fn check_anchor(g: &Graph, anchor: Option<Vertex>) -> Result<()> {
    match anchor {
        Some(w) => g.check_vertex(w),
        None => Ok(()),
    }
}

/// Vertices that may follow `w` in an arrangement anchored at `w`.
pub(crate) fn admissible_seconds(g: &Graph, w: Vertex) -> impl Iterator<Item = Vertex> + '_ {
    g.vertices()
        .iter()
        .filter(move |&v| v != w && g.deg(v) >= g.deg(w))
}

fn millis_since(start: std::time::Instant) -> u64 {
    start.elapsed().as_millis() as u64
}
