//! Vertex/cut sequences over an auxiliary graph and the local moves that
//! bring them into balanced form.

use serde::Serialize;

use super::auxiliary::AuxiliaryGraph;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::layout::LinearArrangement;
use crate::set::VertexSet;

/// An order of `V(G_w)` together with, for every prefix, the pair
/// `(r, s)`: the cut of the prefix in `G` and in the clique.
#[derive(Clone, Debug, Serialize)]
pub struct VCSequence<'a> {
    #[serde(skip)]
    aux: &'a AuxiliaryGraph,
    order: Vec<Vertex>,
    pairs: Vec<(usize, usize)>,
}

impl PartialEq for VCSequence<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.aux, other.aux) && self.order == other.order
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RebalanceCase {
    /// `w` opens the clique run.
    WFirst,
    /// `w` closes the clique run.
    WLast,
    /// More neighbours of `w` on the left.
    LeftHeavy,
    /// More neighbours of `w` on the right.
    RightHeavy,
    /// As many on each side.
    Even,
}

/// Builds the sequence of `order`, which must list `V(G_w)` exactly once.
pub fn vc_sequence(aux: &AuxiliaryGraph, order: Vec<Vertex>) -> Result<VCSequence<'_>> {
    LinearArrangement::new(order.clone())?.check_over(aux.combined())?;
    Ok(VCSequence::build(aux, order))
}

impl<'a> VCSequence<'a> {
    fn build(aux: &'a AuxiliaryGraph, order: Vec<Vertex>) -> Self {
        let g = aux.base();
        let q = aux.p() + 1;
        let mut prefix = VertexSet::EMPTY;
        let (mut r, mut k) = (0usize, 0usize);
        let pairs = order
            .iter()
            .map(|&v| {
                if v <= g.n() {
                    r = r + g.deg(v) - 2 * (g.neighbors(v) & prefix).len();
                    prefix.insert(v);
                }
                if aux.is_clique_vertex(v) {
                    k += 1;
                }
                (r, k * (q - k))
            })
            .collect();
        VCSequence { aux, order, pairs }
    }

    pub fn aux(&self) -> &'a AuxiliaryGraph {
        self.aux
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn into_arrangement(self) -> LinearArrangement {
        LinearArrangement::new(self.order).expect("a sequence is a permutation")
    }

    /// Total cut of the underlying arrangement of `G_w`.
    pub fn beta(&self) -> usize {
        self.pairs.iter().map(|(r, s)| r + s).sum()
    }

    pub fn alpha(&self) -> usize {
        self.pairs.iter().map(|(r, s)| r + s).max().unwrap_or(0)
    }

    /// The order with the fresh vertices dropped.
    pub fn restrict_to_base(&self) -> Vec<Vertex> {
        self.order.iter().copied().filter(|&v| v <= self.aux.n()).collect()
    }

    fn w_position(&self) -> usize {
        self.order.iter().position(|&v| v == self.aux.w()).expect("w is present")
    }

    /// First and last clique position, then first and last base vertex
    /// strictly between them (if any).
    fn span(&self) -> (usize, usize, Option<(usize, usize)>) {
        let aux = self.aux;
        let clique: Vec<usize> = (0..self.order.len())
            .filter(|&i| aux.is_clique_vertex(self.order[i]))
            .collect();
        let (i, l) = (clique[0], clique[clique.len() - 1]);
        let inner: Vec<usize> = (i + 1..l)
            .filter(|&x| aux.is_side_vertex(self.order[x]))
            .collect();
        let between = inner.first().map(|&j| (j, inner[inner.len() - 1]));
        (i, l, between)
    }

    pub fn scatter(&self) -> usize {
        match self.span() {
            (i, l, Some((j, k))) => (j - i).min(l - k),
            _ => 0,
        }
    }

    /// Counts of base vertices other than `w` and of fresh vertices on
    /// each side of `w`: `(a_left, a_right, b_left, b_right)`.
    fn sides(&self) -> (usize, usize, usize, usize) {
        let pw = self.w_position();
        let aux = self.aux;
        let count = |range: &[Vertex], fresh: bool| {
            range
                .iter()
                .filter(|&&v| if fresh { v > aux.n() } else { aux.is_side_vertex(v) })
                .count()
        };
        let (left, right) = (&self.order[..pw], &self.order[pw + 1..]);
        (count(left, false), count(right, false), count(left, true), count(right, true))
    }

    /// Distance from the left-balanced form `V-w, w, U`.
    pub fn left_unbalance(&self) -> usize {
        let (_, ar, bl, _) = self.sides();
        ar + bl
    }

    /// Distance from the right-balanced form `U, w, V-w`.
    pub fn right_unbalance(&self) -> usize {
        let (al, _, _, br) = self.sides();
        al + br
    }

    pub fn unbalance(&self) -> usize {
        self.left_unbalance().min(self.right_unbalance())
    }

    pub fn is_left_balanced(&self) -> bool {
        self.left_unbalance() == 0
    }

    pub fn is_right_balanced(&self) -> bool {
        self.right_unbalance() == 0
    }

    fn reorder(&self, order: Vec<Vertex>) -> Self {
        VCSequence::build(self.aux, order)
    }

    /// Pulls the base vertex nearest to an end of the clique span out to
    /// that end.
    pub fn descatter(&self) -> Result<Self> {
        let (i, l, Some((j, k))) = self.span() else {
            return Err(Error::Precondition("sequence is not scattered"));
        };
        let mut order = self.order.clone();
        if j - i <= l - k {
            let v = order.remove(j);
            order.insert(i, v);
        } else {
            let v = order.remove(k);
            order.insert(l, v);
        }
        Ok(self.reorder(order))
    }

    /// One rebalancing step on a sequence whose clique is contiguous.
    pub fn rebalance_step(&self) -> Result<(RebalanceCase, Self)> {
        if self.scatter() > 0 {
            return Err(Error::Precondition("sequence is scattered"));
        }
        if self.unbalance() == 0 {
            return Err(Error::Precondition("sequence is already balanced"));
        }
        let (i, l, _) = self.span();
        let p = self.aux.p();
        debug_assert_eq!(l - i, p);
        let pw = self.w_position();
        let g = self.aux.base();
        let nbrs = g.neighbors(self.aux.w());
        let d_left = self.order[..i].iter().filter(|&&v| nbrs.contains(v)).count();
        let d_right = self.order[l + 1..].iter().filter(|&&v| nbrs.contains(v)).count();
        let (left, run, right) = (&self.order[..i], &self.order[i..=l], &self.order[l + 1..]);
        let whole = |parts: &[&[Vertex]]| parts.concat();
        let front = |run: &[Vertex]| whole(&[left, right, run]);
        let (case, order) = if pw == i {
            (RebalanceCase::WFirst, front(run))
        } else if pw == l {
            (RebalanceCase::WLast, whole(&[run, left, right]))
        } else {
            let mut order = self.order.clone();
            match d_left.cmp(&d_right) {
                std::cmp::Ordering::Greater => {
                    order.swap(pw, i);
                    (RebalanceCase::LeftHeavy, order)
                }
                std::cmp::Ordering::Less => {
                    order.swap(pw, l);
                    (RebalanceCase::RightHeavy, order)
                }
                std::cmp::Ordering::Equal => {
                    order.swap(pw, i);
                    (RebalanceCase::Even, front(&order[i..=l]))
                }
            }
        };
        Ok((case, self.reorder(order)))
    }

    pub fn rebalance(&self) -> Result<Self> {
        self.rebalance_step().map(|(_, s)| s)
    }

    /// Descatters, then rebalances, until the sequence is balanced.
    pub fn normalize(&self) -> Result<Self> {
        let len = self.order.len();
        let cap = len * len + 2 * len + 4;
        let mut cur = self.clone();
        let mut steps = 0;
        while cur.scatter() > 0 {
            cur = cur.descatter()?;
            steps += 1;
            if steps > cap {
                return Err(Error::Solver("descattering did not terminate".into()));
            }
        }
        while cur.unbalance() > 0 {
            cur = cur.rebalance()?;
            steps += 1;
            if steps > 2 * cap {
                return Err(Error::Solver("rebalancing did not terminate".into()));
            }
        }
        Ok(cur)
    }

    /// Turns a balanced sequence into the form `U, w, V-w`.
    pub fn orient_right(&self) -> Result<Self> {
        if self.is_right_balanced() {
            Ok(self.clone())
        } else if self.is_left_balanced() {
            Ok(self.reorder(self.order.iter().rev().copied().collect()))
        } else {
            Err(Error::Precondition("sequence is not balanced"))
        }
    }
}
