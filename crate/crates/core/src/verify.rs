//! Self-check suites run by `reasm verify`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fixtures;
use crate::generators::{self, all_binary_trees, enumerate_connected, permutations, ENUMERATE_LIMIT};
use crate::graph::{Graph, Vertex};
use crate::layout::{
    evaluate_arrangement, induce_arrangement, induce_reassembling, prefix_cuts, total_length,
    LinearArrangement,
};
use crate::reduction::{vc_sequence, AuxiliaryGraph};
use crate::sequential::{bin, canonical_ordering};
use crate::solvers::{
    brute_force_arrangement, brute_force_linear_reassembling,
    exact_arrangement, exact_linear_reassembling, Objective,
};
use crate::tree::ReassemblyTree;

const SEED: u64 = 0x7265_6173_6d;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    BetaEqualsGamma,
    Roundtrips,
    BinCan,
    BalanceLemmas,
    DpVsBrute,
    Fixtures,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::BetaEqualsGamma,
        Suite::Roundtrips,
        Suite::BinCan,
        Suite::BalanceLemmas,
        Suite::DpVsBrute,
        Suite::Fixtures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BetaEqualsGamma => "beta_equals_gamma",
            Suite::Roundtrips => "roundtrips",
            Suite::BinCan => "bin_can",
            Suite::BalanceLemmas => "balance_lemmas",
            Suite::DpVsBrute => "dp_vs_brute",
            Suite::Fixtures => "fixtures",
        }
    }

    pub fn run(self) -> Result<Vec<CheckOutcome>> {
        match self {
            Suite::BetaEqualsGamma => beta_equals_gamma(1000),
            Suite::Roundtrips => roundtrips(),
            Suite::BinCan => bin_can(),
            Suite::BalanceLemmas => balance_lemmas(),
            Suite::DpVsBrute => dp_vs_brute(),
            Suite::Fixtures => fixture_values(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}`, expected one of {}", names.join(", "))
            })
    }
}

/// One named check: how many cases ran and how many failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub check: String,
    pub cases: u64,
    pub failures: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

struct Tally {
    suite: &'static str,
    check: String,
    cases: u64,
    failures: u64,
    example: Option<String>,
}

impl Tally {
    fn new(suite: Suite, check: impl Into<String>) -> Self {
        Tally {
            suite: suite.name(),
            check: check.into(),
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, found: T, expected: T) {
        let ok = found == expected;
        self.record(ok, || format!("{what}: found {found:?}, expected {expected:?}"));
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            suite: self.suite,
            pass: self.failures == 0 && self.cases > 0,
            check: self.check,
            cases: self.cases,
            failures: self.failures,
            example: self.example,
        }
    }
}

fn small_connected() -> Result<Vec<&'static Graph>> {
    let mut out = Vec::new();
    for n in 1..=ENUMERATE_LIMIT {
        out.extend(enumerate_connected(n)?.iter());
    }
    Ok(out)
}

/// Sum of prefix cuts against total edge length on random graphs, connected
/// or not, under random orders.
pub fn beta_equals_gamma(cases: usize) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut t = Tally::new(Suite::BetaEqualsGamma, "sum of cuts = total edge length");
    let mut disconnected = 0u64;
    for _ in 0..cases {
        let n = rng.gen_range(1..=14);
        let p = rng.gen_range(0.05..0.8);
        let g = generators::random_gnp(n, p, &mut rng)?;
        if !g.is_connected() {
            disconnected += 1;
        }
        let mut order: Vec<Vertex> = g.vertices().to_vec();
        order.shuffle(&mut rng);
        let beta: usize = prefix_cuts(&g, &order).iter().sum();
        let gamma = total_length(&g, &LinearArrangement::new(order.clone())?);
        t.record(beta == gamma, || format!("{} / {order:?}: {beta} vs {gamma}", g.to_text().trim()));
    }
    let mut mix = Tally::new(Suite::BetaEqualsGamma, "sample includes disconnected graphs");
    mix.record(disconnected > 0 && disconnected < cases as u64, || {
        format!("{disconnected} of {cases} disconnected")
    });
    Ok(vec![t.finish(), mix.finish()])
}

/// Linear trees and arrangements convert back and forth, and the anchored
/// β identity holds, on every connected graph up to isomorphism.
pub fn roundtrips() -> Result<Vec<CheckOutcome>> {
    let mut round = Tally::new(Suite::Roundtrips, "induce_reassembling after induce_arrangement is the identity");
    let mut ident = Tally::new(Suite::Roundtrips, "tree beta - arrangement beta = sum of degrees but the first");
    let mut text = Tally::new(Suite::Roundtrips, "tree text parses back to the same tree");
    for g in small_connected()? {
        let total: usize = g.degrees().iter().sum();
        for perm in permutations(g.n()) {
            if perm.len() > 1 && perm[0] > perm[1] {
                continue;
            }
            let order: Vec<Vertex> = perm.iter().map(|&i| i + 1).collect();
            let tree = ReassemblyTree::linear(&order)?;
            let phi = induce_arrangement(g, &tree)?;
            round.expect_eq(&format!("{tree}"), induce_reassembling(g, &phi)?, tree.clone());
            let tb = tree.measures(g)?.beta;
            let ab = evaluate_arrangement(g, &phi)?.beta;
            ident.expect_eq(&format!("{tree}"), tb - ab, total - g.deg(phi.first()));
        }
    }
    for n in 1..=6 {
        for tree in all_binary_trees(n)? {
            let back = ReassemblyTree::parse(&tree.to_string());
            text.record(back.as_ref() == Ok(&tree), || tree.to_string());
        }
    }
    Ok(vec![round.finish(), ident.finish(), text.finish()])
}

/// bin(can(G, B)) = B for every strict binary tree of every small
/// connected graph.
pub fn bin_can() -> Result<Vec<CheckOutcome>> {
    let mut t = Tally::new(Suite::BinCan, "bin(can(G, B)) = B on strict trees");
    let mut trees = Vec::new();
    for n in 1..=ENUMERATE_LIMIT {
        trees.push(all_binary_trees(n)?);
    }
    for g in small_connected()? {
        for tree in &trees[g.n() - 1] {
            if !tree.is_strict(g)? {
                continue;
            }
            let pi = canonical_ordering(g, tree)?;
            let back = bin(g, &pi)?;
            t.record(&back == tree, || format!("{} on {}: got {back}", tree, g.to_text().trim()));
        }
    }
    Ok(vec![t.finish()])
}

/// Orders of `V(G_w)` with the fresh vertices in increasing order. Fresh
/// vertices are interchangeable, so every order is equivalent to one of
/// these.
pub fn aux_orders(aux: &AuxiliaryGraph) -> Vec<Vec<Vertex>> {
    let n = aux.n();
    let mut slots: Vec<Vertex> = std::iter::repeat(0).take(aux.p()).chain(1..=n).collect();
    let mut out = Vec::new();
    loop {
        let mut fresh = n;
        out.push(
            slots
                .iter()
                .map(|&v| {
                    if v == 0 {
                        fresh += 1;
                        fresh
                    } else {
                        v
                    }
                })
                .collect(),
        );
        if !generators::next_permutation(&mut slots) {
            return out;
        }
    }
}

/// Scatter and balance facts on every auxiliary graph with at most ten
/// vertices.
pub fn balance_lemmas() -> Result<Vec<CheckOutcome>> {
    let mut optimal = Tally::new(Suite::BalanceLemmas, "beta-optimal orders have scatter 0 and unbalance 0");
    let mut descatter = Tally::new(Suite::BalanceLemmas, "descatter strictly lowers beta");
    let mut rebalance = Tally::new(Suite::BalanceLemmas, "rebalance strictly lowers beta");
    let mut normal = Tally::new(Suite::BalanceLemmas, "normalize never raises beta and ends balanced");
    for g in small_connected()? {
        if g.n() + 2 * g.m() > 10 {
            continue;
        }
        for w in g.vertices() {
            let aux = AuxiliaryGraph::build(g, w)?;
            let seqs = aux_orders(&aux)
                .into_iter()
                .map(|o| vc_sequence(&aux, o))
                .collect::<Result<Vec<_>>>()?;
            let best = seqs.iter().map(|s| s.beta()).min().unwrap_or(0);
            for s in &seqs {
                let label = || format!("G_{w} of {}: {:?}", g.to_text().trim(), s.order());
                if s.beta() == best {
                    optimal.record(s.scatter() == 0 && s.unbalance() == 0, label);
                }
                if s.scatter() > 0 {
                    descatter.record(s.descatter()?.beta() < s.beta(), label);
                } else if s.unbalance() > 0 {
                    rebalance.record(s.rebalance()?.beta() < s.beta(), label);
                }
                let t = s.normalize()?;
                normal.record(t.beta() <= s.beta() && t.scatter() == 0 && t.unbalance() == 0, label);
            }
        }
    }
    Ok(vec![optimal.finish(), descatter.finish(), rebalance.finish(), normal.finish()])
}

/// Subset DP against the factorial scans, free and anchored, both
/// objectives, both linear problems.
pub fn dp_vs_brute() -> Result<Vec<CheckOutcome>> {
    let mut arr = Tally::new(Suite::DpVsBrute, "arrangement optimum");
    let mut lin = Tally::new(Suite::DpVsBrute, "linear reassembling optimum");
    let mut wit = Tally::new(Suite::DpVsBrute, "DP witnesses evaluate to the reported value");
    for g in small_connected()? {
        for obj in [Objective::Alpha, Objective::Beta] {
            let anchors = std::iter::once(None).chain(g.vertices().iter().map(Some));
            for anchor in anchors {
                let label = format!("{obj} {anchor:?} on {}", g.to_text().trim());
                let a = exact_arrangement(g, obj, anchor);
                let b = brute_force_arrangement(g, obj, anchor);
                arr.expect_eq(&label, a.as_ref().ok().map(|r| r.value), b.as_ref().ok().map(|r| r.value));
                let c = exact_linear_reassembling(g, obj, anchor);
                let d = brute_force_linear_reassembling(g, obj, anchor);
                lin.expect_eq(&label, c.as_ref().ok().map(|r| r.value), d.as_ref().ok().map(|r| r.value));
                for r in [a, c].into_iter().flatten() {
                    wit.expect_eq(&label, r.witness.value(g, obj)?, r.value);
                }
            }
        }
    }
    Ok(vec![arr.finish(), lin.finish(), wit.finish()])
}

/// Reference measures of the shipped fixture trees and arrangements.
pub fn fixture_values() -> Result<Vec<CheckOutcome>> {
    let mut trees = Tally::new(Suite::Fixtures, "tree measures");
    let mut arrs = Tally::new(Suite::Fixtures, "arrangement measures");
    for &(graph, tree, alpha, beta) in TREE_VALUES {
        let m = fixtures::tree(tree).measures(&fixtures::graph(graph))?;
        let label = format!("{graph} {tree}");
        if let Some(a) = alpha {
            trees.expect_eq(&label, m.alpha, a);
        }
        trees.expect_eq(&label, m.beta, beta);
    }
    let s7 = fixtures::graph("s7");
    for &(name, alpha, beta) in ARRANGEMENT_VALUES {
        let r = evaluate_arrangement(&s7, &fixtures::arrangement(name))?;
        arrs.expect_eq(name, (r.alpha, r.beta, r.gamma), (alpha, beta, beta));
    }
    Ok(vec![trees.finish(), arrs.finish()])
}

/// `(graph, tree, alpha, beta)`.
pub const TREE_VALUES: &[(&str, &str, Option<usize>, usize)] = &[
    ("q3", "b1", Some(4), 48),
    ("q3", "b2", Some(4), 48),
    ("q3", "b3", Some(5), 49),
    ("k8", "b1", Some(16), 132),
    ("k8", "b2", Some(16), 136),
    ("k8", "b3", Some(16), 133),
    ("k8", "b4", None, 127),
    ("s7", "b1", Some(7), 32),
    ("s7", "b2", Some(7), 34),
    ("s7", "b3", Some(7), 35),
    ("s7", "b4", Some(7), 31),
    ("s7", "b5", None, 29),
];

/// `(arrangement, alpha, beta)` on the star with seven leaves.
pub const ARRANGEMENT_VALUES: &[(&str, usize, usize)] =
    &[("phi3", 6, 22), ("phi5", 4, 16), ("phi3p", 7, 28)];
