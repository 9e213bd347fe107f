//! Small instances shipped with the toolkit: the cube, `K8`, the star `S7`,
//! the trees `b1`..`b5`, and three arrangements of the star.
//!
//! Lookups panic on unknown names; they are meant for tests and demos.

use crate::graph::Graph;
use crate::layout::LinearArrangement;
use crate::sequential::EdgeOrdering;
use crate::tree::ReassemblyTree;

macro_rules! fixture {
    ($file:literal) => {
        include_str!(concat!("../../../fixtures/", $file))
    };
}

pub const GRAPHS: &[(&str, &str)] = &[
    ("q3", fixture!("q3.g")),
    ("k8", fixture!("k8.g")),
    ("s7", fixture!("s7.g")),
    ("p3", fixture!("p3.g")),
];

pub const TREES: &[(&str, &str)] = &[
    ("b1", fixture!("b1.t")),
    ("b2", fixture!("b2.t")),
    ("b3", fixture!("b3.t")),
    ("b4", fixture!("b4.t")),
    ("b5", fixture!("b5.t")),
];

pub const ARRANGEMENTS: &[(&str, &str)] = &[
    ("phi3", fixture!("phi3.a")),
    ("phi3p", fixture!("phi3p.a")),
    ("phi5", fixture!("phi5.a")),
];

pub const ORDERINGS: &[(&str, &str)] = &[
    ("pi1_q3", fixture!("pi1_q3.o")),
    ("pi2_q3", fixture!("pi2_q3.o")),
    ("pi3_q3", fixture!("pi3_q3.o")),
    ("pi3_s7", fixture!("pi3_s7.o")),
];

fn lookup(table: &[(&str, &'static str)], name: &str) -> &'static str {
    table
        .iter()
        .find(|(k, _)| *k == name)
        .map(|(_, v)| *v)
        .unwrap_or_else(|| panic!("no fixture named `{name}`"))
}

pub fn graph(name: &str) -> Graph {
    Graph::parse(lookup(GRAPHS, name)).expect("fixture graph parses")
}

pub fn tree(name: &str) -> ReassemblyTree {
    ReassemblyTree::parse(lookup(TREES, name)).expect("fixture tree parses")
}

pub fn arrangement(name: &str) -> LinearArrangement {
    LinearArrangement::parse(lookup(ARRANGEMENTS, name)).expect("fixture arrangement parses")
}

pub fn ordering(name: &str) -> EdgeOrdering {
    EdgeOrdering::parse(lookup(ORDERINGS, name)).expect("fixture ordering parses")
}
