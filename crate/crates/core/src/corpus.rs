//! Small named graphs bundled with the crate, shared by the tests and the
//! acceptance suite. The same files live in `corpus/` for use with the CLI.

use crate::cli::graph_file::parse_graph;
use crate::signed_graph::SignedGraph;

const FILES: &[(&str, &str)] = &[
    ("2K2", include_str!("../corpus/k2x2.graph")),
    ("3K2", include_str!("../corpus/k2x3.graph")),
    ("4K2", include_str!("../corpus/k2x4.graph")),
    ("5K2", include_str!("../corpus/k2x5.graph")),
    ("6K2", include_str!("../corpus/k2x6.graph")),
    ("K4", include_str!("../corpus/k4.graph")),
    ("C3", include_str!("../corpus/c3.graph")),
    ("P3", include_str!("../corpus/p3.graph")),
    ("S1", include_str!("../corpus/s1.graph")),
    ("+-K2(2,0)", include_str!("../corpus/pmk2_2_0.graph")),
    ("+-K2(0,2)", include_str!("../corpus/pmk2_0_2.graph")),
    ("+-K2(1,1)", include_str!("../corpus/pmk2_1_1.graph")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn load(name: &str) -> Option<SignedGraph> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_graph(text).expect("bundled graphs parse"))
}

pub fn all() -> Vec<(&'static str, SignedGraph)> {
    names().map(|n| (n, load(n).unwrap())).collect()
}
