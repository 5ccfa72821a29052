#![allow(dead_code)]

use khroma_core::{parse_graph, Graph};

pub fn graph(text: &str) -> Graph {
    parse_graph(text).expect("corpus graph parses")
}

pub fn corpus() -> Vec<(&'static str, Graph)> {
    [
        ("N1", "v 1"),
        ("N2", "v 2"),
        ("N3", "v 3"),
        ("P2", "v 2\ne 1 2"),
        ("P3", "v 3\ne 1 2\ne 2 3"),
        ("P4", "v 4\ne 1 2\ne 2 3\ne 3 4"),
        ("C3", "v 3\ne 1 2\ne 2 3\ne 1 3"),
        ("C4", "v 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4"),
        ("C5", "v 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5"),
        ("K4", "v 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4"),
        ("K4-e", "v 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4"),
        ("double edge", "v 2\ne 1 2\ne 1 2"),
        ("loop", "v 1\ne 1 1"),
        ("triangle+pendant", "v 4\ne 1 2\ne 2 3\ne 1 3\ne 3 4"),
        ("P2+N1", "v 3\ne 1 2"),
    ]
    .into_iter()
    .map(|(name, text)| (name, graph(text)))
    .collect()
}
