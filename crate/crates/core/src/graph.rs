//! Multigraphs with loops, spanning-subgraph states and the
//! deletion/contraction operations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest edge count a graph may carry; states are bitmasks in a `u64`.
pub const MAX_EDGES: usize = 62;

/// An ordered multigraph on vertices `1..=n`. Loops and parallel edges are
/// allowed, and the edge order is part of the value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.len() > MAX_EDGES {
            return Err(Error::budget("edges", edges.len() as u64, MAX_EDGES as u64));
        }
        for &(i, j) in &edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::EndpointOutOfRange {
                        endpoint: v,
                        vertices: n,
                    });
                }
            }
        }
        Ok(Graph { n, edges })
    }

    /// The edgeless graph on `k` vertices.
    pub fn empty(k: usize) -> Self {
        Graph {
            n: k,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge {
            index: e,
            edges: self.m(),
        })
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (i, j) = self.edges[e];
        i == j
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(i, j)| i == j)
    }

    /// Bitmask with every edge set.
    pub fn full_state(&self) -> u64 {
        if self.m() == 64 {
            u64::MAX
        } else {
            (1u64 << self.m()) - 1
        }
    }

    /// `G - e`: same vertices, edge `e` removed.
    pub fn delete_edge(&self, e: usize) -> Result<Graph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Graph { n: self.n, edges })
    }

    /// `G / e`: the endpoints of `e` are identified as `min(i, j)` and
    /// higher labels shift down by one. Contracting a loop deletes it.
    pub fn contract_edge(&self, e: usize) -> Result<Graph> {
        let (i, j) = self.edge(e)?;
        if i == j {
            return self.delete_edge(e);
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let relabel = |v: usize| match v.cmp(&hi) {
            std::cmp::Ordering::Equal => lo,
            std::cmp::Ordering::Greater => v - 1,
            std::cmp::Ordering::Less => v,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        Ok(Graph {
            n: self.n - 1,
            edges,
        })
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(i, j)| (i + shift, j + shift)))
            .collect();
        Graph::new(self.n + other.n, edges)
    }

    /// Renames vertex `v` to `perm[v - 1]`. `perm` must be a permutation of
    /// `1..=n`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n, 1)?;
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| (perm[i - 1], perm[j - 1]))
            .collect();
        Ok(Graph { n: self.n, edges })
    }

    /// New edge `k` is old edge `order[k]`.
    pub fn reorder_edges(&self, order: &[usize]) -> Result<Graph> {
        check_permutation(order, self.m(), 0)?;
        let edges = order.iter().map(|&k| self.edges[k]).collect();
        Ok(Graph { n: self.n, edges })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(i, j)| usize::from(i == v) + usize::from(j == v))
            .sum()
    }

    /// Components of the spanning subgraph `[G:s]`.
    pub fn state(&self, members: u64) -> State<'_> {
        State::new(self, members)
    }

    /// Linear form `x_i - x_j` attached to edge `e`.
    pub fn edge_form(&self, e: usize) -> Result<LinearForm> {
        let (i, j) = self.edge(e)?;
        Ok(LinearForm::between(i, j))
    }

    /// Text encoding: a `v <n>` header followed by one `e <i> <j>` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\n", self.n);
        for &(i, j) in &self.edges {
            out.push_str(&format!("e {} {}\n", i, j));
        }
        out
    }

    /// A key shared by isomorphic relabelings produced by a deterministic
    /// degree-refined vertex ordering. Equal keys imply isomorphic graphs;
    /// the converse need not hold.
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize)>) {
        let degrees: Vec<usize> = (1..=self.n).map(|v| self.degree(v)).collect();
        let mut neighbour_degrees: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            neighbour_degrees[i - 1].push(degrees[j - 1]);
            neighbour_degrees[j - 1].push(degrees[i - 1]);
        }
        for list in &mut neighbour_degrees {
            list.sort_unstable();
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| {
            degrees[b]
                .cmp(&degrees[a])
                .then_with(|| neighbour_degrees[b].cmp(&neighbour_degrees[a]))
                .then(a.cmp(&b))
        });
        let mut label = vec![0; self.n];
        for (new, &old) in order.iter().enumerate() {
            label[old] = new + 1;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (label[i - 1], label[j - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        (self.n, edges)
    }
}

fn check_permutation(perm: &[usize], len: usize, base: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "permutation of length {} for {} items",
            perm.len(),
            len
        )));
    }
    for &p in perm {
        let idx = p.checked_sub(base).filter(|&i| i < len);
        match idx {
            Some(i) if !seen[i] => seen[i] = true,
            _ => {
                return Err(Error::DimensionMismatch(format!(
                    "{:?} is not a permutation",
                    perm
                )))
            }
        }
    }
    Ok(())
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Parses the line-oriented edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let parse_err = |line: usize, message: &str| Error::Parse {
        line,
        message: message.to_string(),
    };
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "v" => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate `v` header"));
                }
                if !edges.is_empty() {
                    return Err(parse_err(line, "`v` header must precede edges"));
                }
                if fields.len() != 2 {
                    return Err(parse_err(line, "malformed line: expected `v <n>`"));
                }
                let count = fields[1]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, "malformed line: vertex count is not a number"))?;
                n = Some(count);
            }
            "e" => {
                let Some(count) = n else {
                    return Err(parse_err(line, "missing `v` header"));
                };
                if fields.len() != 3 {
                    return Err(parse_err(line, "malformed line: expected `e <i> <j>`"));
                }
                let mut ends = [0usize; 2];
                for (slot, field) in ends.iter_mut().zip(&fields[1..]) {
                    *slot = field
                        .parse::<usize>()
                        .map_err(|_| parse_err(line, "malformed line: endpoint is not a number"))?;
                    if *slot == 0 || *slot > count {
                        return Err(parse_err(line, "endpoint out of range"));
                    }
                }
                edges.push((ends[0], ends[1]));
                if edges.len() > MAX_EDGES {
                    return Err(parse_err(line, &format!("more than {} edges", MAX_EDGES)));
                }
            }
            _ => return Err(parse_err(line, "malformed line: unknown item")),
        }
    }
    let n = n.ok_or_else(|| parse_err(last_line + 1, "missing `v` header"))?;
    Graph::new(n, edges)
}

/// The linear form `x_plus - x_minus` of an edge, or zero for a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearForm {
    Zero,
    /// `plus < minus`, both 1-indexed vertex labels.
    Diff {
        plus: usize,
        minus: usize,
    },
}

impl LinearForm {
    /// Canonically oriented form `x_min - x_max`.
    pub fn between(i: usize, j: usize) -> Self {
        if i == j {
            LinearForm::Zero
        } else {
            LinearForm::Diff {
                plus: i.min(j),
                minus: i.max(j),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LinearForm::Zero)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearForm::Zero => write!(f, "0"),
            LinearForm::Diff { plus, minus } => write!(f, "x_{} - x_{}", plus, minus),
        }
    }
}

/// Union-find with path compression and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns `true` if two different sets were merged.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// A spanning subgraph `[G:s]` together with its component partition.
#[derive(Debug, Clone)]
pub struct State<'g> {
    graph: &'g Graph,
    members: u64,
    /// Smallest vertex label in the component of each vertex (index `v - 1`).
    component_min: Vec<usize>,
    k: usize,
    forest_edges: usize,
}

impl<'g> State<'g> {
    pub fn new(graph: &'g Graph, members: u64) -> Self {
        Self::from_edge_order(graph, members, 0..graph.m())
    }

    /// Same as [`State::new`] but unions the member edges in the given order.
    pub fn from_edge_order(
        graph: &'g Graph,
        members: u64,
        order: impl IntoIterator<Item = usize>,
    ) -> Self {
        let members = members & graph.full_state();
        let mut sets = DisjointSets::new(graph.n());
        let mut forest_edges = 0;
        for e in order {
            if members >> e & 1 == 1 {
                let (i, j) = graph.edges()[e];
                if sets.union(i - 1, j - 1) {
                    forest_edges += 1;
                }
            }
        }
        let mut root_min = vec![usize::MAX; graph.n()];
        for v in 0..graph.n() {
            let r = sets.find(v);
            root_min[r] = root_min[r].min(v + 1);
        }
        let component_min: Vec<usize> = (0..graph.n()).map(|v| root_min[sets.find(v)]).collect();
        let k = component_min
            .iter()
            .enumerate()
            .filter(|&(v, &c)| c == v + 1)
            .count();
        State {
            graph,
            members,
            component_min,
            k,
            forest_edges,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn members(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members >> e & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }

    /// Number of connected components `k(s)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges of `s` that joined two different components while unioning.
    pub fn forest_edges(&self) -> usize {
        self.forest_edges
    }

    /// Component representative (smallest vertex label) of vertex `v`.
    pub fn representative(&self, v: usize) -> usize {
        self.component_min[v - 1]
    }

    /// Component representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        (1..=self.graph.n())
            .filter(|&v| self.component_min[v - 1] == v)
            .collect()
    }

    /// The partition as sorted blocks of vertex labels.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| {
                (1..=self.graph.n())
                    .filter(|&v| self.component_min[v - 1] == r)
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Graph {
        parse_graph(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(g("v 2\ne 1 2"), Graph::new(2, vec![(1, 2)]).unwrap());
        assert_eq!(g("v 1\ne 1 1"), Graph::new(1, vec![(1, 1)]).unwrap());
        let err = parse_graph("v 2\ne 1 3").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "endpoint out of range".into()
            }
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_graph("# c\ne 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("v 2\ne 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("v x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("v 2\nv 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("w 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("# only"),
            Err(Error::Parse { line: 2, .. })
        ));
        let too_many = format!("v 2\n{}", "e 1 2\n".repeat(63));
        assert!(matches!(
            parse_graph(&too_many),
            Err(Error::Parse { line: 64, .. })
        ));
    }

    #[test]
    fn comments_and_empty_graph() {
        let e = g("# empty\nv 0\n");
        assert_eq!((e.n(), e.m()), (0, 0));
        assert_eq!(e.state(0).k(), 0);
    }

    #[test]
    fn text_round_trip_keeps_order() {
        let text = "v 3\ne 3 1\ne 1 2\ne 2 2\ne 1 3\n";
        assert_eq!(g(text).to_text(), text);
    }

    #[test]
    fn deletion() {
        let p2 = g("v 2\ne 1 2");
        assert_eq!(p2.delete_edge(0).unwrap(), Graph::empty(2));
        let c3 = g("v 3\ne 1 2\ne 2 3\ne 1 3");
        assert_eq!(c3.delete_edge(2).unwrap(), g("v 3\ne 1 2\ne 2 3"));
        let lp = g("v 1\ne 1 1");
        assert_eq!(lp.delete_edge(0).unwrap(), Graph::empty(1));
        assert!(matches!(lp.delete_edge(1), Err(Error::InvalidEdge { .. })));
    }

    #[test]
    fn contraction() {
        let p2 = g("v 2\ne 1 2");
        assert_eq!(p2.contract_edge(0).unwrap(), Graph::empty(1));
        let c3 = g("v 3\ne 1 2\ne 2 3\ne 1 3");
        assert_eq!(c3.contract_edge(0).unwrap(), g("v 2\ne 1 2\ne 1 2"));
        let double = g("v 2\ne 1 2\ne 1 2");
        assert_eq!(double.contract_edge(0).unwrap(), g("v 1\ne 1 1"));
        let lp = g("v 1\ne 1 1");
        assert_eq!(lp.contract_edge(0).unwrap(), Graph::empty(1));
        assert!(matches!(
            p2.contract_edge(3),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn contraction_relabels_downwards() {
        let g4 = g("v 4\ne 2 4\ne 4 3\ne 1 4");
        assert_eq!(g4.contract_edge(0).unwrap(), g("v 3\ne 2 3\ne 1 2"));
    }

    #[test]
    fn state_components_examples() {
        let p2 = g("v 2\ne 1 2");
        assert_eq!(p2.state(0).k(), 2);
        assert_eq!(p2.state(1).k(), 1);
        let c3 = g("v 3\ne 1 2\ne 2 3\ne 1 3");
        let s = c3.state(0b011);
        assert_eq!(s.k(), 1);
        assert_eq!(s.blocks(), vec![vec![1, 2, 3]]);
        let full = c3.state(0b111);
        assert_eq!((full.k(), full.forest_edges(), full.size()), (1, 2, 3));
    }

    #[test]
    fn loops_do_not_change_partition() {
        let lp = g("v 2\ne 2 2");
        assert_eq!(lp.state(1).k(), 2);
        assert_eq!(lp.state(1).representatives(), vec![1, 2]);
    }

    #[test]
    fn edge_forms() {
        let gr = g("v 3\ne 2 1\ne 1 3\ne 2 2");
        assert_eq!(
            gr.edge_form(0).unwrap(),
            LinearForm::Diff { plus: 1, minus: 2 }
        );
        assert_eq!(
            gr.edge_form(1).unwrap(),
            LinearForm::Diff { plus: 1, minus: 3 }
        );
        assert_eq!(gr.edge_form(2).unwrap(), LinearForm::Zero);
        assert_eq!(gr.edge_form(0).unwrap().to_string(), "x_1 - x_2");
    }

    #[test]
    fn relabel_and_reorder() {
        let p3 = g("v 3\ne 1 2\ne 2 3");
        assert_eq!(
            p3.relabel_vertices(&[3, 1, 2]).unwrap(),
            g("v 3\ne 3 1\ne 1 2")
        );
        assert_eq!(p3.reorder_edges(&[1, 0]).unwrap(), g("v 3\ne 2 3\ne 1 2"));
        assert!(p3.relabel_vertices(&[1, 1, 2]).is_err());
        assert!(p3.reorder_edges(&[0]).is_err());
    }

    #[test]
    fn canonical_key_identifies_relabelings() {
        let a = g("v 4\ne 1 2\ne 2 3\ne 3 4\ne 1 3");
        let b = a
            .relabel_vertices(&[4, 2, 1, 3])
            .unwrap()
            .reorder_edges(&[3, 1, 0, 2])
            .unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
    }
}
