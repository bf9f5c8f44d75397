//! Signed graphs with links, loops, halfedges and loose edges.
//!
//! Nodes are numbered `0..n_nodes`. Edge order is significant: it fixes the
//! column order of the incidence matrix and the coordinate order of flows.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of edges; edge subsets are stored as 64-bit masks.
pub const MAX_EDGES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    /// Edge with two distinct endpoints.
    Link(usize, usize, Sign),
    Loop(usize, Sign),
    Half(usize),
    Loose,
}

impl Edge {
    fn map_nodes(self, f: impl Fn(usize) -> usize) -> Edge {
        match self {
            Edge::Link(u, v, s) => Edge::Link(f(u), f(v), s),
            Edge::Loop(v, s) => Edge::Loop(f(v), s),
            Edge::Half(v) => Edge::Half(f(v)),
            Edge::Loose => Edge::Loose,
        }
    }

    fn touches(&self, node: usize) -> bool {
        match *self {
            Edge::Link(u, v, _) => u == node || v == node,
            Edge::Loop(v, _) | Edge::Half(v) => v == node,
            Edge::Loose => false,
        }
    }
}

/// A set of edge indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(n_edges: usize) -> EdgeSet {
        debug_assert!(n_edges <= MAX_EDGES);
        if n_edges == 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n_edges) - 1)
        }
    }

    pub fn singleton(e: usize) -> EdgeSet {
        EdgeSet(1u64 << e)
    }

    pub fn from_edges(edges: impl IntoIterator<Item = usize>) -> EdgeSet {
        edges.into_iter().fold(EdgeSet::EMPTY, |s, e| s.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> EdgeSet {
        EdgeSet(self.0 | 1u64 << e)
    }

    pub fn without(self, e: usize) -> EdgeSet {
        EdgeSet(self.0 & !(1u64 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement relative to `0..n_edges`.
    pub fn complement(self, n_edges: usize) -> EdgeSet {
        EdgeSet(!self.0 & EdgeSet::full(n_edges).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// All subsets of `0..n_edges`, in increasing mask order.
    pub fn all_subsets(n_edges: usize) -> impl Iterator<Item = EdgeSet> {
        (0..1u64 << n_edges).map(EdgeSet)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

/// Reorientation relative to the canonical reference orientation: edges in
/// `reversed` have their incidence column (and flow value) negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub reversed: EdgeSet,
}

impl Orientation {
    pub fn reference() -> Orientation {
        Orientation {
            reversed: EdgeSet::EMPTY,
        }
    }

    pub fn sign(&self, e: usize) -> i64 {
        if self.reversed.contains(e) {
            -1
        } else {
            1
        }
    }

    /// Every one of the `2^n_edges` orientations.
    pub fn all(n_edges: usize) -> impl Iterator<Item = Orientation> {
        EdgeSet::all_subsets(n_edges).map(|reversed| Orientation { reversed })
    }
}

/// Node-by-edge incidence matrix, entries in `-2..=2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<i64>,
}

impl IncidenceMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n_cols + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n_cols.max(1))
            .take(self.n_rows)
            .map(|r| r[..self.n_cols].to_vec())
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.n_rows).map(|r| self.get(r, col)).collect()
    }

    /// Matrix of another orientation: reversed edges get negated columns.
    pub fn oriented(&self, o: &Orientation) -> IncidenceMatrix {
        let mut m = self.clone();
        for r in 0..self.n_rows {
            for c in o.reversed.iter().filter(|&c| c < self.n_cols) {
                m.entries[r * self.n_cols + c] *= -1;
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|r| (0..self.n_cols).map(|c| self.get(r, c) * x[c]).sum())
            .collect()
    }

    /// Sign of the edge behind column `col`, recovered from its end
    /// incidences as `-eta1 * eta2`. `None` for halfedge, loose and
    /// positive-loop columns, which carry no recoverable sign.
    pub fn column_sign(&self, col: usize) -> Option<Sign> {
        let nz: Vec<i64> = self.column(col).into_iter().filter(|&v| v != 0).collect();
        match nz.as_slice() {
            [a, b] => Some(if -a * b > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            }),
            [a] if a.abs() == 2 => Some(Sign::Negative),
            _ => None,
        }
    }
}

/// Union-find with parity, used for balance testing.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<bool>,
    unbalanced: Vec<bool>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest {
            parent: (0..n).collect(),
            parity: vec![false; n],
            unbalanced: vec![false; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, par) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= par;
        (root, self.parity[v])
    }

    fn join(&mut self, u: usize, v: usize, negative: bool) {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            if pu ^ pv != negative {
                self.unbalanced[ru] = true;
            }
        } else {
            self.parent[rv] = ru;
            self.parity[rv] = pu ^ pv ^ negative;
            self.unbalanced[ru] |= self.unbalanced[rv];
        }
    }

    fn mark(&mut self, v: usize) {
        let (r, _) = self.find(v);
        self.unbalanced[r] = true;
    }

    fn counts(&mut self) -> (usize, usize) {
        let n = self.parent.len();
        let mut components = 0;
        let mut balanced = 0;
        for v in 0..n {
            if self.find(v).0 == v {
                components += 1;
                if !self.unbalanced[v] {
                    balanced += 1;
                }
            }
        }
        (components, balanced)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n_nodes: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(n_nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        if edges.len() > MAX_EDGES {
            return Err(Error::TooManyEdges {
                got: edges.len(),
                max: MAX_EDGES,
            });
        }
        for edge in &edges {
            let check = |node: usize| {
                if node >= n_nodes {
                    Err(Error::InvalidNode { node, n_nodes })
                } else {
                    Ok(())
                }
            };
            match *edge {
                Edge::Link(u, v, _) => {
                    check(u)?;
                    check(v)?;
                    if u == v {
                        return Err(Error::DegenerateLink(u));
                    }
                }
                Edge::Loop(v, _) | Edge::Half(v) => check(v)?,
                Edge::Loose => {}
            }
        }
        Ok(SignedGraph { n_nodes, edges })
    }

    /// Ordinary graph given by its links, as the all-positive signed graph.
    pub fn all_positive(n_nodes: usize, links: &[(usize, usize)]) -> Result<Self> {
        let edges = links
            .iter()
            .map(|&(u, v)| {
                if u == v {
                    Edge::Loop(u, Sign::Positive)
                } else {
                    Edge::Link(u, v, Sign::Positive)
                }
            })
            .collect();
        SignedGraph::new(n_nodes, edges)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<Edge> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge {
            edge: e,
            n_edges: self.edges.len(),
        })
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn is_all_positive(&self) -> bool {
        self.edges.iter().all(|e| {
            matches!(
                e,
                Edge::Link(_, _, Sign::Positive) | Edge::Loop(_, Sign::Positive)
            )
        })
    }

    /// Incidence matrix of the canonical reference orientation.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n_cols = self.edges.len();
        let mut entries = vec![0i64; self.n_nodes * n_cols];
        for (c, edge) in self.edges.iter().enumerate() {
            match *edge {
                Edge::Link(u, v, sign) => {
                    let (lo, hi) = (u.min(v), u.max(v));
                    entries[lo * n_cols + c] = 1;
                    entries[hi * n_cols + c] = if sign.is_negative() { 1 } else { -1 };
                }
                Edge::Loop(v, Sign::Negative) => entries[v * n_cols + c] = 2,
                Edge::Half(v) => entries[v * n_cols + c] = 1,
                Edge::Loop(_, Sign::Positive) | Edge::Loose => {}
            }
        }
        IncidenceMatrix {
            n_rows: self.n_nodes,
            n_cols,
            entries,
        }
    }

    fn component_counts(&self, set: EdgeSet) -> (usize, usize) {
        let mut forest = ParityForest::new(self.n_nodes);
        for e in set.iter().filter(|&e| e < self.edges.len()) {
            match self.edges[e] {
                Edge::Link(u, v, s) => forest.join(u, v, s.is_negative()),
                Edge::Loop(v, Sign::Negative) | Edge::Half(v) => forest.mark(v),
                Edge::Loop(_, Sign::Positive) | Edge::Loose => {}
            }
        }
        forest.counts()
    }

    /// Number of balanced components of the spanning subgraph with edge set
    /// `set`. Loose edges are ignored.
    pub fn balanced_components_in(&self, set: EdgeSet) -> usize {
        self.component_counts(set).1
    }

    /// Number of connected components of the spanning subgraph on `set`.
    pub fn components_in(&self, set: EdgeSet) -> usize {
        self.component_counts(set).0
    }

    pub fn balanced_component_count(&self) -> usize {
        self.balanced_components_in(self.all_edges())
    }

    pub fn is_balanced(&self) -> bool {
        let (c, b) = self.component_counts(self.all_edges());
        c == b
    }

    /// `|E| - |V| + b`, the dimension of the real flow space.
    pub fn cyclomatic(&self) -> usize {
        self.edges.len() + self.balanced_component_count() - self.n_nodes
    }

    pub fn switch(&self, v: usize) -> Result<SignedGraph> {
        if v >= self.n_nodes {
            return Err(Error::InvalidNode {
                node: v,
                n_nodes: self.n_nodes,
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|&e| match e {
                Edge::Link(a, b, s) if (a == v) != (b == v) => Edge::Link(a, b, s.flip()),
                other => other,
            })
            .collect();
        Ok(SignedGraph {
            n_nodes: self.n_nodes,
            edges,
        })
    }

    pub fn delete_edge(&self, e: usize) -> Result<SignedGraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(SignedGraph {
            n_nodes: self.n_nodes,
            edges,
        })
    }

    /// Spanning subgraph keeping only the edges in `set` (order preserved).
    pub fn restrict(&self, set: EdgeSet) -> SignedGraph {
        SignedGraph {
            n_nodes: self.n_nodes,
            edges: set
                .iter()
                .filter(|&e| e < self.edges.len())
                .map(|e| self.edges[e])
                .collect(),
        }
    }

    /// Signed-graph contraction of a single edge. Removed nodes are compacted
    /// out, preserving the order of the remaining node ids.
    pub fn contract_edge(&self, e: usize) -> Result<SignedGraph> {
        match self.edge(e)? {
            Edge::Loose | Edge::Loop(_, Sign::Positive) => self.delete_edge(e),
            Edge::Half(v) | Edge::Loop(v, Sign::Negative) => {
                let edges = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &edge)| {
                        let edge = match edge {
                            Edge::Link(a, b, _) if a == v => Edge::Half(b),
                            Edge::Link(a, b, _) if b == v => Edge::Half(a),
                            other if other.touches(v) => Edge::Loose,
                            other => other,
                        };
                        edge.map_nodes(|x| if x > v { x - 1 } else { x })
                    })
                    .collect();
                Ok(SignedGraph {
                    n_nodes: self.n_nodes - 1,
                    edges,
                })
            }
            Edge::Link(u, v, Sign::Negative) => self.switch(u.max(v))?.contract_edge(e),
            Edge::Link(u, v, Sign::Positive) => {
                let (keep, gone) = (u.min(v), u.max(v));
                let relabel = |x: usize| {
                    if x == gone {
                        keep
                    } else if x > gone {
                        x - 1
                    } else {
                        x
                    }
                };
                let edges = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &edge)| match edge.map_nodes(relabel) {
                        Edge::Link(a, b, s) if a == b => Edge::Loop(a, s),
                        other => other,
                    })
                    .collect();
                Ok(SignedGraph {
                    n_nodes: self.n_nodes - 1,
                    edges,
                })
            }
        }
    }

    /// Contracts every edge of `set`. Edges are contracted from the highest
    /// index down so the remaining indices stay valid.
    pub fn contract_edge_set(&self, set: EdgeSet) -> Result<SignedGraph> {
        if let Some(bad) = set.iter().find(|&e| e >= self.edges.len()) {
            return Err(Error::InvalidEdge {
                edge: bad,
                n_edges: self.edges.len(),
            });
        }
        let mut edges: Vec<usize> = set.iter().collect();
        edges.reverse();
        let mut g = self.clone();
        for e in edges {
            g = g.contract_edge(e)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn parallel(m: usize) -> SignedGraph {
        SignedGraph::all_positive(2, &vec![(0, 1); m]).unwrap()
    }

    fn s1() -> SignedGraph {
        SignedGraph::new(1, vec![Edge::Loop(0, Negative), Edge::Loop(0, Negative)]).unwrap()
    }

    fn pm_k2(first: Edge, second: Edge) -> SignedGraph {
        SignedGraph::new(
            2,
            vec![Edge::Link(0, 1, Positive), Edge::Link(0, 1, Negative), first, second],
        )
        .unwrap()
    }

    fn pm_k2_11() -> SignedGraph {
        pm_k2(Edge::Half(0), Edge::Loop(1, Negative))
    }

    fn k4() -> SignedGraph {
        SignedGraph::all_positive(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(parallel(3).incidence_matrix().rows(), vec![vec![1, 1, 1], vec![-1, -1, -1]]);
        assert_eq!(s1().incidence_matrix().rows(), vec![vec![2, 2]]);
        assert_eq!(
            pm_k2_11().incidence_matrix().rows(),
            vec![vec![1, 1, 1, 0], vec![-1, 1, 0, 2]]
        );
    }

    #[test]
    fn zero_columns_for_positive_loops_and_loose_edges() {
        let g = SignedGraph::new(1, vec![Edge::Loop(0, Positive), Edge::Loose]).unwrap();
        assert_eq!(g.incidence_matrix().rows(), vec![vec![0, 0]]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SignedGraph::new(2, vec![Edge::Half(2)]),
            Err(Error::InvalidNode { node: 2, n_nodes: 2 })
        );
        assert_eq!(
            SignedGraph::new(2, vec![Edge::Link(1, 1, Positive)]),
            Err(Error::DegenerateLink(1))
        );
        assert!(matches!(
            SignedGraph::new(1, vec![Edge::Loose; 65]),
            Err(Error::TooManyEdges { .. })
        ));
    }

    #[test]
    fn balance_examples() {
        assert_eq!(parallel(3).balanced_component_count(), 1);
        assert_eq!(s1().balanced_component_count(), 0);
        assert_eq!(SignedGraph::new(3, vec![]).unwrap().balanced_component_count(), 3);
        // a triangle with one negative edge is unbalanced, and switching keeps it so
        let neg_triangle = SignedGraph::new(
            3,
            vec![Edge::Link(0, 1, Negative), Edge::Link(1, 2, Positive), Edge::Link(0, 2, Positive)],
        )
        .unwrap();
        assert_eq!(neg_triangle.balanced_component_count(), 0);
        let switched = neg_triangle.switch(1).unwrap();
        assert_eq!(switched.balanced_component_count(), 0);
        // two negative edges on a triangle form a positive circle
        let even = SignedGraph::new(
            3,
            vec![Edge::Link(0, 1, Negative), Edge::Link(1, 2, Negative), Edge::Link(0, 2, Positive)],
        )
        .unwrap();
        assert!(even.is_balanced());
    }

    #[test]
    fn cyclomatic_examples() {
        assert_eq!(k4().cyclomatic(), 3);
        assert_eq!(s1().cyclomatic(), 1);
        assert_eq!(pm_k2_11().cyclomatic(), 2);
    }

    #[test]
    fn switching_examples() {
        let g = pm_k2_11();
        let h = g.switch(0).unwrap();
        assert_eq!(h.edges()[0], Edge::Link(0, 1, Negative));
        assert_eq!(h.edges()[1], Edge::Link(0, 1, Positive));
        assert_eq!(&h.edges()[2..], &g.edges()[2..]);
        assert_eq!(h.switch(0).unwrap(), g);
        assert_eq!(s1().switch(0).unwrap(), s1());
        assert!(s1().switch(1).is_err());
    }

    #[test]
    fn contraction_examples() {
        let g = pm_k2_11();
        let c = g.contract_edge(3).unwrap();
        assert_eq!(c.n_nodes(), 1);
        assert_eq!(c.edges(), &[Edge::Half(0), Edge::Half(0), Edge::Half(0)]);

        let c = parallel(3).contract_edge(0).unwrap();
        assert_eq!(c.n_nodes(), 1);
        assert_eq!(c.edges(), &[Edge::Loop(0, Positive), Edge::Loop(0, Positive)]);
        assert_eq!(c.cyclomatic(), 2);

        // halfedge at a node with a loop: the loop becomes loose
        let g = SignedGraph::new(2, vec![Edge::Half(1), Edge::Loop(1, Positive), Edge::Link(0, 1, Negative)])
            .unwrap();
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.n_nodes(), 1);
        assert_eq!(c.edges(), &[Edge::Loose, Edge::Half(0)]);

        // negative link: switch then identify; the parallel positive link
        // becomes a negative loop
        let c = pm_k2_11().contract_edge(1).unwrap();
        assert_eq!(c.n_nodes(), 1);
        assert_eq!(c.edges(), &[Edge::Loop(0, Negative), Edge::Half(0), Edge::Loop(0, Negative)]);

        assert!(parallel(2).contract_edge(2).is_err());
    }

    #[test]
    fn deletion_keeps_balance_count() {
        let g = pm_k2(Edge::Half(0), Edge::Half(1));
        let d = g.delete_edge(2).unwrap();
        assert_eq!(d.n_edges(), 3);
        assert_eq!(d.balanced_component_count(), 0);
    }

    #[test]
    fn contract_sets() {
        let c = parallel(2).contract_edge_set(EdgeSet::full(2)).unwrap();
        assert_eq!((c.n_nodes(), c.n_edges()), (1, 0));

        let c = k4().contract_edge_set(EdgeSet::singleton(0)).unwrap();
        assert_eq!((c.n_nodes(), c.n_edges()), (3, 5));

        let c = parallel(3).contract_edge_set(EdgeSet::singleton(1)).unwrap();
        assert_eq!((c.n_nodes(), c.cyclomatic()), (1, 2));
        assert!(parallel(3).contract_edge_set(EdgeSet::singleton(5)).is_err());
    }

    #[test]
    fn column_signs_recover_edge_signs() {
        let g = pm_k2(Edge::Loop(0, Negative), Edge::Loop(1, Negative));
        for o in Orientation::all(g.n_edges()) {
            let m = g.incidence_matrix().oriented(&o);
            assert_eq!(m.column_sign(0), Some(Positive));
            assert_eq!(m.column_sign(1), Some(Negative));
            assert_eq!(m.column_sign(2), Some(Negative));
        }
    }

    #[test]
    fn loose_edges_do_not_change_balance() {
        let mut edges = s1().edges().to_vec();
        edges.push(Edge::Loose);
        let g = SignedGraph::new(1, edges).unwrap();
        assert_eq!(g.balanced_component_count(), 0);
        assert_eq!(g.cyclomatic(), 2);
    }

    #[test]
    fn edge_set_ops() {
        let s = EdgeSet::from_edges([0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(s.complement(6), EdgeSet::from_edges([1, 3, 4]));
        assert!(EdgeSet::singleton(2).is_subset_of(s));
        assert_eq!(s.to_string(), "{1,3,6}");
        assert_eq!(EdgeSet::full(64).len(), 64);
    }
}
