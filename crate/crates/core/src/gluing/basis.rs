use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use super::labeled::{glue, LabeledGraph};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasisKind {
    /// All partially labeled graphs with at most `d` edges.
    Full,
    /// Those whose every connected component carries a label.
    Reduced,
    /// Connected unlabeled products `[[AB]]` of reduced basis elements.
    Connected,
}

/// An ordered basis. Elements are sorted by edge count and then by
/// canonical string; the reduced and full bases start with the unit.
#[derive(Clone, Debug, Serialize)]
pub struct Basis {
    pub kind: BasisKind,
    pub d: usize,
    pub label_budget: u32,
    pub r: usize,
    pub elements: Vec<LabeledGraph>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, g: &LabeledGraph) -> Option<usize> {
        self.elements.iter().position(|x| x == g)
    }
}

/// Labels sufficient to label every vertex of a graph with `d` edges.
pub fn default_label_budget(d: usize, r: usize) -> u32 {
    (r * d) as u32
}

/// Unlabeled r-graphs with exactly `e` edges and no isolated vertices, for
/// every `e` in `1..=d`, as canonical forms.
pub fn graphs_up_to(d: usize, r: usize) -> Vec<Vec<Hypergraph>> {
    let mut levels: Vec<Vec<Hypergraph>> = vec![vec![Hypergraph::empty(r, 0).expect("valid")]];
    for e in 1..=d {
        let mut next = BTreeSet::new();
        for g in &levels[e - 1] {
            let n = g.n();
            for fresh in 0..=r {
                for old in (0..n).combinations(r - fresh) {
                    let mut edge = old.clone();
                    edge.extend(n..n + fresh);
                    if fresh == 0 && g.has_edge(&edge) {
                        continue;
                    }
                    let mut edges = g.edges().to_vec();
                    edges.push(edge);
                    next.insert(Hypergraph::new(r, n + fresh, edges).expect("valid").canonical_form());
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

fn sort_key(g: &LabeledGraph) -> (usize, String) {
    (g.edge_count(), g.canonical_string())
}

/// Enumerates `B_d`, `B~_d` or `V_d` for r-graphs with labels from
/// `1..=label_budget`.
pub fn enumerate_basis(kind: BasisKind, d: usize, label_budget: u32, r: usize) -> Result<Basis> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("uniformity {r} is below 2")));
    }
    let elements = match kind {
        BasisKind::Full | BasisKind::Reduced => labeled_graphs(kind, d, label_budget, r),
        BasisKind::Connected => {
            let reduced = labeled_graphs(BasisKind::Reduced, d, label_budget, r);
            connected_products(&reduced)?
        }
    };
    Ok(Basis { kind, d, label_budget, r, elements })
}

fn labeled_graphs(kind: BasisKind, d: usize, budget: u32, r: usize) -> Vec<LabeledGraph> {
    let mut set = BTreeSet::new();
    set.insert(LabeledGraph::one(r));
    for level in graphs_up_to(d, r).iter().skip(1) {
        for g in level {
            let n = g.n();
            for k in 0..=n.min(budget as usize) {
                for verts in (0..n).combinations(k) {
                    for labels in (1..=budget).permutations(k) {
                        let map: BTreeMap<u32, usize> = labels.into_iter().zip(verts.iter().copied()).collect();
                        let lg = LabeledGraph::new(g.clone(), map).expect("valid labeling");
                        if kind == BasisKind::Reduced && lg.components().iter().any(|c| c.labels().is_empty()) {
                            continue;
                        }
                        set.insert(lg);
                    }
                }
            }
        }
    }
    let mut v: Vec<LabeledGraph> = set.into_iter().collect();
    v.sort_by_cached_key(sort_key);
    v
}

fn connected_products(reduced: &[LabeledGraph]) -> Result<Vec<LabeledGraph>> {
    let mut set = BTreeSet::new();
    for (i, a) in reduced.iter().enumerate() {
        for b in &reduced[i..] {
            let g = glue(a, b)?.unlabel();
            if g.n() > 0 && g.is_connected() {
                set.insert(LabeledGraph::unlabeled(&g)?);
            }
        }
    }
    let mut v: Vec<LabeledGraph> = set.into_iter().collect();
    v.sort_by_cached_key(sort_key);
    Ok(v)
}

/// Ordered list of connected unlabeled graphs indexing exponent vectors.
/// Graphs appended after construction are recorded as extensions.
#[derive(Clone, Debug, Default)]
pub struct GraphBasis {
    graphs: Vec<Hypergraph>,
    index: HashMap<Hypergraph, usize>,
    extensions: Vec<Hypergraph>,
}

impl GraphBasis {
    /// Canonicalizes, deduplicates and orders the graphs.
    pub fn new(graphs: impl IntoIterator<Item = Hypergraph>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for g in graphs {
            if g.n() == 0 || !g.is_connected() {
                return Err(Error::BasisMismatch(format!("{} is not a connected nonempty graph", g.to_json())));
            }
            set.insert(g.canonical_form());
        }
        let mut graphs: Vec<Hypergraph> = set.into_iter().collect();
        graphs.sort_by_cached_key(|g| (g.edge_count(), g.to_json()));
        let index = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(GraphBasis { graphs, index, extensions: Vec::new() })
    }

    pub fn from_basis(basis: &Basis) -> Result<Self> {
        Self::new(basis.elements.iter().map(|g| g.unlabel()))
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Hypergraph] {
        &self.graphs
    }

    pub fn extensions(&self) -> &[Hypergraph] {
        &self.extensions
    }

    /// Position of a canonical connected graph.
    pub fn position(&self, g: &Hypergraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Appends a canonical connected graph if absent; returns its position.
    pub fn extend(&mut self, g: &Hypergraph) -> usize {
        if let Some(i) = self.index.get(g) {
            return *i;
        }
        self.graphs.push(g.clone());
        self.extensions.push(g.clone());
        self.index.insert(g.clone(), self.graphs.len() - 1);
        self.graphs.len() - 1
    }

    pub fn names(&self) -> Vec<String> {
        self.graphs.iter().map(|g| g.to_json()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_counts() {
        let levels = graphs_up_to(3, 2);
        let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        // 1 edge: K2; 2 edges: path, two edges; 3 edges: P3, star, K3, path+edge, 3 edges
        assert_eq!(counts, vec![1, 1, 2, 5]);
    }

    #[test]
    fn reduced_degree_one() {
        let b = enumerate_basis(BasisKind::Reduced, 1, 2, 2).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.elements[0].is_one());
        let v = enumerate_basis(BasisKind::Connected, 1, 2, 2).unwrap();
        let names: Vec<Hypergraph> = v.elements.iter().map(|g| g.unlabel()).collect();
        assert_eq!(names, vec![Hypergraph::named("edge").unwrap(), Hypergraph::path(2).canonical_form()]);
    }

    #[test]
    fn reduced_degree_two_count() {
        // 1 + 10 one-edge graphs + 21 two-component + 38 labeled cherries
        let b = enumerate_basis(BasisKind::Reduced, 2, 4, 2).unwrap();
        assert_eq!(b.len(), 70);
        let full = enumerate_basis(BasisKind::Full, 2, 4, 2).unwrap();
        assert_eq!(full.len(), 83);
    }

    #[test]
    fn zero_budget() {
        let b = enumerate_basis(BasisKind::Reduced, 1, 0, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert!(enumerate_basis(BasisKind::Connected, 1, 0, 2).unwrap().is_empty());
    }
}
