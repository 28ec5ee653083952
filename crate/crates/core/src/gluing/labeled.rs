use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_positions;
use crate::error::{Error, Result};
use crate::hypergraph::{component_vertex_sets, Hypergraph};

/// A partially labeled hypergraph without isolated vertices. Stored in
/// canonical form, so equality is label-preserving isomorphism: labeled
/// vertices come first in label order, unlabeled ones follow in canonical
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLabeled", into = "RawLabeled")]
pub struct LabeledGraph {
    graph: Hypergraph,
    labels: BTreeMap<u32, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawLabeled {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    labels: BTreeMap<u32, usize>,
}

impl TryFrom<RawLabeled> for LabeledGraph {
    type Error = Error;
    fn try_from(raw: RawLabeled) -> Result<Self> {
        LabeledGraph::new(Hypergraph::new(raw.r, raw.n, raw.edges)?, raw.labels)
    }
}

impl From<LabeledGraph> for RawLabeled {
    fn from(g: LabeledGraph) -> Self {
        RawLabeled { r: g.graph.r(), n: g.graph.n(), edges: g.graph.edges().to_vec(), labels: g.labels }
    }
}

impl LabeledGraph {
    /// `labels` maps label values (at least 1) injectively to vertices.
    pub fn new(graph: Hypergraph, labels: BTreeMap<u32, usize>) -> Result<Self> {
        if graph.n() > 0 && graph.has_isolated_vertex() {
            return Err(Error::InvalidLabels("isolated vertices are not allowed".into()));
        }
        let mut seen = vec![false; graph.n()];
        for (&l, &v) in &labels {
            if l == 0 {
                return Err(Error::InvalidLabels("labels start at 1".into()));
            }
            if v >= graph.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidLabels(format!("label {l} points to an invalid or shared vertex {v}")));
            }
        }
        let fixed: Vec<usize> = labels.values().copied().collect();
        let pos = canonical_positions(&graph, &fixed);
        let graph = graph.relabel(&pos);
        let labels = labels.into_iter().map(|(l, v)| (l, pos[v])).collect();
        Ok(LabeledGraph { graph, labels })
    }

    /// The unit: the graph with no vertices.
    pub fn one(r: usize) -> Self {
        LabeledGraph { graph: Hypergraph::empty(r, 0).expect("valid"), labels: BTreeMap::new() }
    }

    pub fn unlabeled(graph: &Hypergraph) -> Result<Self> {
        Self::new(graph.clone(), BTreeMap::new())
    }

    /// Graph (r = 2) from edges and `(label, vertex)` pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], labels: &[(u32, usize)]) -> Result<Self> {
        Self::new(Hypergraph::graph(n, edges)?, labels.iter().copied().collect())
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn labels(&self) -> &BTreeMap<u32, usize> {
        &self.labels
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_one(&self) -> bool {
        self.graph.n() == 0
    }

    pub fn is_fully_labeled(&self) -> bool {
        self.labels.len() == self.graph.n()
    }

    pub fn canonical_string(&self) -> String {
        serde_json::to_string(self).expect("labeled graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidLabels(e.to_string()))
    }

    /// `[[F]]`: forget the labels.
    pub fn unlabel(&self) -> Hypergraph {
        self.graph.canonical_form()
    }

    /// Connected components, each keeping its labels.
    pub fn components(&self) -> Vec<LabeledGraph> {
        let label_of: BTreeMap<usize, u32> = self.labels.iter().map(|(&l, &v)| (v, l)).collect();
        component_vertex_sets(&self.graph)
            .into_iter()
            .map(|set| {
                let labels = set.iter().enumerate().filter_map(|(i, v)| label_of.get(v).map(|&l| (l, i))).collect();
                LabeledGraph::new(self.graph.induced(&set), labels).expect("components inherit validity")
            })
            .collect()
    }

    /// Label values of the vertices of this graph.
    pub fn label_set(&self) -> Vec<u32> {
        self.labels.keys().copied().collect()
    }
}

/// Gluing product: disjoint union with equally labeled vertices identified
/// and duplicate edges merged.
pub fn glue(a: &LabeledGraph, b: &LabeledGraph) -> Result<LabeledGraph> {
    if a.r() != b.r() {
        return Err(Error::UniformityMismatch(a.r(), b.r()));
    }
    let mut map = vec![usize::MAX; b.graph.n()];
    for (l, &v) in &b.labels {
        if let Some(&u) = a.labels.get(l) {
            map[v] = u;
        }
    }
    let mut n = a.graph.n();
    for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
        *slot = n;
        n += 1;
    }
    let mut edges = a.graph.edges().to_vec();
    edges.extend(b.graph.edges().iter().map(|e| e.iter().map(|&v| map[v]).collect()));
    let mut labels = a.labels.clone();
    for (&l, &v) in &b.labels {
        labels.entry(l).or_insert(map[v]);
    }
    LabeledGraph::new(Hypergraph::new(a.r(), n, edges)?, labels)
}
