//! Canonical vertex orderings by partition refinement and individualization.
//!
//! A fixed prefix of vertices (labeled vertices, in label order) is kept as
//! singleton cells at the front; the remaining vertices start as one cell.
//! Leaves of the search tree are compared by their sorted edge lists and the
//! minimum is the canonical form. Branches on twin vertices, whose
//! transposition is an automorphism, are skipped.

use std::collections::HashSet;

use crate::hypergraph::Hypergraph;

struct Search<'a> {
    incident: Vec<Vec<usize>>,
    edges: &'a [Vec<usize>],
    edge_set: HashSet<&'a [usize]>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
}

/// Returns `position[v]`, the index of vertex `v` in the canonical ordering.
pub(crate) fn canonical_positions(g: &Hypergraph, fixed: &[usize]) -> Vec<usize> {
    let n = g.n();
    let edges = g.edges();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut search = Search { incident, edges, edge_set: edges.iter().map(|e| e.as_slice()).collect(), best: None };
    let mut cells: Vec<Vec<usize>> = fixed.iter().map(|&v| vec![v]).collect();
    let rest: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
    if !rest.is_empty() {
        cells.push(rest);
    }
    search.run(cells);
    search.best.map(|(_, p)| p).unwrap_or_default()
}

impl Search<'_> {
    fn signature(&self, v: usize, cell_of: &[usize]) -> Vec<Vec<usize>> {
        let mut sig: Vec<Vec<usize>> = self.incident[v]
            .iter()
            .map(|&i| {
                let mut s: Vec<usize> = self.edges[i].iter().filter(|&&u| u != v).map(|&u| cell_of[u]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.incident.len();
        loop {
            let mut cell_of = vec![0; n];
            for (k, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = k;
                }
            }
            let mut changed = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(Vec<Vec<usize>>, usize)> =
                    cell.iter().map(|&v| (self.signature(v, &cell_of), v)).collect();
                keyed.sort();
                let mut group: Vec<usize> = Vec::new();
                for i in 0..keyed.len() {
                    if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                        next.push(std::mem::take(&mut group));
                        changed = true;
                    }
                    group.push(keyed[i].1);
                }
                next.push(group);
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn swap_is_automorphism(&self, u: usize, v: usize) -> bool {
        let swap = |x: usize| {
            if x == u {
                v
            } else if x == v {
                u
            } else {
                x
            }
        };
        self.incident[u].iter().chain(&self.incident[v]).all(|&i| {
            let mut e: Vec<usize> = self.edges[i].iter().map(|&x| swap(x)).collect();
            e.sort_unstable();
            self.edge_set.contains(e.as_slice())
        })
    }

    fn run(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(k) = cells.iter().position(|c| c.len() > 1) else {
            let mut pos = vec![0; self.incident.len()];
            for (i, c) in cells.iter().enumerate() {
                pos[c[0]] = i;
            }
            let mut enc: Vec<Vec<usize>> = self
                .edges
                .iter()
                .map(|e| {
                    let mut f: Vec<usize> = e.iter().map(|&v| pos[v]).collect();
                    f.sort_unstable();
                    f
                })
                .collect();
            enc.sort_unstable();
            if self.best.as_ref().is_none_or(|(b, _)| enc < *b) {
                self.best = Some((enc, pos));
            }
            return;
        };
        let cell = cells[k].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.swap_is_automorphism(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            next.splice(k..=k, [vec![v], rest]);
            self.run(next);
        }
    }
}
