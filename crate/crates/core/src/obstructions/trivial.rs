use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gluing::LabeledGraph;
use crate::hypergraph::Hypergraph;

pub const TRIVIAL_SQUARE_VERTEX_CAP: usize = 8;
const CANDIDATE_CAP: u128 = 50_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A partially labeled `F`, not fully labeled, with `[[F^2]]` isomorphic to
/// `h`; `None` when `h` is a trivial square.
///
/// Exhaustive over `F` on `nv` vertices with labels `1..=s` on the first `s`:
/// `[[F^2]]` has `2 nv - s` vertices and `2|E(F)| - |E(F[S])|` edges.
pub fn square_root_witness(h: &Hypergraph) -> Result<Option<LabeledGraph>> {
    let n = h.n();
    if n > TRIVIAL_SQUARE_VERTEX_CAP {
        return Err(Error::SizeCap(format!(
            "trivial-square search supports at most {TRIVIAL_SQUARE_VERTEX_CAP} vertices, got {n}"
        )));
    }
    if n == 0 || h.has_isolated_vertex() {
        return Err(Error::InvalidGraph(
            "trivial-square search needs a nonempty graph without isolated vertices".into(),
        ));
    }
    let r = h.r();
    let target = h.canonical_form();
    let mut target_degrees = h.degrees();
    target_degrees.sort_unstable();
    let e_h = h.edge_count();
    for nv in n.div_ceil(2)..n {
        let s = 2 * nv - n;
        let (inside, touching): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
            (0..nv).combinations(r).partition(|e| e.iter().all(|&v| v < s));
        let mut work = 0u128;
        for e_s in 0..=inside.len() {
            if (e_h + e_s) % 2 == 1 || (e_h + e_s) / 2 < e_s {
                continue;
            }
            work += binomial(inside.len(), e_s) * binomial(touching.len(), (e_h + e_s) / 2 - e_s);
        }
        if work > CANDIDATE_CAP {
            return Err(Error::SizeCap(format!("{work} candidate square roots on {nv} vertices")));
        }
        for e_s in 0..=inside.len() {
            if (e_h + e_s) % 2 == 1 || (e_h + e_s) / 2 < e_s {
                continue;
            }
            let e_u = (e_h + e_s) / 2 - e_s;
            if e_u == 0 {
                continue;
            }
            for ins in inside.iter().combinations(e_s) {
                for tou in touching.iter().combinations(e_u) {
                    if let Some(f) = check_candidate(r, nv, s, &ins, &tou, &target, &target_degrees)? {
                        return Ok(Some(f));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_candidate(
    r: usize,
    nv: usize,
    s: usize,
    inside: &[&Vec<usize>],
    touching: &[&Vec<usize>],
    target: &Hypergraph,
    target_degrees: &[usize],
) -> Result<Option<LabeledGraph>> {
    let mut deg_f = vec![0usize; nv];
    for e in inside.iter().chain(touching) {
        for &v in e.iter() {
            deg_f[v] += 1;
        }
    }
    if deg_f.contains(&0) {
        return Ok(None);
    }
    let mut deg_sq = Vec::with_capacity(2 * nv - s);
    let mut deg_s = vec![0usize; s];
    for e in touching {
        for &v in e.iter().filter(|&&v| v < s) {
            deg_s[v] += 1;
        }
    }
    for v in 0..nv {
        if v < s {
            deg_sq.push(deg_f[v] + deg_s[v]);
        } else {
            deg_sq.push(deg_f[v]);
            deg_sq.push(deg_f[v]);
        }
    }
    deg_sq.sort_unstable();
    if deg_sq != target_degrees {
        return Ok(None);
    }
    let copy = |v: usize| if v < s { v } else { v + nv - s };
    let mut edges: Vec<Vec<usize>> = inside.iter().chain(touching).map(|e| e.to_vec()).collect();
    edges.extend(touching.iter().map(|e| e.iter().map(|&v| copy(v)).collect()));
    let sq = Hypergraph::new(r, 2 * nv - s, edges)?;
    if &sq.canonical_form() != target {
        return Ok(None);
    }
    let f = Hypergraph::new(r, nv, inside.iter().chain(touching).map(|e| e.to_vec()).collect())?;
    let labels: BTreeMap<u32, usize> = (0..s).map(|v| (v as u32 + 1, v)).collect();
    Ok(Some(LabeledGraph::new(f, labels)?))
}

/// Whether `[[F^2]] = h` forces `F` to be a fully labeled copy of `h`.
pub fn is_trivial_square(h: &Hypergraph) -> Result<bool> {
    Ok(square_root_witness(h)?.is_none())
}
