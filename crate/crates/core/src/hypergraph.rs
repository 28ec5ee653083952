//! r-uniform hypergraphs, homomorphism counts and densities.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::canon::canonical_positions;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An r-uniform hypergraph on vertices `0..n`. Edges are sorted r-sets with
/// distinct vertices; the edge list is sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;
    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.r, raw.n, raw.edges)
    }
}

impl Hypergraph {
    pub fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidGraph(format!("uniformity {r} is below 2")));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidGraph(format!("edge {e:?} does not have {r} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("edge {e:?} repeats a vertex")));
            }
            if e[r - 1] >= n {
                return Err(Error::InvalidGraph(format!("edge {e:?} leaves the vertex range 0..{n}")));
            }
            set.insert(e);
        }
        Ok(Hypergraph { r, n, edges: set.into_iter().collect() })
    }

    /// Graph (r = 2) from an edge list.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(2, n, edges.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, Vec::new())
    }

    pub fn complete(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, (0..n).combinations(r).collect())
    }

    /// Path with `len` edges.
    pub fn path(len: usize) -> Self {
        let edges = (0..len).map(|i| vec![i, i + 1]).collect();
        Self::new(2, len + 1, edges).expect("valid path")
    }

    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidParameter(format!("cycle length {len} is below 3")));
        }
        Self::new(2, len, (0..len).map(|i| vec![i, (i + 1) % len]).collect())
    }

    /// `S^{(r)}(b, c)`: `b` edges sharing the same `c` centre vertices and
    /// otherwise disjoint.
    pub fn star(r: usize, b: usize, c: usize) -> Result<Self> {
        if c == 0 || c >= r {
            return Err(Error::InvalidParameter(format!("star centre size {c} not in 1..{r}")));
        }
        let mut edges = Vec::with_capacity(b);
        for i in 0..b {
            let mut e: Vec<usize> = (0..c).collect();
            e.extend((0..r - c).map(|j| c + i * (r - c) + j));
            edges.push(e);
        }
        Self::new(r, c + b * (r - c), edges)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        let mut e = e.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.degrees().contains(&0)
    }

    /// Renames vertex `v` to `map[v]`; `map` must be a permutation.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| map[v]).collect()).collect();
        Self::new(self.r, self.n, edges).expect("relabelling preserves validity")
    }

    /// Subgraph induced on `verts`, renumbered in the given order.
    pub fn induced(&self, verts: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| map[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| map[v]).collect())
            .collect();
        Self::new(self.r, verts.len(), edges).expect("induced subgraph is valid")
    }

    pub fn is_connected(&self) -> bool {
        component_vertex_sets(self).len() <= 1
    }

    pub fn canonical_form(&self) -> Self {
        canonical_form(self)
    }

    /// JSON serialization of the canonical form; equal exactly for
    /// isomorphic hypergraphs.
    pub fn canonical_string(&self) -> String {
        canonical_form(self).to_json()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    /// Named graphs: `edge`/`e`, `path2`, `P<k>` (path with k edges),
    /// `K<k>`, `C<k>`, `star<b>`, `longbroom`; returned in canonical form.
    pub fn named(name: &str) -> Result<Self> {
        let num =
            |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidParameter(format!("unknown graph name {name:?}")));
        let g = match name {
            "edge" | "e" => Self::complete(2, 2),
            "path2" | "cherry" => Ok(Self::path(2)),
            "longbroom" => Self::graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]),
            _ if name.starts_with("star") => Self::star(2, num(&name[4..])?, 1),
            _ if name.starts_with('P') => Ok(Self::path(num(&name[1..])?)),
            _ if name.starts_with('K') => Self::complete(2, num(&name[1..])?),
            _ if name.starts_with('C') => Self::cycle(num(&name[1..])?),
            _ => Err(Error::InvalidParameter(format!("unknown graph name {name:?}"))),
        };
        g.map(|g| g.canonical_form())
    }
}

pub(crate) fn component_vertex_sets(g: &Hypergraph) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &g.edges {
        for w in e.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for v in 0..g.n {
        let root = find(&mut parent, v);
        let k = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(v);
    }
    groups
}

/// Connected components (isolated vertices included), ordered by their
/// smallest vertex, each renumbered in increasing vertex order.
pub fn connected_components(g: &Hypergraph) -> Vec<Hypergraph> {
    component_vertex_sets(g).iter().map(|c| g.induced(c)).collect()
}

pub fn canonical_form(g: &Hypergraph) -> Hypergraph {
    g.relabel(&canonical_positions(g, &[]))
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.r == b.r && a.n == b.n && a.edges.len() == b.edges.len() && canonical_form(a) == canonical_form(b)
}

pub fn disjoint_union(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph> {
    if a.r != b.r {
        return Err(Error::UniformityMismatch(a.r, b.r));
    }
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|e| e.iter().map(|&v| v + a.n).collect()));
    Hypergraph::new(a.r, a.n + b.n, edges)
}

/// Direct (tensor) product: vertex `(u, v)` is `u * b.n + v`; an edge of
/// `a` and an edge of `b` give one product edge per bijection between them.
pub fn direct_product(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph> {
    if a.r != b.r {
        return Err(Error::UniformityMismatch(a.r, b.r));
    }
    let r = a.r;
    let perms: Vec<Vec<usize>> = (0..r).permutations(r).collect();
    let mut edges = BTreeSet::new();
    for e in &a.edges {
        for f in &b.edges {
            for p in &perms {
                let mut g: Vec<usize> = (0..r).map(|i| e[i] * b.n + f[p[i]]).collect();
                g.sort_unstable();
                edges.insert(g);
            }
        }
    }
    Hypergraph::new(r, a.n * b.n, edges.into_iter().collect())
}

/// For every (r-1)-set `S` inside some edge, the set of vertices `w` with
/// `S + w` an edge.
struct Links {
    n: usize,
    links: HashMap<Vec<usize>, BitSet>,
}

impl Links {
    fn new(g: &Hypergraph) -> Self {
        let mut links: HashMap<Vec<usize>, BitSet> = HashMap::new();
        for e in &g.edges {
            for skip in 0..g.r {
                let key: Vec<usize> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                links.entry(key).or_insert_with(|| BitSet::empty(g.n)).insert(e[skip]);
            }
        }
        Links { n: g.n, links }
    }
}

struct ComponentCounter<'a> {
    links: &'a Links,
    /// `constraints[i]`: for each edge whose last vertex in the order is the
    /// i-th one, the order positions of its other vertices.
    constraints: Vec<Vec<Vec<usize>>>,
    image: Vec<usize>,
}

impl ComponentCounter<'_> {
    fn candidates(&self, i: usize) -> Option<BitSet> {
        let mut set = BitSet::full(self.links.n);
        for others in &self.constraints[i] {
            let mut key: Vec<usize> = others.iter().map(|&j| self.image[j]).collect();
            key.sort_unstable();
            match self.links.links.get(&key) {
                Some(link) => set.intersect_with(link),
                None => return None,
            }
        }
        Some(set)
    }

    fn count(&mut self, i: usize) -> u128 {
        let Some(cand) = self.candidates(i) else { return 0 };
        if i + 1 == self.constraints.len() {
            return cand.count() as u128;
        }
        let mut total = 0u128;
        for w in cand.iter() {
            self.image[i] = w;
            total += self.count(i + 1);
        }
        total
    }
}

fn count_component(h: &Hypergraph, verts: &[usize], links: &Links) -> u128 {
    let mut incident = vec![Vec::new(); h.n];
    for (i, e) in h.edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    // BFS order so that later vertices tend to be constrained by earlier ones.
    let mut order = vec![verts[0]];
    let mut placed = vec![usize::MAX; h.n];
    placed[verts[0]] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &i in &incident[v] {
            for &u in &h.edges[i] {
                if placed[u] == usize::MAX {
                    placed[u] = order.len();
                    order.push(u);
                }
            }
        }
    }
    let mut constraints = vec![Vec::new(); order.len()];
    for e in h.edges.iter().filter(|e| placed[e[0]] != usize::MAX) {
        let last = e.iter().map(|&v| placed[v]).max().expect("nonempty edge");
        let others: Vec<usize> = e.iter().map(|&v| placed[v]).filter(|&p| p != last).collect();
        constraints[last].push(others);
    }
    let mut counter = ComponentCounter { links, constraints, image: vec![0; order.len()] };
    counter.count(0)
}

/// Number of maps `V(h) -> V(g)` sending every edge of `h` onto an edge of `g`.
pub fn hom_count(h: &Hypergraph, g: &Hypergraph) -> Result<BigUint> {
    if h.r != g.r {
        return Err(Error::UniformityMismatch(h.r, g.r));
    }
    let links = Links::new(g);
    let mut total = BigUint::one();
    for comp in component_vertex_sets(h) {
        let c = if comp.len() == 1 { g.n as u128 } else { count_component(h, &comp, &links) };
        total *= BigUint::from(c);
    }
    Ok(total)
}

/// `t(h; g) = hom(h, g) / n^{|V(h)|}`.
pub fn density(h: &Hypergraph, g: &Hypergraph) -> Result<Rational> {
    if h.r != g.r {
        return Err(Error::UniformityMismatch(h.r, g.r));
    }
    if g.n == 0 {
        return Err(Error::EmptyTarget);
    }
    let hom = BigInt::from(hom_count(h, g)?);
    Ok(Rational::new(hom, BigInt::from(g.n).pow(h.n as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn brute_hom(h: &Hypergraph, g: &Hypergraph) -> u64 {
        let mut count = 0;
        for img in (0..h.n).map(|_| 0..g.n).multi_cartesian_product() {
            if h.edges.iter().all(|e| {
                let f: Vec<usize> = e.iter().map(|&v| img[v]).collect();
                f.iter().all_unique() && g.has_edge(&f)
            }) {
                count += 1;
            }
        }
        if h.n == 0 {
            1
        } else {
            count
        }
    }

    #[test]
    fn small_hom_counts() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let k22 = Hypergraph::graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let e = Hypergraph::named("edge").unwrap();
        assert_eq!(hom_count(&k3, &k3).unwrap(), BigUint::from(6u32));
        assert_eq!(hom_count(&e, &k22).unwrap(), BigUint::from(8u32));
        assert_eq!(hom_count(&k3, &k22).unwrap(), BigUint::from(0u32));
        assert_eq!(density(&e, &k3).unwrap(), rat(2, 3));
        assert_eq!(density(&k3, &k3).unwrap(), rat(2, 9));
        assert_eq!(density(&Hypergraph::empty(2, 0).unwrap(), &k3).unwrap(), rat(1, 1));
        let e_p3 = Hypergraph::graph(6, &[(0, 1), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(hom_count(&e_p3, &k22).unwrap(), BigUint::from(8u32 * 32));
    }

    #[test]
    fn hom_matches_brute_force_on_hypergraphs() {
        let g = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3, 4], vec![2, 3, 4]]).unwrap();
        let hs = [
            Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap(),
            Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap(),
            Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap(),
            Hypergraph::new(3, 3, vec![]).unwrap(),
            Hypergraph::new(3, 7, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap(),
        ];
        for h in &hs {
            assert_eq!(hom_count(h, &g).unwrap(), BigUint::from(brute_hom(h, &g)), "{h:?}");
        }
    }

    #[test]
    fn errors() {
        let g3 = Hypergraph::complete(3, 4).unwrap();
        let e = Hypergraph::named("edge").unwrap();
        assert_eq!(hom_count(&e, &g3), Err(Error::UniformityMismatch(2, 3)));
        assert_eq!(density(&e, &Hypergraph::empty(2, 0).unwrap()), Err(Error::EmptyTarget));
        assert!(Hypergraph::new(2, 2, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(2, 2, vec![vec![0, 2]]).is_err());
        assert!(Hypergraph::new(1, 2, vec![]).is_err());
    }

    #[test]
    fn products_and_unions() {
        let k2 = Hypergraph::complete(2, 2).unwrap();
        let p = direct_product(&k2, &k2).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.edges(), &[vec![0, 3], vec![1, 2]]);
        assert_eq!(density(&k2, &p).unwrap(), rat(1, 4));

        let k3 = Hypergraph::complete(2, 3).unwrap();
        let two = disjoint_union(&k3, &k3).unwrap();
        assert_eq!(hom_count(&k3, &two).unwrap(), BigUint::from(12u32));
        let k3bar = Hypergraph::empty(2, 3).unwrap();
        assert_eq!(density(&k2, &disjoint_union(&k3, &k3bar).unwrap()).unwrap(), rat(1, 6));
    }

    #[test]
    fn canonical_forms() {
        let a = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Hypergraph::graph(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Hypergraph::star(2, 3, 1).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &star));
        assert_eq!(a.canonical_string(), b.canonical_string());
        let k12 = Hypergraph::complete(2, 12).unwrap();
        assert_eq!(canonical_form(&k12), k12);
        let empty = Hypergraph::empty(3, 12).unwrap();
        assert_eq!(canonical_form(&empty), empty);
    }

    #[test]
    fn components() {
        let g = Hypergraph::graph(6, &[(0, 3), (3, 5), (1, 2)]).unwrap();
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(comps[2].n(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = Hypergraph::named("longbroom").unwrap();
        let s = g.to_json();
        assert_eq!(Hypergraph::from_json(&s).unwrap(), g);
        assert!(Hypergraph::from_json(r#"{"r":2,"n":2,"edges":[[0,5]]}"#).is_err());
    }
}
