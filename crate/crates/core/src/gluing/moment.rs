use std::collections::BTreeMap;

use serde::Serialize;

use super::basis::{Basis, GraphBasis};
use super::labeled::glue;
use crate::error::{Error, Result};
use crate::hypergraph::{connected_components, Hypergraph};

/// Product of connected unlabeled graphs: canonical component to
/// multiplicity. The empty product is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Hypergraph, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn of(g: &Hypergraph) -> Self {
        let mut m = BTreeMap::new();
        for c in connected_components(g) {
            *m.entry(c.canonical_form()).or_insert(0) += 1;
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Hypergraph, u32)> {
        self.0.iter().map(|(g, &k)| (g, k))
    }

    pub fn exponent(&self, g: &Hypergraph) -> u32 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (g, &k) in &other.0 {
            *m.entry(g.clone()).or_insert(0) += k;
        }
        Monomial(m)
    }

    /// Sparse `alpha(a) + alpha(b) - 2 alpha(c)`.
    pub fn minor_exponent(a: &Monomial, b: &Monomial, c: &Monomial) -> BTreeMap<Hypergraph, i64> {
        let mut v: BTreeMap<Hypergraph, i64> = BTreeMap::new();
        for (g, k) in a.factors().chain(b.factors()) {
            *v.entry(g.clone()).or_insert(0) += k as i64;
        }
        for (g, k) in c.factors() {
            *v.entry(g.clone()).or_insert(0) -= 2 * k as i64;
        }
        v.retain(|_, x| *x != 0);
        v
    }
}

/// Integer vector over a [`GraphBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entry `i`, zero past the end (vectors built before a basis extension).
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(len, 0);
        ExponentVector(v)
    }

    pub fn from_sparse(sparse: &BTreeMap<Hypergraph, i64>, basis: &GraphBasis) -> Result<Self> {
        let mut v = vec![0; basis.len()];
        for (g, &k) in sparse {
            let i = basis.position(g).ok_or_else(|| Error::UnknownComponent(g.to_json()))?;
            v[i] += k;
        }
        Ok(ExponentVector(v))
    }

    pub fn from_monomial(m: &Monomial, basis: &GraphBasis) -> Result<Self> {
        let sparse = m.factors().map(|(g, k)| (g.clone(), k as i64)).collect();
        Self::from_sparse(&sparse, basis)
    }
}

/// `alpha(g)`: multiplicity of every basis graph among the components of `g`.
pub fn alpha_vector(g: &Hypergraph, basis: &GraphBasis) -> Result<ExponentVector> {
    ExponentVector::from_monomial(&Monomial::of(g), basis)
}

/// Tropical moment matrix: entry `(A, B)` is `alpha([[AB]])`.
#[derive(Clone, Debug)]
pub struct MomentMatrix {
    pub rows: Basis,
    pub columns: GraphBasis,
    pub monomials: Vec<Vec<Monomial>>,
    pub entries: Vec<Vec<ExponentVector>>,
}

impl MomentMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Builds the moment matrix over `rows`. Components outside `columns` are
/// appended to it when `extend` is set (and then listed in
/// `columns.extensions()`); otherwise they are an error.
pub fn moment_matrix(rows: &Basis, mut columns: GraphBasis, extend: bool) -> Result<MomentMatrix> {
    let n = rows.len();
    let mut monomials = vec![vec![Monomial::one(); n]; n];
    for i in 0..n {
        for j in i..n {
            let m = Monomial::of(&glue(&rows.elements[i], &rows.elements[j])?.unlabel());
            for (g, _) in m.factors() {
                if columns.position(g).is_none() {
                    if !extend {
                        return Err(Error::UnknownComponent(g.to_json()));
                    }
                    columns.extend(g);
                }
            }
            monomials[j][i] = m.clone();
            monomials[i][j] = m;
        }
    }
    let entries = monomials
        .iter()
        .map(|row| row.iter().map(|m| ExponentVector::from_monomial(m, &columns)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentMatrix { rows: rows.clone(), columns, monomials, entries })
}

/// Moment matrix whose column basis consists of exactly the components
/// that occur in its entries.
pub fn moment_matrix_auto(rows: &Basis) -> Result<MomentMatrix> {
    let mut comps = Vec::new();
    for (i, a) in rows.elements.iter().enumerate() {
        for b in &rows.elements[i..] {
            let m = Monomial::of(&glue(a, b)?.unlabel());
            comps.extend(m.factors().map(|(g, _)| g.clone()));
        }
    }
    moment_matrix(rows, GraphBasis::new(comps)?, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::basis::{enumerate_basis, BasisKind};

    #[test]
    fn reduced_degree_one_matrix() {
        let rows = enumerate_basis(BasisKind::Reduced, 1, 2, 2).unwrap();
        let m = moment_matrix_auto(&rows).unwrap();
        let e = Hypergraph::named("edge").unwrap();
        let p2 = Hypergraph::path(2).canonical_form();
        assert_eq!(m.columns.graphs(), &[e.clone(), p2.clone()]);
        let idx = |edges: &[(usize, usize)], labels: &[(u32, usize)]| {
            let g = crate::gluing::LabeledGraph::from_edges(2, edges, labels).unwrap();
            rows.position(&g).unwrap()
        };
        let (e1, e2, e12) = (idx(&[(0, 1)], &[(1, 0)]), idx(&[(0, 1)], &[(2, 0)]), idx(&[(0, 1)], &[(1, 0), (2, 1)]));
        assert_eq!(m.entries[e1][e1], ExponentVector(vec![0, 1]));
        assert_eq!(m.entries[e1][e2], ExponentVector(vec![2, 0]));
        assert_eq!(m.entries[e12][e12], ExponentVector(vec![1, 0]));
        assert_eq!(m.entries[0][0], ExponentVector(vec![0, 0]));
    }

    #[test]
    fn alpha_examples() {
        let e = Hypergraph::named("edge").unwrap();
        let p2 = Hypergraph::path(2);
        let basis = GraphBasis::new([e.clone(), p2.clone()]).unwrap();
        let e3 = Hypergraph::graph(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(alpha_vector(&e3, &basis).unwrap(), ExponentVector(vec![3, 0]));
        let pee = Hypergraph::graph(7, &[(0, 1), (1, 2), (3, 4), (5, 6)]).unwrap();
        assert_eq!(alpha_vector(&pee, &basis).unwrap(), ExponentVector(vec![2, 1]));
        assert!(alpha_vector(&Hypergraph::complete(2, 3).unwrap(), &basis).is_err());
    }

    #[test]
    fn extension_is_reported() {
        let rows = enumerate_basis(BasisKind::Reduced, 1, 2, 2).unwrap();
        let cols = GraphBasis::new([Hypergraph::named("edge").unwrap()]).unwrap();
        assert!(moment_matrix(&rows, cols.clone(), false).is_err());
        let m = moment_matrix(&rows, cols, true).unwrap();
        assert_eq!(m.columns.extensions(), &[Hypergraph::path(2).canonical_form()]);
    }
}
