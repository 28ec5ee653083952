use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::labeled::{glue, LabeledGraph};
use crate::error::Result;
use crate::hypergraph::{connected_components, density, disjoint_union, Hypergraph};
use crate::rational::Rational;

/// Keys of a combination are kept canonical so that equal graphs collect.
pub trait CanonicalKey: Ord + Clone {
    fn canonicalize(self) -> Self;
}

impl CanonicalKey for Hypergraph {
    fn canonicalize(self) -> Self {
        self.canonical_form()
    }
}

impl CanonicalKey for LabeledGraph {
    fn canonicalize(self) -> Self {
        self
    }
}

/// Finite rational combination of graphs with zero coefficients removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<K: CanonicalKey> {
    terms: BTreeMap<K, Rational>,
}

pub type LabeledCombination = Combination<LabeledGraph>;
pub type GraphCombination = Combination<Hypergraph>;

impl<K: CanonicalKey> Default for Combination<K> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: CanonicalKey> Combination<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Rational) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut c = Self::new();
        for (k, q) in terms {
            c.add_term(k, q);
        }
        c
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        let key = key.canonicalize();
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, key: &K) -> Rational {
        self.terms.get(&key.clone().canonicalize()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (k, q) in &other.terms {
            c.add_term(k.clone(), q.clone());
        }
        c
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, q)| (k.clone(), q * s)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }
}

impl LabeledCombination {
    /// Bilinear extension of the gluing product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut c = Self::new();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                c.add_term(glue(a, b)?, p * q);
            }
        }
        Ok(c)
    }

    pub fn unlabel(&self) -> GraphCombination {
        GraphCombination::from_terms(self.terms.iter().map(|(g, q)| (g.unlabel(), q.clone())))
    }
}

impl GraphCombination {
    /// Product of unlabeled combinations (disjoint union of graphs).
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut c = Self::new();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                c.add_term(disjoint_union(a, b)?, p * q);
            }
        }
        Ok(c)
    }
}

/// `[[a^2]]`.
pub fn square_expand(a: &LabeledCombination) -> Result<GraphCombination> {
    Ok(a.product(a)?.unlabel())
}

/// `sum_H c_H t(H; g)`, with densities of disconnected graphs taken as
/// products over their components.
pub fn eval_combination(a: &GraphCombination, g: &Hypergraph) -> Result<Rational> {
    let mut total = Rational::zero();
    for (h, q) in &a.terms {
        let mut t = Rational::from_integer(1.into());
        for comp in connected_components(h) {
            t *= density(&comp, g)?;
        }
        total += t * q;
    }
    Ok(total)
}

impl<K: CanonicalKey + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({q}) {k}")?;
        }
        Ok(())
    }
}
