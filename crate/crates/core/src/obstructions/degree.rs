use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{ExponentVector, GraphBasis};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, int, rat, Rational};

fn breakpoint(p: usize) -> Rational {
    rat(2 * p as i64 + 3, 2)
}

/// `g(m) = -m` up to `p + 3/2`, constant `-(p + 3/2)` beyond.
pub fn g_eval(m: usize, p: usize) -> Rational {
    let m = int(m as i64);
    let b = breakpoint(p);
    if m <= b {
        -m
    } else {
        -b
    }
}

/// `L(F)`: sum of `g` over the vertex degrees of `f`.
pub fn l_value(f: &Hypergraph, p: usize) -> Rational {
    f.degrees().into_iter().map(|d| g_eval(d, p)).sum()
}

/// The point `(L(C))_C` over a basis of connected graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YVector {
    pub basis: Vec<String>,
    pub p: usize,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub values: Vec<Rational>,
}

pub fn y_vector(basis: &GraphBasis, p: usize) -> Result<YVector> {
    if p == 0 {
        return Err(Error::InvalidParameter("degree threshold p must be at least 1".into()));
    }
    Ok(YVector { basis: basis.names(), p, values: basis.graphs().iter().map(|c| l_value(c, p)).collect() })
}

pub fn y_pairing(y: &YVector, v: &ExponentVector) -> Result<Rational> {
    if v.len() != y.values.len() {
        return Err(Error::BasisMismatch(format!(
            "vector of length {} against y of length {}",
            v.len(),
            y.values.len()
        )));
    }
    Ok(y.values.iter().zip(&v.0).map(|(a, &b)| a * int(b)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_values() {
        assert_eq!(g_eval(0, 1), int(0));
        assert_eq!(g_eval(1, 1), int(-1));
        assert_eq!(g_eval(2, 1), int(-2));
        assert_eq!(g_eval(3, 1), rat(-5, 2));
        assert_eq!(g_eval(9, 1), rat(-5, 2));
    }

    #[test]
    fn g_is_convex_and_non_increasing() {
        for p in 1..6 {
            let v: Vec<Rational> = (0..=2 * p + 4).map(|m| g_eval(m, p)).collect();
            assert!(v.windows(2).all(|w| w[1] <= w[0]));
            assert!(v.windows(3).all(|w| &w[0] + &w[2] >= &w[1] * int(2)));
        }
    }

    #[test]
    fn l_values() {
        let named = |s: &str| Hypergraph::named(s).unwrap();
        assert_eq!(l_value(&named("P3"), 1), int(-6));
        assert_eq!(l_value(&named("longbroom"), 1), rat(-19, 2));
        assert_eq!(l_value(&named("P4"), 1), int(-8));
        // max degree at most p + 1 gives -2|E|
        assert_eq!(l_value(&named("K4"), 2), int(-12));
    }

    #[test]
    fn pairing_checks_lengths() {
        let basis = GraphBasis::new([Hypergraph::named("edge").unwrap()]).unwrap();
        let y = y_vector(&basis, 1).unwrap();
        assert_eq!(y_pairing(&y, &ExponentVector(vec![3])).unwrap(), int(-6));
        assert_eq!(y_pairing(&y, &ExponentVector(vec![0])).unwrap(), int(0));
        assert!(y_pairing(&y, &ExponentVector(vec![1, 1])).is_err());
    }
}
