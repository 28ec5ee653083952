use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{enumerate_basis, glue, BasisKind, Monomial};
use crate::hypergraph::Hypergraph;
use crate::poly::{isolate_roots, sign_at_root, Polynomial};
use crate::rational::{self, Rational};

/// A principal minor of the reduced moment matrix as a polynomial in the
/// free coordinate `w`, required to be nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorConstraint {
    pub rows: Vec<String>,
    #[serde(serialize_with = "serialize_poly")]
    pub polynomial: Polynomial,
}

fn serialize_poly<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(rational::fraction_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MinorVerdict {
    /// No `w` in `[0, 1]` satisfies these constraints simultaneously.
    Refuted { constraints: Vec<MinorConstraint> },
    /// Every constraint holds at a point of `[lo, hi]` (a root of one of
    /// them isolated in that interval, or the rational point `lo == hi`).
    Inconclusive {
        #[serde(serialize_with = "rational::serialize")]
        lo: Rational,
        #[serde(serialize_with = "rational::serialize")]
        hi: Rational,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorCertificate {
    pub d: usize,
    pub label_budget: u32,
    pub free: String,
    pub fixed: BTreeMap<String, String>,
    pub minors_considered: usize,
    pub constraints: Vec<MinorConstraint>,
    pub verdict: MinorVerdict,
}

impl MinorCertificate {
    pub fn is_refutation(&self) -> bool {
        matches!(self.verdict, MinorVerdict::Refuted { .. })
    }
}

fn entry_poly(m: &Monomial, fixed: &HashMap<Hypergraph, Rational>, free: &Hypergraph) -> Option<Polynomial> {
    let mut c = Rational::one();
    let mut deg = 0;
    for (g, k) in m.factors() {
        if g == free {
            deg += k as usize;
        } else {
            c *= num_traits::pow(fixed.get(g)?.clone(), k as usize);
        }
    }
    Some(Polynomial::monomial(c, deg))
}

fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        3 => {
            let minor = |a: usize, b: usize, c: usize, e: usize| m[a][c].mul(&m[b][e]).sub(&m[a][e].mul(&m[b][c]));
            m[0][0].mul(&minor(1, 2, 1, 2)).sub(&m[0][1].mul(&minor(1, 2, 0, 2))).add(&m[0][2].mul(&minor(1, 2, 0, 1)))
        }
        _ => unreachable!("minors of size at most three"),
    }
}

/// Distinct (up to positive scaling) nonconstant constraints from principal
/// minors of size at most three whose entries involve only the fixed graphs
/// and the free one, plus any negative constant; returns them with the
/// number of minors examined.
pub fn minor_constraints(
    fixed: &BTreeMap<Hypergraph, Rational>,
    free: &Hypergraph,
    d: usize,
    label_budget: u32,
) -> Result<(Vec<MinorConstraint>, usize)> {
    let free = free.canonical_form();
    let mut values = HashMap::new();
    for (g, v) in fixed {
        if g.n() == 0 || !g.is_connected() {
            return Err(Error::InvalidGraph(format!("fixed graph {} is not connected", g.to_json())));
        }
        if v.is_negative() || v > &Rational::one() {
            return Err(Error::InvalidParameter(format!("density {} outside [0, 1]", rational::fraction_string(v))));
        }
        values.insert(g.canonical_form(), v.clone());
    }
    if values.contains_key(&free) {
        return Err(Error::InvalidParameter("the free graph also has a fixed value".into()));
    }
    let rows = enumerate_basis(BasisKind::Reduced, d, label_budget, free.r())?;
    let n = rows.len();
    let mut entries: Vec<Vec<Option<Polynomial>>> = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            let m = Monomial::of(&glue(&rows.elements[i], &rows.elements[j])?.unlabel());
            let p = entry_poly(&m, &values, &free);
            entries[j][i] = p.clone();
            entries[i][j] = p;
        }
    }
    let usable: Vec<usize> = (0..n).filter(|&i| entries[i][i].is_some()).collect();
    let ok = |i: usize, j: usize| entries[i][j].is_some();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut considered = 0;
    let mut push = |idx: &[usize], out: &mut Vec<MinorConstraint>| {
        let m: Vec<Vec<Polynomial>> =
            idx.iter().map(|&i| idx.iter().map(|&j| entries[i][j].clone().expect("usable")).collect()).collect();
        let p = det(&m);
        let constant_ok = p.degree().unwrap_or(0) == 0 && !p.leading().is_negative();
        if constant_ok {
            return;
        }
        let key = p.normalized();
        if seen.insert(key) {
            out.push(MinorConstraint {
                rows: idx.iter().map(|&i| rows.elements[i].canonical_string()).collect(),
                polynomial: p,
            });
        }
    };
    for (a, &i) in usable.iter().enumerate() {
        considered += 1;
        push(&[i], &mut out);
        for (b, &j) in usable.iter().enumerate().skip(a + 1) {
            if !ok(i, j) {
                continue;
            }
            considered += 1;
            push(&[i, j], &mut out);
            for &k in &usable[b + 1..] {
                if ok(i, k) && ok(j, k) {
                    considered += 1;
                    push(&[i, j, k], &mut out);
                }
            }
        }
    }
    Ok((out, considered))
}

/// Exact feasibility of a family of `p >= 0` constraints on `[0, 1]`, with
/// root isolation and signs at roots cached per constraint.
struct Feasibility<'a> {
    polys: Vec<&'a Polynomial>,
    roots: Vec<Vec<(Rational, Rational)>>,
    endpoint_signs: Vec<[i32; 2]>,
    cache: HashMap<(usize, usize, usize), i32>,
}

impl<'a> Feasibility<'a> {
    fn new(polys: Vec<&'a Polynomial>) -> Self {
        let (zero, one) = (Rational::zero(), Rational::one());
        let roots = polys
            .iter()
            .map(|p| if p.degree().unwrap_or(0) == 0 { Vec::new() } else { isolate_roots(p, &zero, &one) })
            .collect();
        let endpoint_signs = polys.iter().map(|p| [p.sign_at(&zero), p.sign_at(&one)]).collect();
        Feasibility { polys, roots, endpoint_signs, cache: HashMap::new() }
    }

    fn sign(&mut self, owner: usize, root: usize, q: usize) -> i32 {
        if owner == q {
            return 0;
        }
        if let Some(&s) = self.cache.get(&(owner, root, q)) {
            return s;
        }
        let (lo, hi) = &self.roots[owner][root];
        let s = sign_at_root(self.polys[owner], lo, hi, self.polys[q]);
        self.cache.insert((owner, root, q), s);
        s
    }

    /// A witness interval if the constraints in `subset` share a point.
    fn witness(&mut self, subset: &[usize]) -> Option<(Rational, Rational)> {
        for (e, x) in [Rational::zero(), Rational::one()].into_iter().enumerate() {
            if subset.iter().all(|&i| self.endpoint_signs[i][e] >= 0) {
                return Some((x.clone(), x));
            }
        }
        for &i in subset {
            for root in 0..self.roots[i].len() {
                if subset.iter().all(|&q| self.sign(i, root, q) >= 0) {
                    return Some(self.roots[i][root].clone());
                }
            }
        }
        None
    }
}

/// Decides whether fixing `fixed` leaves any value in `[0, 1]` for the one
/// free coordinate compatible with all small principal minors of the
/// reduced moment matrix; on refutation returns a smallest refuting set
/// among singles and pairs, or all constraints.
pub fn minor_certificate(
    fixed: &BTreeMap<Hypergraph, Rational>,
    free: &[Hypergraph],
    d: usize,
    label_budget: u32,
) -> Result<MinorCertificate> {
    let [free] = free else { return Err(Error::FreeCoordinates(free.len())) };
    let (constraints, minors_considered) = minor_constraints(fixed, free, d, label_budget)?;
    let mut feas = Feasibility::new(constraints.iter().map(|c| &c.polynomial).collect());
    let all: Vec<usize> = (0..constraints.len()).collect();
    let verdict = match feas.witness(&all) {
        Some((lo, hi)) => MinorVerdict::Inconclusive { lo, hi },
        None => {
            let pick = |idx: &[usize]| idx.iter().map(|&i| constraints[i].clone()).collect();
            let single = all.iter().find(|&&i| feas.witness(&[i]).is_none()).copied();
            let refuting = match single {
                Some(i) => pick(&[i]),
                None => {
                    let mut pair = None;
                    'outer: for i in 0..all.len() {
                        for j in i + 1..all.len() {
                            if feas.witness(&[i, j]).is_none() {
                                pair = Some([i, j]);
                                break 'outer;
                            }
                        }
                    }
                    match pair {
                        Some(p) => pick(&p),
                        None => pick(&all),
                    }
                }
            };
            MinorVerdict::Refuted { constraints: refuting }
        }
    };
    Ok(MinorCertificate {
        d,
        label_budget,
        free: free.canonical_string(),
        fixed: fixed.iter().map(|(g, v)| (g.canonical_string(), rational::fraction_string(v))).collect(),
        minors_considered,
        constraints,
        verdict,
    })
}

/// `(e, K3)` densities with `path2` free, the common shape of the examples.
pub fn edge_triangle_fixed(e: Rational, k3: Rational) -> BTreeMap<Hypergraph, Rational> {
    BTreeMap::from([(Hypergraph::complete(2, 2).expect("valid"), e), (Hypergraph::complete(2, 3).expect("valid"), k3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn path2() -> Hypergraph {
        Hypergraph::path(2)
    }

    #[test]
    fn excluded_point() {
        let fixed = edge_triangle_fixed(rat(7, 10), rat(3, 25));
        let cert = minor_certificate(&fixed, &[path2()], 2, 4).unwrap();
        assert!(cert.is_refutation());
        let cubic = Polynomial::new(vec![-rat(63, 6250), int(0), rat(47, 50), int(-2)]).normalized();
        let quad = Polynomial::new(vec![-rat(2401, 10_000), int(0), int(1)]).normalized();
        let polys: Vec<Polynomial> = cert.constraints.iter().map(|c| c.polynomial.normalized()).collect();
        assert!(polys.contains(&cubic));
        assert!(polys.contains(&quad));
    }

    #[test]
    fn feasible_points() {
        let fixed = edge_triangle_fixed(rat(7, 10), rat(343, 1000));
        assert!(!minor_certificate(&fixed, &[path2()], 2, 4).unwrap().is_refutation());
        let fixed = edge_triangle_fixed(int(1), int(1));
        let cert = minor_certificate(&fixed, &[path2()], 2, 4).unwrap();
        assert_eq!(cert.verdict, MinorVerdict::Inconclusive { lo: int(1), hi: int(1) });
    }

    #[test]
    fn free_coordinate_count() {
        let fixed = edge_triangle_fixed(rat(7, 10), rat(3, 25));
        assert_eq!(minor_certificate(&fixed, &[], 2, 4).unwrap_err(), Error::FreeCoordinates(0));
        assert_eq!(
            minor_certificate(&fixed, &[path2(), Hypergraph::path(3)], 2, 4).unwrap_err(),
            Error::FreeCoordinates(2)
        );
    }
}
