use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::dd::{extreme_rays, facets_of};
use super::lp::{cone_member_int, MembershipResult};
use crate::error::{Error, Result};
use crate::gluing::{ExponentVector, MomentMatrix};
use crate::hypergraph::Hypergraph;
use crate::rational::{primitive, to_i64};

/// Ambient dimension accepted by the double description routines.
pub const DIMENSION_CAP: usize = 12;

/// A rational polyhedral cone over named coordinates. `facets` are inner
/// normals `a` of the inequalities `<a, y> >= 0`; an implicit equation
/// appears as a pair `a`, `-a`. `rays` generate the cone together with the
/// span of `lineality`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<i64>>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

fn primitive_i64(v: &[i64]) -> Result<Vec<i64>> {
    small(&primitive(&big(v)))
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > DIMENSION_CAP {
        return Err(Error::DimensionCap { dim, cap: DIMENSION_CAP });
    }
    Ok(())
}

fn normalize_set(vs: impl IntoIterator<Item = Vec<i64>>) -> Result<Vec<Vec<i64>>> {
    let mut set = BTreeSet::new();
    for v in vs {
        if v.iter().any(|&x| x != 0) {
            set.insert(primitive_i64(&v)?);
        }
    }
    Ok(set.into_iter().collect())
}

impl RationalCone {
    pub fn from_facets(basis: Vec<String>, facets: Vec<Vec<i64>>) -> Result<Self> {
        Self::check_lengths(&basis, &facets)?;
        Ok(RationalCone { basis, facets: Some(normalize_set(facets)?), rays: None, lineality: Vec::new() })
    }

    pub fn from_rays(basis: Vec<String>, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        Self::check_lengths(&basis, &rays)?;
        Self::check_lengths(&basis, &lineality)?;
        Ok(RationalCone { basis, facets: None, rays: Some(normalize_set(rays)?), lineality })
    }

    fn check_lengths(basis: &[String], vs: &[Vec<i64>]) -> Result<()> {
        match vs.iter().find(|v| v.len() != basis.len()) {
            Some(v) => Err(Error::InvalidParameter(format!(
                "vector of length {} in a cone of dimension {}",
                v.len(),
                basis.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Fills in the V-representation from the H-representation.
    pub fn with_rays(mut self) -> Result<Self> {
        if self.rays.is_none() {
            let facets = self.facets.as_ref().expect("a cone has at least one representation");
            let (rays, lin) = rays_from_facets(self.dim(), facets)?;
            self.rays = Some(rays);
            self.lineality = lin;
        }
        Ok(self)
    }

    /// Fills in (or recomputes an irredundant) H-representation.
    pub fn with_facets(mut self) -> Result<Self> {
        let cone = self.clone().with_rays()?;
        self.facets = Some(facets_from_rays(self.dim(), cone.rays.as_ref().expect("computed"), &cone.lineality)?);
        self.rays = cone.rays;
        self.lineality = cone.lineality;
        Ok(self)
    }

    /// Rays together with both signs of every lineality vector.
    pub fn generators(&self) -> Result<Vec<Vec<i64>>> {
        let cone = self.clone().with_rays()?;
        let mut g = cone.rays.expect("computed");
        for l in &cone.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        Ok(g)
    }

    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        if let Some(f) = &self.facets {
            return Ok(f.iter().all(|a| a.iter().zip(point).map(|(x, y)| x * y).sum::<i64>() >= 0));
        }
        Ok(cone_member_int(point, &self.generators()?)?.is_member())
    }

    /// Equality as mutual containment of generators, decided by the exact
    /// membership oracle.
    pub fn equivalent(&self, other: &RationalCone) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        let (a, b) = (self.generators()?, other.generators()?);
        for g in &a {
            if !cone_member_int(g, &b)?.is_member() {
                return Ok(false);
            }
        }
        for g in &b {
            if !cone_member_int(g, &a)?.is_member() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Extreme rays and lineality basis of `{y : <a, y> >= 0 for all facets a}`.
pub fn rays_from_facets(dim: usize, facets: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    check_dim(dim)?;
    let g = extreme_rays(dim, &facets.iter().map(|f| big(f)).collect::<Vec<_>>());
    Ok((
        g.rays.iter().map(|r| small(r)).collect::<Result<_>>()?,
        g.lineality.iter().map(|r| small(r)).collect::<Result<_>>()?,
    ))
}

/// Irredundant facet normals of the cone generated by `rays` and the span
/// of `lineality`; implicit equations appear as opposite pairs.
pub fn facets_from_rays(dim: usize, rays: &[Vec<i64>], lineality: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    check_dim(dim)?;
    let rays: Vec<Vec<BigInt>> = rays.iter().map(|r| big(r)).collect();
    let lin: Vec<Vec<BigInt>> = lineality.iter().map(|r| big(r)).collect();
    let g = facets_of(dim, &rays, &lin);
    let mut out: Vec<Vec<i64>> = g.rays.iter().map(|r| small(r)).collect::<Result<_>>()?;
    for l in &g.lineality {
        let l = small(l)?;
        out.push(l.iter().map(|x| -x).collect());
        out.push(l);
    }
    normalize_set(out)
}

/// Cone cut out by the 2x2 principal minors of a moment matrix: one
/// inequality `alpha(AA) + alpha(BB) - 2 alpha(AB) >= 0` per pair.
pub fn minor_cone(m: &MomentMatrix) -> Result<RationalCone> {
    let n = m.size();
    let mut facets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = minor_vector(&m.entries[i][i], &m.entries[j][j], &m.entries[i][j]);
            if v.iter().all(|&x| x == 0) {
                return Err(Error::SymbolicallyZeroMinor(
                    m.rows.elements[i].canonical_string(),
                    m.rows.elements[j].canonical_string(),
                ));
            }
            facets.push(v);
        }
    }
    RationalCone::from_facets(m.columns.names(), facets)
}

fn minor_vector(a: &ExponentVector, b: &ExponentVector, c: &ExponentVector) -> Vec<i64> {
    (0..c.len().max(a.len()).max(b.len())).map(|k| a.get(k) + b.get(k) - 2 * c.get(k)).collect()
}

/// Whether the 2x2 principal minor on rows `i`, `j` is identically zero.
pub fn minor_is_symbolically_zero(m: &MomentMatrix, i: usize, j: usize) -> bool {
    let (a, b, c) = (&m.monomials[i][i], &m.monomials[j][j], &m.monomials[i][j]);
    a.mul(b) == c.mul(c)
}

/// Closed-form cone for the clique coordinates `K_r, ..., K_l`:
/// `y_{K_r} <= 0` and `(r+i) y_{K_{r+i-1}} >= (r+i-1) y_{K_{r+i}}`.
pub fn clique_trop_cone(r: usize, l: usize) -> Result<RationalCone> {
    if r < 2 || l < r {
        return Err(Error::InvalidParameter(format!("clique cone needs 2 <= r <= l, got r = {r}, l = {l}")));
    }
    let dim = l - r + 1;
    let mut facets = vec![unit(dim, 0, -1)];
    for i in 1..=l - r {
        let mut a = vec![0; dim];
        a[i - 1] = (r + i) as i64;
        a[i] = -((r + i - 1) as i64);
        facets.push(a);
    }
    let rays: Vec<Vec<i64>> =
        (1..=dim).map(|i| (0..dim).map(|j| if j + 1 >= i { -((r + j) as i64) } else { 0 }).collect()).collect();
    let basis = (r..=l).map(|j| Hypergraph::complete(r, j).map(|g| g.canonical_string())).collect::<Result<_>>()?;
    Ok(RationalCone {
        basis,
        facets: Some(normalize_set(facets)?),
        rays: Some(normalize_set(rays)?),
        lineality: Vec::new(),
    })
}

/// Closed-form cone for the star coordinates `S(1, c), ..., S(l, c)`.
pub fn star_trop_cone(r: usize, c: usize, l: usize) -> Result<RationalCone> {
    if c == 0 || c >= r || l == 0 {
        return Err(Error::InvalidParameter(format!(
            "star cone needs 1 <= c < r and l >= 1, got r = {r}, c = {c}, l = {l}"
        )));
    }
    let mut facets = Vec::with_capacity(l);
    if l == 1 {
        facets.push(vec![-1]);
    } else {
        for b in 0..l {
            let mut a = vec![0; l];
            if b == l - 1 {
                a[b - 1] = 1;
                a[b] = -1;
            } else {
                a[b] = -2;
                a[b + 1] = 1;
                if b > 0 {
                    a[b - 1] = 1;
                }
            }
            facets.push(a);
        }
    }
    let rays: Vec<Vec<i64>> = (1..=l).map(|b| (1..=l).map(|k| -(k.min(b) as i64)).collect()).collect();
    let basis = (1..=l).map(|b| Hypergraph::star(r, b, c).map(|g| g.canonical_string())).collect::<Result<_>>()?;
    Ok(RationalCone {
        basis,
        facets: Some(normalize_set(facets)?),
        rays: Some(normalize_set(rays)?),
        lineality: Vec::new(),
    })
}

fn unit(dim: usize, i: usize, s: i64) -> Vec<i64> {
    (0..dim).map(|j| if j == i { s } else { 0 }).collect()
}

/// Image of the cone under the coordinate projection onto `coords`.
pub fn project_cone(cone: &RationalCone, coords: &[usize]) -> Result<RationalCone> {
    if let Some(&c) = coords.iter().find(|&&c| c >= cone.dim()) {
        return Err(Error::InvalidParameter(format!("coordinate {c} outside dimension {}", cone.dim())));
    }
    let dim = coords.len();
    check_dim(dim)?;
    let proj = |v: &Vec<i64>| coords.iter().map(|&c| v[c]).collect::<Vec<i64>>();
    let gens: Vec<Vec<i64>> = cone.generators()?.iter().map(proj).collect();
    let facets = facets_from_rays(dim, &gens, &[])?;
    let (rays, lineality) = rays_from_facets(dim, &facets)?;
    let basis = coords.iter().map(|&c| cone.basis[c].clone()).collect();
    Ok(RationalCone { basis, facets: Some(facets), rays: Some(rays), lineality })
}

/// Inequality `t(h1) >= t(h2)` tested against a cone given by its facets:
/// valid on the cone iff `alpha(h1) - alpha(h2)` lies in the dual cone
/// generated by the facet normals.
pub fn binomial_membership(cone: &RationalCone, exponent: &[i64]) -> Result<MembershipResult> {
    let cone = cone.clone().with_facets()?;
    cone_member_int(exponent, cone.facets.as_ref().expect("computed"))
}

/// Checks every generator lies in the cone described by `facets` and every
/// facet normal is nonnegative on every generator.
pub fn representations_agree(cone: &RationalCone) -> Result<bool> {
    let cone = cone.clone().with_rays()?;
    let facets = cone.facets.as_ref().expect("cone with facets");
    let gens = cone.generators()?;
    Ok(gens.iter().all(|g| facets.iter().all(|a| a.iter().zip(g).map(|(x, y)| x * y).sum::<i64>() >= 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{enumerate_basis, moment_matrix_auto, BasisKind};

    #[test]
    fn minor_cone_degree_one() {
        let rows = enumerate_basis(BasisKind::Reduced, 1, 2, 2).unwrap();
        let m = moment_matrix_auto(&rows).unwrap();
        let cone = minor_cone(&m).unwrap();
        assert_eq!(cone.facets.as_ref().unwrap(), &vec![vec![-2, 1], vec![-1, 0], vec![1, -1]]);
        let cone = cone.with_rays().unwrap();
        assert_eq!(cone.rays.unwrap(), vec![vec![-1, -2], vec![-1, -1]]);
    }

    #[test]
    fn clique_cone_small() {
        let c = clique_trop_cone(2, 3).unwrap();
        assert_eq!(c.rays.as_ref().unwrap(), &vec![vec![-2, -3], vec![0, -1]]);
        let (rays, lin) = rays_from_facets(2, c.facets.as_ref().unwrap()).unwrap();
        assert_eq!(rays, vec![vec![-2, -3], vec![0, -1]]);
        assert!(lin.is_empty());
        let p = project_cone(&clique_trop_cone(2, 4).unwrap(), &[0, 1]).unwrap();
        assert_eq!(p.rays.unwrap(), vec![vec![-2, -3], vec![0, -1]]);
    }

    #[test]
    fn star_cone_rays() {
        let c = star_trop_cone(2, 1, 4).unwrap();
        assert!(c.rays.as_ref().unwrap().contains(&vec![-1, -2, -3, -3]));
        let c = star_trop_cone(2, 1, 1).unwrap();
        assert_eq!(c.rays.unwrap(), vec![vec![-1]]);
    }

    #[test]
    fn projection_to_one_coordinate() {
        let c = RationalCone::from_facets(vec!["a".into(), "b".into()], vec![vec![-1, 0], vec![0, -1]]).unwrap();
        let p = project_cone(&c, &[1]).unwrap();
        assert_eq!(p.rays.unwrap(), vec![vec![-1]]);
        let c = RationalCone::from_rays(vec!["a".into(), "b".into()], vec![vec![-1, 0]], vec![]).unwrap();
        let p = project_cone(&c, &[1]).unwrap();
        assert!(p.rays.unwrap().is_empty());
        assert!(p.lineality.is_empty());
    }

    #[test]
    fn dimension_cap() {
        let facets = vec![vec![0; 13]];
        assert_eq!(rays_from_facets(13, &facets), Err(Error::DimensionCap { dim: 13, cap: 12 }));
    }

    #[test]
    fn full_space_generators() {
        let c = RationalCone::from_facets(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(c.generators().unwrap().len(), 4);
    }

    #[test]
    fn binomials_against_cones() {
        let star = star_trop_cone(2, 1, 2).unwrap();
        assert!(binomial_membership(&star, &[-2, 1]).unwrap().is_member());
        let clique = clique_trop_cone(2, 3).unwrap();
        assert!(binomial_membership(&clique, &[3, -2]).unwrap().is_member());
        assert!(binomial_membership(&clique, &[0, 0]).unwrap().is_member());
        let r = binomial_membership(&clique, &[-3, 2]).unwrap();
        assert!(!r.is_member());
    }
}
