//! Double description: extreme rays and lineality of `{y : <a, y> >= 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{primitive, primitive_integer, Rational};

/// Generators of a polyhedral cone: conic hull of `rays` plus the linear
/// span of `lineality`. Rays are primitive, orthogonal to the lineality
/// space and sorted; the lineality basis is in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(p: &BigInt, u: &[BigInt], q: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    primitive(&u.iter().zip(v).map(|(x, y)| p * x - q * y).collect::<Vec<_>>())
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<bool>,
}

/// Extreme rays and lineality space of the cone cut out by `constraints`.
pub fn extreme_rays(dim: usize, constraints: &[Vec<BigInt>]) -> Generators {
    let mut lineality: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(pos);
            let mut s = dot(a, &l);
            if s.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                s = -s;
            }
            for m in lineality.iter_mut() {
                let t = dot(a, m);
                *m = combine(&s, m, &t, &l);
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                r.v = combine(&s, &r.v, &t, &l);
                r.zeros.push(true);
            }
            let mut zeros = vec![true; k];
            zeros.push(false);
            rays.push(Ray { v: primitive(&l), zeros });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                let mut zeros = r.zeros.clone();
                zeros.push(vals[i].is_zero());
                next.push(Ray { v: r.v.clone(), zeros });
            }
        }
        let needed = dim.saturating_sub(lineality.len() + 2);
        for (i, p) in rays.iter().enumerate().filter(|(i, _)| vals[*i].is_positive()) {
            for (j, q) in rays.iter().enumerate().filter(|(j, _)| vals[*j].is_negative()) {
                let common: Vec<bool> = p.zeros.iter().zip(&q.zeros).map(|(x, y)| *x && *y).collect();
                if common.iter().filter(|&&z| z).count() < needed {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(t, w)| t != i && t != j && common.iter().zip(&w.zeros).all(|(c, z)| !*c || *z));
                if blocked {
                    continue;
                }
                let mut zeros = common;
                zeros.push(true);
                next.push(Ray { v: combine(&vals[i], &q.v, &vals[j], &p.v), zeros });
            }
        }
        rays = next;
    }
    finish(dim, rays.into_iter().map(|r| r.v).collect(), lineality)
}

fn echelon(vectors: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<Rational>> =
        vectors.into_iter().map(|v| v.into_iter().map(Rational::from_integer).collect()).collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        rows[rank].iter_mut().for_each(|x| *x /= pivot.clone());
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pr = rows[rank].clone();
                rows[i].iter_mut().zip(&pr).for_each(|(x, y)| *x -= &f * y);
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.iter().map(|r| primitive_integer(r)).collect()
}

fn finish(dim: usize, rays: Vec<Vec<BigInt>>, lineality: Vec<Vec<BigInt>>) -> Generators {
    let lineality = echelon(lineality, dim);
    let mut out: Vec<Vec<BigInt>> =
        rays.into_iter().map(|r| project_out(&r, &lineality)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    out.sort();
    out.dedup();
    Generators { rays: out, lineality }
}

/// Orthogonal projection onto the complement of the span of `basis`.
fn project_out(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return primitive(v);
    }
    // Gram-Schmidt over the rationals.
    let to_q = |x: &[BigInt]| x.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>();
    let dotq = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
    let mut ortho: Vec<Vec<Rational>> = Vec::new();
    for b in basis {
        let mut w = to_q(b);
        for o in &ortho {
            let f = dotq(&w, o) / dotq(o, o);
            w.iter_mut().zip(o).for_each(|(x, y)| *x -= &f * y);
        }
        ortho.push(w);
    }
    let mut w = to_q(v);
    for o in &ortho {
        let f = dotq(&w, o) / dotq(o, o);
        w.iter_mut().zip(o).for_each(|(x, y)| *x -= &f * y);
    }
    primitive_integer(&w)
}

/// Facet normals (and implicit equations, as the dual lineality) of the
/// cone generated by `rays` and `lineality`.
pub fn facets_of(dim: usize, rays: &[Vec<BigInt>], lineality: &[Vec<BigInt>]) -> Generators {
    let mut constraints: Vec<Vec<BigInt>> = rays.to_vec();
    for l in lineality {
        constraints.push(l.clone());
        constraints.push(l.iter().map(|x| -x).collect());
    }
    extreme_rays(dim, &constraints)
}
