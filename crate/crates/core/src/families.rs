//! Extremal constructions, their limit densities, star densities from
//! degrees, and seeded random hypergraphs.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{disjoint_union, Hypergraph};
use crate::rational::{self, int, Rational};

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn rpow(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `T^{(r)}_{m,k}`: `m` vertices split into `k` parts, larger parts first;
/// every r-set meeting r distinct parts is an edge.
pub fn turan_hypergraph(m: usize, k: usize, r: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("Turan hypergraph needs at least one part".into()));
    }
    let part = turan_parts(m, k);
    let edges = (0..m).combinations(r).filter(|e| e.iter().map(|&v| part[v]).all_unique()).collect();
    Hypergraph::new(r, m, edges)
}

fn turan_parts(m: usize, k: usize) -> Vec<usize> {
    let (q, extra) = (m / k, m % k);
    let mut part = Vec::with_capacity(m);
    for p in 0..k {
        let size = q + usize::from(p < extra);
        part.extend(std::iter::repeat_n(p, size));
    }
    part
}

/// `K^{(r)}_{alpha n}` disjoint from `T^{(r)}_{(1-alpha) n, parts}`.
pub fn clique_plus_turan(n: usize, alpha: &Rational, parts: usize, r: usize) -> Result<Hypergraph> {
    let a = alpha * int(n as i64);
    if !a.is_integer() || alpha.is_negative() || alpha > &int(1) {
        return Err(Error::InvalidParameter(format!("alpha * n = {a} is not an integer in 0..=n")));
    }
    let a = a.to_integer().to_usize().expect("bounded by n");
    disjoint_union(&Hypergraph::complete(r, a)?, &turan_hypergraph(n - a, parts, r)?)
}

/// Limit of `t(K_j^{(r)})` on the clique-plus-Turan family as `n` grows.
pub fn clique_turan_limit_density(j: usize, alpha: &Rational, parts: usize) -> Rational {
    let beta = int(1) - alpha;
    let mut t = rpow(alpha, j);
    if j <= parts {
        let falling = Rational::from_integer(factorial(parts) / factorial(parts - j));
        t += falling * rpow(&beta, j) / rpow(&int(parts as i64), j);
    }
    t
}

/// `G_{n, rho}` for graphs with single-vertex star centres: an `alpha n`
/// clique `A` with `alpha = rho^m`, a circulant `k`-regular graph `B` on the
/// remaining `(1 - alpha) n` vertices with `k = rho (1 - alpha) n`, and all
/// edges between `A` and `B`.
pub fn regular_plus_clique(n: usize, rho: &Rational, m: usize) -> Result<Hypergraph> {
    if !rho.is_positive() || rho >= &int(1) {
        return Err(Error::InvalidParameter(format!("rho = {rho} must lie strictly between 0 and 1")));
    }
    let alpha = rpow(rho, m);
    let a = &alpha * int(n as i64);
    if !a.is_integer() {
        return Err(Error::InvalidParameter(format!("alpha n = {a} is not an integer")));
    }
    let a = a.to_integer().to_usize().expect("bounded by n");
    let nb = n - a;
    let k = rho * int(nb as i64);
    if !k.is_integer() {
        return Err(Error::InvalidParameter(format!("regular degree {k} is not an integer")));
    }
    let k = k.to_integer().to_usize().expect("bounded by n");
    if k >= nb || (k * nb) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no {k}-regular graph on {nb} vertices")));
    }
    let mut edges = Vec::new();
    for u in 0..a {
        for v in u + 1..n {
            edges.push(vec![u, v]);
        }
    }
    for i in 0..nb {
        for s in 1..=k / 2 {
            edges.push(vec![a + i, a + (i + s) % nb]);
        }
        if k % 2 == 1 && i < nb / 2 {
            edges.push(vec![a + i, a + i + nb / 2]);
        }
    }
    Hypergraph::new(2, n, edges)
}

/// Limit of `t(S^{(r)}(b, c))` on the regular-plus-clique family, given the
/// clique fraction `alpha` and the regular density `rho`.
pub fn star_limit_density(r: usize, c: usize, b: usize, rho: &Rational, alpha: &Rational) -> Result<Rational> {
    if c == 0 || c >= r {
        return Err(Error::InvalidParameter(format!("star centre size {c} not in 1..{r}")));
    }
    let one = int(1);
    let beta = &one - alpha;
    let fac = |k: usize| Rational::from_integer(factorial(k));
    let mut t = rpow(alpha, c);
    let mut inner = rpow(&beta, r - c) * rho;
    if r >= 2 * c {
        inner += fac(r - c) / fac(r - 2 * c) * rpow(&beta, r - 2 * c) * rpow(alpha, c);
    }
    t += rpow(&beta, c) * rpow(&inner, b);
    let lo = (2 * c).saturating_sub(r).max(1);
    for i in lo..c {
        let deg = fac(r - c) * rpow(alpha, c - i) * rpow(&beta, r + i - 2 * c) / (fac(c - i) * fac(r + i - 2 * c));
        t += Rational::from_integer(binom(c, i)) * rpow(alpha, i) * rpow(&beta, c - i) * rpow(&deg, b);
    }
    Ok(t)
}

/// `t(S^{(r)}(b, c); g)` computed from the degrees of the c-sets of `g`.
pub fn star_density_fast(g: &Hypergraph, b: usize, c: usize) -> Result<Rational> {
    let r = g.r();
    if c == 0 || c >= r {
        return Err(Error::InvalidParameter(format!("star centre size {c} not in 1..{r}")));
    }
    if g.n() == 0 {
        return Err(Error::EmptyTarget);
    }
    let mut deg: HashMap<Vec<usize>, u64> = HashMap::new();
    for e in g.edges() {
        for s in e.iter().copied().combinations(c) {
            *deg.entry(s).or_default() += 1;
        }
    }
    let weight = factorial(r - c);
    let sum: BigInt = deg.values().map(|&d| (&weight * d).pow(b as u32)).sum();
    let den = BigInt::from(g.n()).pow((b * (r - c) + c) as u32);
    Ok(Rational::new(factorial(c) * sum, den))
}

/// Seeded random r-graph: every r-set is an edge independently with
/// probability `p`.
pub fn random_hypergraph(r: usize, n: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..n).combinations(r).filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::new(r, n, edges)
}

/// One row of a trajectory: the parameter, `log t / log(1/param)` per
/// coordinate, and the distance between its unit direction and the target
/// ray's unit direction.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryRow {
    pub parameter: f64,
    pub log_ratio: Vec<f64>,
    pub direction: Vec<f64>,
    pub distance: f64,
}

fn unit(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

fn trajectory_row(param: &Rational, densities: &[Rational], target: &[i64]) -> TrajectoryRow {
    let scale = -rational::ln(param);
    let log_ratio: Vec<f64> = densities.iter().map(|t| rational::ln(t) / scale).collect();
    let direction = unit(&log_ratio);
    let target = unit(&target.iter().map(|&x| x as f64).collect::<Vec<_>>());
    let distance = direction.iter().zip(&target).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    TrajectoryRow { parameter: rational::to_f64(param), log_ratio, direction, distance }
}

fn check_schedule(schedule: &[Rational]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("empty schedule".into()));
    }
    match schedule.iter().find(|p| !p.is_positive() || *p >= &int(1)) {
        Some(p) => Err(Error::InvalidParameter(format!("schedule value {p} not in (0, 1)"))),
        None => Ok(()),
    }
}

/// Clique family aimed at the i-th ray of the `(r, l)` clique cone: limit
/// densities of `K_r..K_l` on `K_{alpha n} + T_{(1-alpha) n, r+i-2}`.
pub fn clique_trajectory(r: usize, l: usize, i: usize, schedule: &[Rational]) -> Result<Vec<TrajectoryRow>> {
    if r < 2 || l < r || i == 0 || i > l - r + 1 {
        return Err(Error::InvalidParameter(format!("no ray {i} for the clique cone ({r}, {l})")));
    }
    check_schedule(schedule)?;
    let parts = r + i - 2;
    let target: Vec<i64> = (r..=l).map(|j| if j < r + i - 1 { 0 } else { -(j as i64) }).collect();
    Ok(schedule
        .iter()
        .map(|alpha| {
            let d: Vec<Rational> = (r..=l).map(|j| clique_turan_limit_density(j, alpha, parts)).collect();
            trajectory_row(alpha, &d, &target)
        })
        .collect())
}

/// Star family aimed at the m-th ray of the star cone of length `l`:
/// limit densities of `S(1, c)..S(l, c)` with `alpha = rho^{m/c}`.
pub fn star_trajectory(r: usize, c: usize, m: usize, l: usize, schedule: &[Rational]) -> Result<Vec<TrajectoryRow>> {
    if m == 0 || m > l {
        return Err(Error::InvalidParameter(format!("no ray {m} for the star cone of length {l}")));
    }
    if c == 0 || m % c != 0 {
        return Err(Error::InvalidParameter(format!("exponent {m}/{c} is not an integer")));
    }
    check_schedule(schedule)?;
    let target: Vec<i64> = (1..=l).map(|b| -(b.min(m) as i64)).collect();
    schedule
        .iter()
        .map(|rho| {
            let alpha = rpow(rho, m / c);
            let d = (1..=l).map(|b| star_limit_density(r, c, b, rho, &alpha)).collect::<Result<Vec<_>>>()?;
            Ok(trajectory_row(rho, &d, &target))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{density, is_isomorphic};
    use crate::rational::rat;

    #[test]
    fn turan_examples() {
        let t = turan_hypergraph(4, 2, 2).unwrap();
        let k22 = Hypergraph::graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_isomorphic(&t, &k22));
        assert_eq!(turan_hypergraph(6, 2, 3).unwrap().edge_count(), 0);
        assert_eq!(turan_hypergraph(5, 2, 2).unwrap().edge_count(), 6);
    }

    #[test]
    fn clique_plus_turan_close_to_limit() {
        let g = clique_plus_turan(40, &rat(1, 4), 2, 2).unwrap();
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let t = density(&k3, &g).unwrap();
        let limit = clique_turan_limit_density(3, &rat(1, 4), 2);
        assert_eq!(limit, rat(1, 64));
        assert!((t - limit).abs() <= rat(5, 40));
        assert!(clique_plus_turan(40, &rat(1, 3), 2, 2).is_err());
    }

    #[test]
    fn limit_at_alpha_zero() {
        assert_eq!(clique_turan_limit_density(2, &int(0), 2), rat(1, 2));
    }

    #[test]
    fn regular_plus_clique_degrees() {
        let rho = rat(1, 5);
        let g = regular_plus_clique(125, &rho, 2).unwrap();
        let deg = g.degrees();
        assert!(deg[..5].iter().all(|&d| d == 124));
        assert!(deg[5..].iter().all(|&d| d == 24 + 5));
        assert!(regular_plus_clique(100, &int(1), 2).is_err());
        assert!(regular_plus_clique(10, &rat(1, 3), 1).is_err());
    }

    #[test]
    fn star_fast_matches_hom_density() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        assert_eq!(star_density_fast(&k3, 2, 1).unwrap(), rat(4, 9));
        let g = random_hypergraph(3, 7, 0.5, 3).unwrap();
        for (b, c) in [(1, 1), (2, 1), (3, 2), (2, 2)] {
            let s = Hypergraph::star(3, b, c).unwrap();
            assert_eq!(star_density_fast(&g, b, c).unwrap(), density(&s, &g).unwrap());
        }
    }

    #[test]
    fn trajectories_approach_rays() {
        let sched = [rat(1, 10), rat(1, 100), rat(1, 1000), rat(1, 10_000)];
        let rows = clique_trajectory(2, 3, 2, &sched).unwrap();
        assert!(rows.windows(2).all(|w| w[1].distance < w[0].distance));
        assert!(rows[3].distance < 0.05);
        let rows = star_trajectory(2, 1, 2, 3, &sched).unwrap();
        assert!(rows[3].distance < 0.05);
    }
}
