//! Univariate polynomials over the rationals and exact sign decisions on
//! intervals via Sturm sequences.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * w^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each simple.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Positive rational multiple normalised so the largest coefficient in
    /// absolute value is one; keeps the sign pattern.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().map(|c| c.abs()).max() {
            Some(m) if !m.is_zero() => self.scale(&(Rational::one() / m)),
            _ => self.clone(),
        }
    }

    /// Sign at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*w")?,
                _ => write!(f, "{a}*w^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a squarefree polynomial.
pub struct Sturm {
    chain: Vec<Polynomial>,
}

impl Sturm {
    pub fn new(p: &Polynomial) -> Self {
        let p = p.squarefree();
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) > 0 {
            chain.push(p.derivative());
            loop {
                let k = chain.len();
                let r = chain[k - 2].div_rem(&chain[k - 1]).1;
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.chain.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let p = &self.chain[0];
        if p.is_zero() || p.degree() == Some(0) {
            return 0;
        }
        self.variations(a) - self.variations(b) + usize::from(p.sign_at(a) == 0)
    }
}

/// Disjoint isolating intervals `[lo, hi]`, each holding exactly one root
/// of `p` in `[a, b]`; exact rational roots are returned as `lo == hi`.
pub fn isolate_roots(p: &Polynomial, a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
    let sf = p.squarefree();
    if sf.degree() == Some(1) {
        let x = -&sf.coeffs[0] / &sf.coeffs[1];
        return if a <= &x && &x <= b { vec![(x.clone(), x)] } else { Vec::new() };
    }
    let sturm = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_roots(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if p.sign_at(&lo) == 0 {
                out.push((lo.clone(), lo));
            } else if p.sign_at(&hi) == 0 {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        if p.sign_at(&mid) == 0 {
            out.push((mid.clone(), mid.clone()));
        }
        // Open split around mid: the halves share only mid.
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.dedup();
    out
}

/// Sign of `q` at the unique root of `p` inside `[lo, hi]`.
pub fn sign_at_root(p: &Polynomial, lo: &Rational, hi: &Rational, q: &Polynomial) -> i32 {
    if lo == hi {
        return q.sign_at(lo);
    }
    let g = p.squarefree().gcd(q);
    if g.degree().unwrap_or(0) > 0 && Sturm::new(&g).count_roots(lo, hi) > 0 {
        return 0;
    }
    let ps = Sturm::new(p);
    let qs = Sturm::new(q);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while qs.count_roots(&lo, &hi) > 0 {
        let mid = (&lo + &hi) / int(2);
        if p.sign_at(&mid) == 0 {
            return q.sign_at(&mid);
        }
        if ps.count_roots(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    q.sign_at(&((&lo + &hi) / int(2)))
}

/// A point of `[a, b]` where every polynomial is nonnegative, if one exists.
/// Candidates are the endpoints and the roots of the polynomials; the
/// witness is an isolating interval of such a root (or a rational point).
pub fn common_nonnegative_point(polys: &[Polynomial], a: &Rational, b: &Rational) -> Option<(Rational, Rational)> {
    let ok_at = |x: &Rational| polys.iter().all(|p| p.sign_at(x) >= 0);
    for x in [a, b] {
        if ok_at(x) {
            return Some((x.clone(), x.clone()));
        }
    }
    for (i, p) in polys.iter().enumerate() {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (lo, hi) in isolate_roots(p, a, b) {
            if polys.iter().enumerate().all(|(j, q)| j == i || sign_at_root(p, &lo, &hi, q) >= 0) {
                return Some((lo, hi));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(c: &[Rational]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[int(-1), int(0), int(1)]);
        let q = poly(&[int(-1), int(1)]);
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, poly(&[int(1), int(1)]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&q), q);
        assert_eq!(p.mul(&p).squarefree().monic(), p);
        assert_eq!(p.eval(&int(3)), int(8));
    }

    #[test]
    fn root_counts() {
        // (w - 1/4)(w - 1/2)(w - 2)
        let p = poly(&[-rat(1, 4), int(1)]).mul(&poly(&[-rat(1, 2), int(1)])).mul(&poly(&[int(-2), int(1)]));
        let s = Sturm::new(&p);
        assert_eq!(s.count_roots(&int(0), &int(1)), 2);
        assert_eq!(s.count_roots(&rat(1, 4), &rat(1, 2)), 2);
        assert_eq!(s.count_roots(&int(0), &int(3)), 3);
        let roots = isolate_roots(&p, &int(0), &int(1));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn irrational_roots() {
        // w^2 - 2 on [0, 2]
        let p = poly(&[int(-2), int(0), int(1)]);
        let roots = isolate_roots(&p, &int(0), &int(2));
        assert_eq!(roots.len(), 1);
        let q = poly(&[int(-1), int(1)]); // w - 1 > 0 at sqrt 2
        assert_eq!(sign_at_root(&p, &roots[0].0, &roots[0].1, &q), 1);
        let q = poly(&[int(-2), int(0), int(1)]);
        assert_eq!(sign_at_root(&p, &roots[0].0, &roots[0].1, &q), 0);
    }

    #[test]
    fn joint_feasibility() {
        let cubic = poly(&[-rat(63, 6250), int(0), rat(47, 50), int(-2)]);
        let quad = poly(&[-rat(2401, 10_000), int(0), int(1)]);
        assert!(common_nonnegative_point(&[cubic.clone()], &int(0), &int(1)).is_some());
        assert!(common_nonnegative_point(&[quad.clone()], &int(0), &int(1)).is_some());
        assert!(common_nonnegative_point(&[cubic, quad], &int(0), &int(1)).is_none());
        // tangent constraints meeting in a single point
        let a = poly(&[-rat(1, 2), int(1)]);
        let b = poly(&[rat(1, 2), int(-1)]);
        assert_eq!(common_nonnegative_point(&[a, b], &int(0), &int(1)), Some((rat(1, 2), rat(1, 2))));
    }
}
