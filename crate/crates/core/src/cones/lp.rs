//! Exact cone membership by phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Either nonnegative coefficients expressing the target, or a separating
/// functional `y` with `<y, g> >= 0` on every generator and `<y, t> < 0`.
/// Both are re-verified exactly before being returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    Member { coefficients: Vec<Rational> },
    Separated { separator: Vec<Rational> },
}

#[derive(Serialize)]
struct MembershipJson {
    feasible: bool,
    #[serde(serialize_with = "rational::serialize_opt_vec")]
    coefficients: Option<Vec<Rational>>,
    #[serde(serialize_with = "rational::serialize_opt_vec")]
    separator: Option<Vec<Rational>>,
}

impl Serialize for MembershipResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MembershipJson {
            feasible: self.is_member(),
            coefficients: self.coefficients().map(|c| c.to_vec()),
            separator: self.separator().map(|c| c.to_vec()),
        }
        .serialize(s)
    }
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member { .. })
    }

    pub fn coefficients(&self) -> Option<&[Rational]> {
        match self {
            MembershipResult::Member { coefficients } => Some(coefficients),
            _ => None,
        }
    }

    pub fn separator(&self) -> Option<&[Rational]> {
        match self {
            MembershipResult::Separated { separator } => Some(separator),
            _ => None,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rational::int(x)).collect()
}

/// Integer-vector convenience wrapper around [`cone_member`].
pub fn cone_member_int(target: &[i64], generators: &[Vec<i64>]) -> Result<MembershipResult> {
    let gens: Vec<Vec<Rational>> = generators.iter().map(|g| to_rational(g)).collect();
    cone_member(&to_rational(target), &gens)
}

/// Decides whether `target` lies in the cone generated by `generators`.
pub fn cone_member(target: &[Rational], generators: &[Vec<Rational>]) -> Result<MembershipResult> {
    let m = target.len();
    if let Some(g) = generators.iter().find(|g| g.len() != m) {
        return Err(Error::InvalidParameter(format!("generator of length {} against target of length {m}", g.len())));
    }
    let n = generators.len();
    // Tableau rows: [generators | artificials | rhs], every rhs >= 0.
    let width = n + m + 1;
    let mut sign = vec![Rational::one(); m];
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        if target[i].is_negative() {
            sign[i] = -Rational::one();
        }
        let mut row = Vec::with_capacity(width);
        row.extend(generators.iter().map(|g| &g[i] * &sign[i]));
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(&target[i] * &sign[i]);
        tab.push(row);
    }
    // Objective row holds reduced costs of "minimize sum of artificials".
    let mut obj = vec![Rational::zero(); width];
    for j in 0..width {
        if (n..n + m).contains(&j) {
            continue;
        }
        obj[j] = -(0..m).map(|i| tab[i][j].clone()).sum::<Rational>();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width - 1] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::CertificateMismatch("phase-one objective unbounded".into()));
        };
        pivot(&mut tab, &mut obj, row, enter);
        basis[row] = enter;
    }
    let optimum = -obj[width - 1].clone();
    if optimum.is_zero() {
        let mut lambda = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                lambda[b] = tab[i][width - 1].clone();
            }
        }
        verify_member(target, generators, &lambda)?;
        Ok(MembershipResult::Member { coefficients: lambda })
    } else {
        // Duals of the phase-one problem are pi_i = 1 - reduced cost of
        // artificial i; the separator undoes the row sign flips.
        let separator: Vec<Rational> = (0..m).map(|i| -(Rational::one() - &obj[n + i]) * &sign[i]).collect();
        let separator: Vec<Rational> =
            rational::primitive_integer(&separator).into_iter().map(Rational::from_integer).collect();
        verify_separator(target, generators, &separator)?;
        Ok(MembershipResult::Separated { separator })
    }
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], row: usize, col: usize) {
    let p = tab[row][col].clone();
    tab[row].iter_mut().for_each(|x| *x /= &p);
    let pr = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        r.iter_mut().zip(&pr).for_each(|(x, y)| *x -= &f * y);
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        obj.iter_mut().zip(&pr).for_each(|(x, y)| *x -= &f * y);
    }
}

fn verify_member(target: &[Rational], generators: &[Vec<Rational>], lambda: &[Rational]) -> Result<()> {
    if lambda.iter().any(|x| x.is_negative()) {
        return Err(Error::CertificateMismatch("negative cone coefficient".into()));
    }
    for (i, t) in target.iter().enumerate() {
        let s: Rational = generators.iter().zip(lambda).map(|(g, l)| &g[i] * l).sum();
        if &s != t {
            return Err(Error::CertificateMismatch(format!("coordinate {i} not reproduced")));
        }
    }
    Ok(())
}

fn verify_separator(target: &[Rational], generators: &[Vec<Rational>], y: &[Rational]) -> Result<()> {
    if let Some(k) = generators.iter().position(|g| dot(y, g).is_negative()) {
        return Err(Error::CertificateMismatch(format!("separator negative on generator {k}")));
    }
    if !dot(y, target).is_negative() {
        return Err(Error::CertificateMismatch("separator does not cut off the target".into()));
    }
    Ok(())
}
