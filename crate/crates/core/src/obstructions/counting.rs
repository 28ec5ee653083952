use std::collections::BTreeSet;

use serde::Serialize;

use super::degree::{y_pairing, y_vector, YVector};
use super::pairs::{copy_bound_verdict, m_sparse, CopyBoundVerdict};
use super::trivial::is_trivial_square;
use crate::cones::{cone_member_int, MembershipResult};
use crate::error::{Error, Result};
use crate::gluing::{alpha_vector, enumerate_basis, BasisKind, ExponentVector, GraphBasis};
use crate::hypergraph::{connected_components, Hypergraph};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub same_uniformity: bool,
    pub equal_edge_counts: bool,
    pub upper_trivial_square: bool,
    pub upper_degrees_in_range: bool,
    pub lower_max_degree_ok: bool,
    /// A component of the upper graph absent from the lower one.
    pub distinguished_component: Option<String>,
    pub messages: Vec<String>,
}

impl Preconditions {
    pub fn hold(&self) -> bool {
        self.same_uniformity
            && self.equal_edge_counts
            && self.upper_trivial_square
            && self.upper_degrees_in_range
            && self.lower_max_degree_ok
            && self.distinguished_component.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// The counting chain is contradicted and the LP oracle separates.
    NotSosTestable,
    /// The LP oracle separates but `k` is too small for the counting chain.
    SeparatedByLpOnly,
    /// The target lies in the cone of the enumerated generators.
    Inconclusive,
    PreconditionFailure,
}

impl Conclusion {
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::NotSosTestable => 0,
            Conclusion::SeparatedByLpOnly | Conclusion::Inconclusive => 1,
            Conclusion::PreconditionFailure => 2,
        }
    }
}

/// A pair whose check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub a: String,
    pub b: String,
    #[serde(serialize_with = "rational::serialize")]
    pub pairing: Rational,
    pub verdict: Option<CopyBoundVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub upper: String,
    pub lower: String,
    pub k: usize,
    pub d: usize,
    pub label_budget: u32,
    pub p: usize,
    pub preconditions: Preconditions,
    pub basis: Vec<String>,
    pub basis_extensions: Vec<String>,
    pub reduced_basis_size: usize,
    pub pairs_checked: usize,
    pub pairing_failures: Vec<PairFailure>,
    pub c_positive_pairs: usize,
    pub bound_failures: Vec<PairFailure>,
    pub y: Option<YVector>,
    pub target: Vec<i64>,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub target_pairing: Option<Rational>,
    /// Any certificate forces `k <= 2 <y, target>`, that is `k <= 2r |E(lower)|`.
    pub counting_bound: usize,
    pub counting_contradiction: bool,
    pub lp_generators: usize,
    pub lp: Option<MembershipResult>,
    pub conclusion: Conclusion,
    pub scope: String,
}

fn serialize_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => rational::serialize(q, s),
        None => s.serialize_none(),
    }
}

fn degrees_in(h: &Hypergraph, p: usize) -> bool {
    h.degrees().iter().all(|&d| d == p || d == p + 1)
}

/// Largest `p >= 1` among `min degree - 1` and `min degree` satisfying the
/// degree conditions, or `min degree` (at least 1) when neither does.
pub fn infer_p(upper: &Hypergraph, lower: &Hypergraph) -> usize {
    let min = upper.degrees().into_iter().min().unwrap_or(1).max(1);
    [min, min - 1]
        .into_iter()
        .filter(|&p| p >= 1)
        .find(|&p| degrees_in(upper, p) && lower.max_degree() <= p + 1)
        .unwrap_or(min)
}

pub fn check_preconditions(upper: &Hypergraph, lower: &Hypergraph, p: usize) -> Result<Preconditions> {
    let mut messages = Vec::new();
    let same_uniformity = upper.r() == lower.r();
    if !same_uniformity {
        messages.push(format!("uniformities differ: {} and {}", upper.r(), lower.r()));
    }
    let equal_edge_counts = upper.edge_count() == lower.edge_count();
    if !equal_edge_counts {
        messages.push(format!("edge counts differ: {} and {}", upper.edge_count(), lower.edge_count()));
    }
    let upper_trivial_square = match is_trivial_square(upper) {
        Ok(t) => t,
        Err(e) => {
            messages.push(format!("trivial-square test failed: {e}"));
            false
        }
    };
    if !upper_trivial_square {
        messages.push("upper graph is not a trivial square".into());
    }
    let upper_degrees_in_range = p >= 1 && degrees_in(upper, p);
    if !upper_degrees_in_range {
        messages.push(format!("upper graph has a degree outside {{{p}, {}}}", p + 1));
    }
    let lower_max_degree_ok = lower.max_degree() <= p + 1;
    if !lower_max_degree_ok {
        messages.push(format!("lower graph has maximum degree {} > {}", lower.max_degree(), p + 1));
    }
    let lower_comps: BTreeSet<Hypergraph> = connected_components(lower).iter().map(|c| c.canonical_form()).collect();
    let mut upper_comps: Vec<Hypergraph> = connected_components(upper).iter().map(|c| c.canonical_form()).collect();
    upper_comps.sort_by_cached_key(|c| (c.edge_count(), c.to_json()));
    let distinguished_component = upper_comps.iter().find(|c| !lower_comps.contains(c)).map(|c| c.to_json());
    if distinguished_component.is_none() {
        messages.push("every component of the upper graph occurs in the lower graph".into());
    }
    Ok(Preconditions {
        same_uniformity,
        equal_edge_counts,
        upper_trivial_square,
        upper_degrees_in_range,
        lower_max_degree_ok,
        distinguished_component,
        messages,
    })
}

/// Decides whether `k alpha(upper) - (k+1) alpha(lower)` lies in the cone
/// generated by `m(A, B)` over the reduced basis of degree `d` with labels
/// `1..=label_budget`, by the counting chain and independently by exact LP.
pub fn counting_obstruction(
    upper: &Hypergraph,
    lower: &Hypergraph,
    k: usize,
    d: usize,
    label_budget: u32,
    p: Option<usize>,
) -> Result<ObstructionReport> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameter("k and d must be at least 1".into()));
    }
    let p = p.unwrap_or_else(|| infer_p(upper, lower));
    let preconditions = check_preconditions(upper, lower, p)?;
    let mut report = ObstructionReport {
        upper: upper.canonical_string(),
        lower: lower.canonical_string(),
        k,
        d,
        label_budget,
        p,
        preconditions,
        basis: Vec::new(),
        basis_extensions: Vec::new(),
        reduced_basis_size: 0,
        pairs_checked: 0,
        pairing_failures: Vec::new(),
        c_positive_pairs: 0,
        bound_failures: Vec::new(),
        y: None,
        target: Vec::new(),
        target_pairing: None,
        counting_bound: 0,
        counting_contradiction: false,
        lp_generators: 0,
        lp: None,
        conclusion: Conclusion::PreconditionFailure,
        scope: format!("degree {d}, label budget {label_budget}"),
    };
    if !report.preconditions.hold() {
        return Ok(report);
    }
    let c = Hypergraph::from_json(report.preconditions.distinguished_component.as_ref().expect("checked"))?;

    let rows = enumerate_basis(BasisKind::Reduced, d, label_budget, upper.r())?;
    let connected = enumerate_basis(BasisKind::Connected, d, label_budget, upper.r())?;
    let mut basis = GraphBasis::from_basis(&connected)?;
    report.reduced_basis_size = rows.len();

    let mut sparse = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let m = m_sparse(&rows.elements[i], &rows.elements[j])?;
            for g in m.keys() {
                basis.extend(g);
            }
            sparse.push((i, j, m));
        }
    }
    for comp in connected_components(upper).iter().chain(&connected_components(lower)) {
        basis.extend(&comp.canonical_form());
    }
    let y = y_vector(&basis, p)?;
    let c_index = basis.position(&c).expect("extended");

    let mut generators: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (i, j, m) in &sparse {
        let v = ExponentVector::from_sparse(m, &basis)?;
        let (a, b) = (&rows.elements[*i], &rows.elements[*j]);
        let pairing = y_pairing(&y, &v)?;
        report.pairs_checked += 1;
        if pairing < int(0) {
            report.pairing_failures.push(PairFailure {
                a: a.canonical_string(),
                b: b.canonical_string(),
                pairing: pairing.clone(),
                verdict: None,
            });
        }
        if v.get(c_index) > 0 {
            report.c_positive_pairs += 1;
        }
        // every pair, not only the C-positive ones, must match the copy counts
        let verdict = copy_bound_verdict(a, b, &c, &v, &basis, &y)?;
        if !verdict.passes() {
            report.bound_failures.push(PairFailure {
                a: a.canonical_string(),
                b: b.canonical_string(),
                pairing,
                verdict: Some(verdict),
            });
        }
        if !v.is_zero() {
            generators.insert(v.0);
        }
    }

    let k_i = k as i64;
    let up = alpha_vector(upper, &basis)?;
    let lo = alpha_vector(lower, &basis)?;
    let target = ExponentVector((0..basis.len()).map(|t| k_i * up.get(t) - (k_i + 1) * lo.get(t)).collect());
    let target_pairing = y_pairing(&y, &target)?;
    // vertex degrees stay at most p + 1, so L = -r|E| on both sides
    let expected = (upper.r() * lower.edge_count()) as i64;
    if target_pairing != int(expected) {
        return Err(Error::CertificateMismatch(format!(
            "<y, target> = {} but r|E(lower)| = {expected}",
            rational::fraction_string(&target_pairing)
        )));
    }
    let checks_pass = report.pairing_failures.is_empty() && report.bound_failures.is_empty();
    if !checks_pass {
        return Err(Error::CertificateMismatch(format!(
            "{} pairs with negative pairing, {} pairs failing the copy bounds",
            report.pairing_failures.len(),
            report.bound_failures.len()
        )));
    }
    report.counting_bound = 2 * expected as usize;
    report.counting_contradiction = k > report.counting_bound;

    let generators: Vec<Vec<i64>> = generators.into_iter().collect();
    report.lp_generators = generators.len();
    let lp = cone_member_int(&target.0, &generators)?;
    report.conclusion = match (report.counting_contradiction, lp.is_member()) {
        (true, false) => Conclusion::NotSosTestable,
        (true, true) => {
            return Err(Error::CertificateMismatch(
                "counting chain is contradicted but the LP oracle finds a certificate".into(),
            ))
        }
        (false, false) => Conclusion::SeparatedByLpOnly,
        (false, true) => Conclusion::Inconclusive,
    };
    report.basis = basis.names();
    report.basis_extensions = basis.extensions().iter().map(|g| g.to_json()).collect();
    report.y = Some(y);
    report.target = target.0;
    report.target_pairing = Some(target_pairing);
    report.lp = Some(lp);
    Ok(report)
}
