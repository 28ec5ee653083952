use tropgraph::gluing::{enumerate_basis, moment_matrix_auto, BasisKind, ExponentVector, GraphBasis};
use tropgraph::obstructions::{
    copy_bound_check, counting_obstruction, l_value, m_vector, y_pairing, y_vector, Conclusion, ObstructionReport,
};
use tropgraph::rational::int;
use tropgraph::Hypergraph;

fn e3() -> Hypergraph {
    Hypergraph::graph(6, &[(0, 1), (2, 3), (4, 5)]).unwrap()
}

fn p3() -> Hypergraph {
    Hypergraph::named("P3").unwrap()
}

fn assert_sound(r: &ObstructionReport) {
    assert!(r.pairing_failures.is_empty());
    assert!(r.bound_failures.is_empty());
    assert!(r.lp_generators > 0);
    if r.counting_contradiction {
        assert!(!r.lp.as_ref().unwrap().is_member());
    }
}

#[test]
fn degree_two_budget_four() {
    for (k, expected) in
        [(1, Conclusion::SeparatedByLpOnly), (7, Conclusion::SeparatedByLpOnly), (13, Conclusion::NotSosTestable)]
    {
        let r = counting_obstruction(&p3(), &e3(), k, 2, 4, Some(1)).unwrap();
        assert_sound(&r);
        assert_eq!(r.pairs_checked, 70 * 69 / 2);
        assert_eq!(r.target_pairing, Some(int(6)));
        assert_eq!(r.conclusion, expected, "k = {k}");
        assert!(r.lp.unwrap().separator().is_some());
    }
}

#[test]
fn degree_three_budget_four() {
    for (k, expected) in
        [(1, Conclusion::Inconclusive), (7, Conclusion::SeparatedByLpOnly), (13, Conclusion::NotSosTestable)]
    {
        let r = counting_obstruction(&p3(), &e3(), k, 3, 4, Some(1)).unwrap();
        assert_sound(&r);
        assert!(r.c_positive_pairs > 0);
        assert_eq!(r.conclusion, expected, "k = {k}");
    }
}

#[test]
fn triangle_against_matching() {
    let r = counting_obstruction(&Hypergraph::named("K3").unwrap(), &e3(), 13, 1, 2, None).unwrap();
    assert!(r.preconditions.hold());
    assert_eq!(r.p, 2);
    assert_sound(&r);
}

#[test]
fn pairings_nonnegative_degree_two() {
    let rows = enumerate_basis(BasisKind::Reduced, 2, 4, 2).unwrap();
    let mut basis = GraphBasis::from_basis(&enumerate_basis(BasisKind::Connected, 2, 4, 2).unwrap()).unwrap();
    let before = basis.len();
    let mut vectors = Vec::new();
    for (i, a) in rows.elements.iter().enumerate() {
        for b in &rows.elements[i..] {
            vectors.push(m_vector(a, b, &mut basis).unwrap());
        }
    }
    assert_eq!(basis.len(), before, "V_2 is closed under the products");
    for p in [1, 2] {
        let y = y_vector(&basis, p).unwrap();
        for v in &vectors {
            assert!(y_pairing(&y, &v.padded(basis.len())).unwrap() >= int(0));
        }
    }
}

#[test]
fn m_vectors_match_moment_matrix_minors() {
    let rows = enumerate_basis(BasisKind::Reduced, 2, 4, 2).unwrap();
    let mm = moment_matrix_auto(&rows).unwrap();
    let mut basis = mm.columns.clone();
    let e = &mm.entries;
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            let m = m_vector(&rows.elements[i], &rows.elements[j], &mut basis).unwrap();
            for t in 0..basis.len() {
                assert_eq!(m.get(t), e[i][i].get(t) + e[j][j].get(t) - 2 * e[i][j].get(t));
            }
        }
    }
}

#[test]
fn target_pairing_family() {
    let basis = GraphBasis::new([Hypergraph::named("edge").unwrap(), p3()]).unwrap();
    let y = y_vector(&basis, 1).unwrap();
    assert_eq!(l_value(&p3(), 1), int(-6));
    for k in 1..20i64 {
        let v = ExponentVector(vec![-3 * (k + 1), k]);
        assert_eq!(y_pairing(&y, &v).unwrap(), int(6));
    }
}

#[test]
fn copy_bounds_fully_labeled_paths() {
    // C = P3 needs four labels; every C-positive pair must satisfy both bounds
    let rows = enumerate_basis(BasisKind::Reduced, 3, 4, 2).unwrap();
    let fully: Vec<_> = rows.elements.iter().filter(|g| g.is_fully_labeled() && g.unlabel() == p3()).collect();
    assert!(!fully.is_empty());
    let mut positive = 0;
    for a in &fully {
        for b in &rows.elements {
            let v = copy_bound_check(a, b, &p3(), 1).unwrap();
            assert!(v.passes(), "{} {}", a.canonical_string(), b.canonical_string());
            positive += v.applicable as usize;
        }
    }
    assert!(positive > 0);
}
