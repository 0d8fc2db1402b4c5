use nichols_rank2::admissibility::Scalars;
use nichols_rank2::braidedalg::{chi, is_zero_in_nichols, Braiding, Tau0};
use nichols_rank2::classify::fixtures;
use nichols_rank2::cyclotomic::{qnum, CycNum};
use nichols_rank2::fbtree::{appendix, ExtNode};
use nichols_rank2::nicholscore::{
    check_relations_vanish, count_by_degree, dimension, hilbert_prefix, mixed_relation, pbw_monomials,
    relation_set, top_degree, verify_type, Family,
};

fn a2() -> Braiding {
    Braiding::from_strings("1/3", "2/3", "0/1", "1/3").unwrap()
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn a2_hilbert_series() {
    let expected = vec![1, 2, 4, 4, 5, 4, 4, 2, 1];
    let g = poly_mul(&poly_mul(&[1, 1, 1], &[1, 1, 1]), &[1, 0, 1, 0, 1]);
    assert_eq!(g, expected);
    let h = hilbert_prefix(&a2(), 9);
    assert_eq!(h.dims[..9], expected[..]);
    assert_eq!(h.dims[9], 0);
    assert_eq!(h.total(), 27);
}

#[test]
fn exterior_hilbert_series() {
    let b = Braiding::from_strings("1/2", "0/1", "0/1", "1/2").unwrap();
    assert_eq!(hilbert_prefix(&b, 4).dims, vec![1, 2, 1, 0, 0]);
}

#[test]
fn t3_total_dimension() {
    let f = fixtures().into_iter().find(|f| f.name == "T3.3").unwrap();
    let t = appendix(3);
    let top = top_degree(&t, &f.braiding).unwrap();
    assert_eq!(top, 10);
    let h = hilbert_prefix(&f.braiding, top + 1);
    assert_eq!(h.dims[top as usize + 1], 0);
    assert_eq!(h.total(), dimension(&t, &f.braiding).unwrap());
    assert_eq!(h.total(), 36);
    assert_eq!(count_by_degree(&pbw_monomials(&t, &f.braiding, top).unwrap(), top), {
        let mut p = h.clone();
        p.dims.pop();
        p
    });
}

#[test]
fn a2_verifies_and_relations_vanish() {
    let t = appendix(2);
    let v = verify_type(&t, &a2(), 8).unwrap();
    assert!(v.holds);
    assert!(v.unexercised.is_empty());
    let rels = relation_set(&t, &a2(), 8).unwrap();
    let count = |f: Family| rels.iter().filter(|r| r.family == f).count();
    assert_eq!((count(Family::Leaf), count(Family::Power), count(Family::Mixed)), (2, 3, 0));
    assert!(check_relations_vanish(&t, &a2(), 8).unwrap());
}

#[test]
fn wrong_tree_is_rejected() {
    let v = verify_type(&appendix(1), &a2(), 2).unwrap();
    assert!(!v.holds);
    assert_eq!(v.failed_at, Some(2));
    assert!(matches!(
        verify_type(&appendix(3), &a2(), 4),
        Err(nichols_rank2::error::Error::TreeBraidingMismatch { .. })
    ));
}

#[test]
fn perturbed_mixed_relation_survives() {
    let f = fixtures().into_iter().find(|f| f.name == "T4.1").unwrap();
    let t = appendix(4);
    let b = &f.braiding;
    let bn = t.rch(0).unwrap();
    let exact = mixed_relation(&t, b, bn, &CycNum::one()).unwrap();
    let off = mixed_relation(&t, b, bn, &CycNum::from_int(2)).unwrap();
    for method in ["symmetrizer", "derivations"] {
        assert!(is_zero_in_nichols(b, &exact, method).unwrap());
        assert!(!is_zero_in_nichols(b, &off, method).unwrap(), "{method}");
    }
}

#[test]
fn truncated_relations_are_described() {
    let f = fixtures().into_iter().find(|f| f.name == "T10").unwrap();
    let rels = relation_set(&appendix(10), &f.braiding, 4).unwrap();
    assert!(rels.iter().any(|r| r.poly.is_none() && r.degree.total() > 4));
    assert!(rels.iter().all(|r| r.poly.is_some() == (r.degree.total() <= 4)));
}

// tau(f) tau(d) - chi(f, d) tau(d) tau(f) = lambda(d) / [2]_{p_c} tau(c)^2
// for d = lch(c), f = rgf(c)
#[test]
fn contraction_identity() {
    let mut checked = 0;
    for fx in fixtures() {
        let t = appendix(fx.type_id as usize);
        let b = &fx.braiding;
        let s = Scalars::new(&t, b);
        let mut tau = Tau0::new(&t, b);
        for c in t.nodes().filter(|&c| !t.is_leaf(c)) {
            let d = t.lch(c).unwrap();
            if t.is_leaf(d) {
                continue;
            }
            let f = t.rgf(c);
            let (dd, df) = (tau.degree(ExtNode::Node(d)), tau.degree(f));
            if dd.total() + df.total() > 8 {
                continue;
            }
            let (td, tf, tc) = (tau.get(ExtNode::Node(d)), tau.get(f), tau.get(ExtNode::Node(c)));
            let coeff = s.lambda(d).checked_div(&qnum(2, s.p(ExtNode::Node(c)))).unwrap();
            let rel = &(&(&tf * &td) - &(&td * &tf).scale(&chi(b, df, dd))) - &(&tc * &tc).scale(&coeff);
            assert!(is_zero_in_nichols(b, &rel, "symmetrizer").unwrap(), "{} at #{c}", fx.name);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
