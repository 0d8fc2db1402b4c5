use nichols_rank2::fbtree::{appendix, order_lemma_violations, parse_tree, random_tree, ExtNode, APPENDIX};
use nichols_rank2::lyndon::gamma;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn appendix_trees_satisfy_order_lemma() {
    for n in 1..=22 {
        assert_eq!(order_lemma_violations(&appendix(n)), Vec::<String>::new(), "T{n}");
    }
}

#[test]
fn appendix_sizes() {
    let internal: Vec<usize> = (1..=22).map(|n| appendix(n).node_sets().n2.len()).collect();
    assert_eq!(internal, vec![0, 1, 2, 3, 3, 4, 3, 4, 4, 6, 6, 6, 6, 4, 6, 6, 6, 6, 10, 6, 6, 10]);
}

#[test]
fn t6_labels() {
    let t = appendix(6);
    let labels: Vec<(u64, u64)> = t
        .node_sets()
        .n2
        .iter()
        .map(|&a| {
            let l = t.stern_brocot(ExtNode::Node(a));
            (l.r, l.s)
        })
        .collect();
    assert_eq!(labels, vec![(1, 2), (1, 1), (3, 2), (2, 1)]);
}

#[test]
fn godfathers_determine_nodes() {
    for n in 1..=22 {
        let t = appendix(n);
        for a in t.nodes() {
            assert_eq!(t.find_by_godfathers(t.lgf(a), t.rgf(a)), Some(a));
        }
    }
}

#[test]
fn parse_rejects_garbage() {
    for bad in ["", "(L", "(L L L)", "L L", "(X L)", "()"] {
        assert!(parse_tree(bad).is_err(), "{bad:?}");
    }
    assert_eq!(APPENDIX.iter().map(|s| parse_tree(s).unwrap().serialize()).collect::<Vec<_>>(), APPENDIX);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_trees_satisfy_order_lemma(seed in any::<u64>(), internal in 0usize..=16) {
        let t = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), internal);
        prop_assert_eq!(t.len(), 2 * internal + 1);
        prop_assert_eq!(order_lemma_violations(&t), Vec::<String>::new());
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), internal in 0usize..=12) {
        let t = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), internal);
        prop_assert_eq!(parse_tree(&t.serialize()).unwrap(), t);
    }

    #[test]
    fn gamma_length_is_weight(seed in any::<u64>(), internal in 0usize..=12) {
        let t = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), internal);
        for (a, w) in gamma(&t) {
            prop_assert_eq!(w.len() as u64, t.weight(a));
            prop_assert_eq!(w.count_beta() as u64, t.stern_brocot(a).r);
        }
    }
}
