mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::*;
use fusionkit_core::fingroup::{
    center, centralizer, conjugacy_classes, cyclic, direct_product, normalizer, symmetric, LinearGroup, LinearKind,
};
use fusionkit_core::fusion::FusionData;
use fusionkit_core::{CayleyTable, CycMatrix, Group, MatrixGroup, Subgroup, DEFAULT_CAP};

fn sample_groups() -> Vec<CayleyTable> {
    vec![
        cyclic(12),
        direct_product(&cyclic(2), &cyclic(6)),
        symmetric(3),
        symmetric(4),
        CayleyTable::from_group(&LinearGroup::new(LinearKind::Sl, 3)),
        CayleyTable::from_group(&LinearGroup::new(LinearKind::Gl, 3)),
        direct_product(&symmetric(3), &cyclic(4)),
    ]
}

fn chain_generators_p3() -> Vec<CycMatrix> {
    vec![a_mat(3, 3), b_mat(3, 3), CycMatrix::scalar(3, zeta(3, 1)), d_mat(3, 3), sigma_mat(3, 2, 3, true)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_ignores_generator_order(perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let gens = chain_generators_p3();
        let shuffled: Vec<CycMatrix> = perm.iter().map(|&i| gens[i].clone()).collect();
        let a = MatrixGroup::closure(&gens, DEFAULT_CAP).unwrap();
        let b = MatrixGroup::closure(&shuffled, DEFAULT_CAP).unwrap();
        prop_assert_eq!(a.order(), b.order());
        let sa: HashSet<CycMatrix> = (0..a.order()).map(|x| a.matrix(x)).collect();
        let sb: HashSet<CycMatrix> = (0..b.order()).map(|x| b.matrix(x)).collect();
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn normalizer_contains_h_times_centralizer(gi in 0usize..7, x in any::<usize>(), y in any::<usize>(), two in any::<bool>()) {
        let groups = sample_groups();
        let g = &groups[gi];
        let n = g.order();
        let gens = if two { vec![x % n, y % n] } else { vec![x % n] };
        let h = Subgroup::generated(g, &gens);
        let c = centralizer(g, &h);
        let nh = normalizer(g, &h);
        let hc = h.order() * c.order() / h.intersection(g, &c).order();
        prop_assert_eq!(nh.order() % hc, 0);
        prop_assert!(c.members().iter().all(|&z| nh.contains(z)));
    }

    #[test]
    fn class_equation(gi in 0usize..7) {
        let groups = sample_groups();
        let g = &groups[gi];
        let classes = conjugacy_classes(g);
        let total: usize = classes.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.order());
        prop_assert!(classes.iter().all(|c| g.order().is_multiple_of(c.len())));
        prop_assert_eq!(classes.iter().filter(|c| c.len() == 1).count(), center(g).order());
    }
}

#[test]
fn chain_ses_identity_on_small_groups() {
    let cases: Vec<(CayleyTable, usize)> = vec![
        (symmetric(4), 2),
        (symmetric(4), 3),
        (CayleyTable::from_group(&LinearGroup::new(LinearKind::Gl, 3)), 2),
        (CayleyTable::from_group(&LinearGroup::new(LinearKind::Gl, 3)), 3),
        (symmetric(5), 2),
    ];
    for (g, p) in &cases {
        let data = FusionData::new(g, *p).unwrap();
        let (poset, classes) = data.sd_poset().unwrap();
        assert!(poset.is_heighted());
        for c in &classes {
            let r = data.chain_aut(&c.rep).unwrap();
            assert_eq!(r.autl_order, r.center_order * r.autf_order);
            assert!(r.ses_identity, "|G| = {}, p = {p}, chain {:?}", g.order(), c.names);
            assert!(r.restriction_injective);
        }
    }
}
