mod common;

use std::collections::BTreeSet;

use common::oracles::*;
use common::b;
use coxcalc::lattice::{AbelianGroup, IntVec};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_reconstructs_random(a in sized_matrix()) {
        smith_form_reconstructs(&a)?;
    }

    #[test]
    fn gale_duality_roundtrip_random(q in degree_matrix()) {
        prop_assume!(q.cols() > q.rows());
        gale_duality_roundtrip(&q)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cone_v_and_h_descriptions_agree_random((n, gens) in ray_set(5)) {
        cone_v_and_h_descriptions_agree(n, &gens)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn complexity_one_ffaces_match_parameterization_random((ls, m) in complexity_one_shape()) {
        complexity_one_ffaces_match_parameterization(&ls, m)?;
    }

    #[test]
    fn factoriality_is_torsion_freeness_of_p0_random(ap in ap_data()) {
        factoriality_is_torsion_freeness_of_p0(&ap)?;
    }

    #[test]
    fn complexity_one_rings_are_homogeneous_random(ap in ap_data()) {
        complexity_one_rings_are_homogeneous(&ap)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_form_is_symmetric_and_bilinear_random((a, x, y, z, k) in form_input()) {
        intersection_form_is_symmetric_and_bilinear(a, &x, &y, &z, k)?;
    }
}

fn class(c: &[i64]) -> IntVec {
    c.iter().map(|&x| b(x)).collect()
}

/// Order of the subgroup of `Z/a + Z/b` generated by `gens`, by closure.
fn closure_size(a: i64, bb: i64, gens: &[(i64, i64)]) -> usize {
    let mut seen = BTreeSet::new();
    let mut stack = vec![(0i64, 0i64)];
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for g in gens {
            stack.push(((x.0 + g.0).rem_euclid(a), (x.1 + g.1).rem_euclid(bb)));
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn subgroup_index_in_finite_groups(
        a in 2i64..=6,
        bb in 2i64..=6,
        gens in prop::collection::vec((-7i64..=7, -7i64..=7), 0..=3),
    ) {
        // Z/a + Z/b is normalized to invariant factors by the constructor only
        // when given as such, so present it through the quotient of Z^2
        let z2 = AbelianGroup::free(2);
        let q = z2.quotient(&[class(&[a, 0]), class(&[0, bb])]).unwrap();
        let k = q.group.clone();
        let images: Vec<IntVec> = gens.iter().map(|&(x, y)| q.project(&class(&[x, y]))).collect();
        let index = k.subgroup_index(&images).unwrap().unwrap();
        let order = (a * bb) as usize;
        prop_assert_eq!(index, BigInt::from(order / closure_size(a, bb, &gens)));
        prop_assert_eq!(k.torsion_order(), BigInt::from(a * bb));
        prop_assert_eq!(k.generates(&images).unwrap(), closure_size(a, bb, &gens) == order);
    }
}
