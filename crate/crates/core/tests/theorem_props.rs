use num_bigint::BigInt;
use proptest::prelude::*;

use ztorsion_core::facering::{
    component_hilbert, f_from_h, f_vector, face_ideal, h_from_f, hilbert_via_chains, FaceRelation,
};
use ztorsion_core::torsion_poset::verify_point_decomposition;
use ztorsion_core::zmatroid::subsets_in_order;
use ztorsion_core::{build_poset, face_module_hilbert, verify_main_theorem, verify_realization, Realization, VerifyOptions};

fn realization() -> impl Strategy<Value = Realization> {
    (1usize..=3, 0usize..=4, 0usize..=2).prop_flat_map(|(d, n, k)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, d), k),
            prop::collection::vec(prop::collection::vec(-3i64..=3, d), n),
        )
            .prop_map(move |(rels, gens)| {
                let big = |v: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
                    v.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
                };
                Realization::new(d, &big(rels), big(gens)).unwrap()
            })
    })
}

fn free_realization() -> impl Strategy<Value = Realization> {
    (1usize..=3, 0usize..=4).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, d), n).prop_map(move |gens| {
            let gens = gens.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            Realization::new(d, &[], gens).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profiles_are_monotone(r in realization()) {
        let profiles = r.profiles();
        for p in &profiles {
            for i in p.subset.indices() {
                let q = r.profile(p.subset.without(i));
                prop_assert!(q.cork <= p.cork && p.cork <= q.cork + 1);
            }
            prop_assert_eq!(p.independent, p.cork == p.subset.len());
        }
    }

    #[test]
    fn deletion_restricts_profiles(r in realization()) {
        let n = r.ground_set_size();
        for i in 0..n {
            let del = r.delete(i).unwrap();
            for a in subsets_in_order(n - 1) {
                // reinsert index i into the bit positions of a
                let low = a.0 & ((1u64 << i) - 1);
                let high = (a.0 >> i) << (i + 1);
                let original = ztorsion_core::Subset(low | high);
                prop_assert_eq!(del.structure(a), r.structure(original));
            }
        }
    }

    #[test]
    fn gt_class_evaluates_to_tutte(r in free_realization()) {
        let gt = r.grothendieck_class().unwrap();
        prop_assert_eq!(gt.evaluate(), r.arithmetic_tutte());
    }

    #[test]
    fn duality_swaps_variables(r in free_realization()) {
        let d = r.dual().unwrap();
        prop_assert_eq!(d.arithmetic_tutte(), r.arithmetic_tutte().swap_xy());
        if d.initial_structure().is_free() {
            prop_assert_eq!(d.dual().unwrap().arithmetic_tutte(), r.arithmetic_tutte());
        }
    }

    #[test]
    fn poset_structure(r in realization()) {
        let gr = build_poset(&r);
        let p = gr.poset();
        let comps = gr.components();
        prop_assert_eq!(BigInt::from(comps.len()), r.initial_multiplicity());
        for x in 0..gr.len() {
            prop_assert_eq!(p.lower_covers(x).len(), p.rank(x));
        }
        for c in &comps {
            prop_assert!(p.check_simplicial(c).unwrap().is_simplicial());
        }
        prop_assert!(gr.lower_intervals_match_subsets());
        let total: BigInt = r.profiles().iter().filter(|p| p.independent).map(|p| p.multiplicity.clone()).sum();
        prop_assert_eq!(BigInt::from(gr.len()), total);
    }

    #[test]
    fn chain_oracle_matches_h_vector(r in realization()) {
        let gr = build_poset(&r);
        for c in gr.components() {
            let f = f_vector(gr.poset(), &c);
            prop_assert_eq!(f_from_h(&h_from_f(&f)), f.clone());
            prop_assert!(h_from_f(&f).is_nonnegative());
            prop_assert!(component_hilbert(gr.poset(), &c).is_ok());
            prop_assert!(hilbert_via_chains(gr.poset(), &c).is_ok());
        }
    }

    #[test]
    fn h_polynomial_is_tutte_at_y_one(r in free_realization()) {
        // Σ h_i t^(r-i) = T_M(t, 1)
        let gr = build_poset(&r);
        let h = h_from_f(&f_vector(gr.poset(), &gr.components()[0]));
        let t = r.arithmetic_tutte();
        let rank = r.rank() as u32;
        let hp = h.reversed_polynomial();
        for k in 0..=rank {
            let col: BigInt = (0..=8).map(|j| t.coeff(k, j)).sum();
            prop_assert_eq!(hp.coeff(k as usize), col);
        }
    }

    #[test]
    fn main_theorem(r in realization()) {
        let rep = verify_main_theorem(&r).unwrap();
        prop_assert!(rep.holds, "{}", rep);
        let reduced = face_module_hilbert(&r.modulo_initial_torsion()).unwrap();
        prop_assert_eq!(face_module_hilbert(&r).unwrap(), reduced.scale(&r.initial_multiplicity()));
    }

    #[test]
    fn point_decomposition(r in realization()) {
        prop_assert!(verify_point_decomposition(&r).holds);
    }

    #[test]
    fn face_ideal_relations_are_incomparable_pairs(r in free_realization()) {
        let gr = build_poset(&r);
        let all: Vec<usize> = (0..gr.len()).collect();
        let ideal = face_ideal(gr.poset(), &all).unwrap();
        prop_assert_eq!(&ideal.generators[0], &FaceRelation::Bottom(0));
        let mut incomparable = 0;
        for a in 0..gr.len() {
            for b in a + 1..gr.len() {
                incomparable += usize::from(!gr.poset().comparable(a, b));
            }
        }
        prop_assert_eq!(ideal.generators.len(), incomparable + 1);
    }

    #[test]
    fn verify_suite_passes(r in realization()) {
        let rep = verify_realization(&r, VerifyOptions::default());
        prop_assert!(rep.all_passed(), "{}", rep);
    }
}
