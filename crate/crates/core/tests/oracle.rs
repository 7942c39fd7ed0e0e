use flagforge::corpus::{k2_profiles, verification_corpus};
use flagforge::facelattice::{enumerate_chains, enumerate_faces};
use flagforge::minkflag::f_poly_minkowski;
use flagforge::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn family_strategy(max_r: usize, k: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_r).prop_flat_map(move |r| {
        prop::collection::vec(1u64..(1 << r), k).prop_map(|m| SetFamily::from_masks(&m).unwrap())
    })
}

fn strict_by_counting(family: &SetFamily, ell: usize) -> Poly {
    let lattice = enumerate_faces(family).unwrap();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for ch in enumerate_chains(&lattice, ell).unwrap() {
        if ch.faces.windows(2).all(|w| w[0] != w[1]) {
            *counts.entry(ch.deltadims).or_default() += 1;
        }
    }
    Poly::from_terms(ell, counts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap()
}

#[test]
fn strict_chain_polynomial_matches_counting() {
    let families = [
        SetFamily::new(&[vec![1, 2, 3], vec![1, 2, 4]]).unwrap(),
        SetFamily::new(&[vec![1, 2], vec![1, 3]]).unwrap(),
        SetFamily::new(&[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap(),
    ];
    for f in &families {
        let flags = FlagFamily::from_fn(3, |j| flag_minkowski(f, j)).unwrap();
        for ell in 1..=3 {
            assert_eq!(
                strict_chain_poly(&flags, ell).unwrap(),
                strict_by_counting(f, ell),
                "{f} l={ell}"
            );
        }
    }
}

#[test]
fn dedup_never_fires_on_the_corpus() {
    for (f, _) in verification_corpus() {
        assert_eq!(enumerate_faces(&f).unwrap().merged_candidates(), 0, "{f}");
    }
}

#[test]
fn verification_corpus_agrees_with_the_theorem() {
    for (f, max_ell) in verification_corpus() {
        for ell in 1..=max_ell {
            let theorem: Poly = flag_minkowski(&f, ell).unwrap();
            let oracle: Poly = flag_poly_by_counting(&f, ell).unwrap();
            assert_eq!(theorem, oracle, "{f} l={ell}");
        }
    }
}

#[test]
fn chains0d_matches_oracle_incidences() {
    for p in k2_profiles(6) {
        let f = p.family().unwrap();
        let counted: Poly = flag_poly_by_counting(&f, 2).unwrap();
        for d in 0..p.r() as u32 {
            assert_eq!(counted.coefficient(&[0, d]), chains0d(p, d), "{p} d={d}");
        }
    }
}

#[test]
fn pyramid_is_join_with_a_point() {
    // The square (F = {1,2},{1,3}) built from the theorem, then coned.
    let f = SetFamily::new(&[vec![1, 2], vec![1, 3]]).unwrap();
    let flags: FlagFamily = FlagFamily::from_fn(3, |j| flag_minkowski(&f, j)).unwrap();
    let pyramid = flags.pyramid().unwrap();
    let joined = flags.free_join(&FlagFamily::point(3)).unwrap();
    assert_eq!(pyramid, joined);
    // Square pyramid: 5 vertices, 8 edges, 5 two-faces.
    assert_eq!(pyramid.order(1).unwrap().coefficient_sum(), BigInt::from(19));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn k2_theorem_matches_oracle(f in family_strategy(6, 2), ell in 1usize..=3) {
        let theorem: Poly = flag_minkowski(&f, ell).unwrap();
        let oracle: Poly = flag_poly_by_counting(&f, ell).unwrap();
        prop_assert_eq!(theorem, oracle);
    }

    #[test]
    fn k3_theorem_matches_oracle(f in family_strategy(5, 3), ell in 1usize..=2) {
        let theorem: Poly = flag_minkowski(&f, ell).unwrap();
        let oracle: Poly = flag_poly_by_counting(&f, ell).unwrap();
        prop_assert_eq!(theorem, oracle);
    }

    #[test]
    fn last_variable_specialization(f in family_strategy(5, 3), ell in 2usize..=3) {
        let hi: Poly = flag_minkowski(&f, ell).unwrap();
        let lo: Poly = flag_minkowski(&f, ell - 1).unwrap();
        prop_assert_eq!(hi.specialize_last_zero().unwrap(), lo);
    }

    #[test]
    fn k2_closed_forms_agree(r1 in 0u64..=5, r2 in 0u64..=5, r3 in 0u64..=5) {
        let p = K2Profile::new(r1, r2, r3);
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        prop_assume!(p.family().is_some());
        let f = p.family().unwrap();
        let theorem: Poly = flag_minkowski(&f, 2).unwrap();
        prop_assert_eq!(&flag2_closed_k2::<BigInt>(p), &theorem);
        prop_assert_eq!(flag2_closed_k2::<BigInt>(p.swapped()), theorem);
        let fp: Poly = f_poly_minkowski(&f).unwrap();
        prop_assert_eq!(&f_poly_closed_k2::<BigInt>(p).unwrap(), &fp);
        prop_assert_eq!(f_poly_set_form::<BigInt>(&f).unwrap(), fp);
    }

    #[test]
    fn disjoint_sets_give_a_product(a in 1usize..=4, b in 1usize..=4, ell in 1usize..=3) {
        let f = SetFamily::new(&[(1..=a).collect::<Vec<_>>(), (a + 1..=a + b).collect()]).unwrap();
        let counted: Poly = flag_poly_by_counting(&f, ell).unwrap();
        let w = VariableWindow::full(ell).unwrap();
        let expected = flag_simplex::<BigInt>(a as u32, w).unwrap() * flag_simplex(b as u32, w).unwrap();
        prop_assert_eq!(counted, expected);
    }

    #[test]
    fn simplicity_matches_zero_discrepancy(r1 in 1u64..=6, r2 in 0u64..=6, r3 in 0u64..=6) {
        let p = K2Profile::new(r1, r2, r3).unwrap();
        let all_zero = (0..p.r() as u32).all(|d| discrepancy(p, d) == BigInt::from(0));
        prop_assert_eq!(all_zero, is_simple_k2(p).unwrap());
    }
}
