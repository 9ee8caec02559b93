mod common;

use common::props::*;
use oigb_core::poly::PolyMonomial;
use proptest::prelude::*;

const CASES: u32 = 1000;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn morphisms_act_functorially(
        (x, pi, eps) in element(lex_module(), 3, 2, 4).prop_flat_map(|x| {
            let w = x.width();
            (Just(x), morphism_from(w, 2)).prop_flat_map(|(x, pi)| {
                let n = pi.target_width();
                (Just(x), Just(pi), morphism_from(n, 2))
            })
        })
    ) {
        check_functoriality(&x, &pi, &eps)?;
    }

    #[test]
    fn lex_order_is_oi_compatible(
        (w, a, b, eps, m) in (1usize..=3).prop_flat_map(|w| (
            Just(w),
            raw_terms(2, w, 2, 1),
            raw_terms(2, w, 2, 1),
            morphism_from(w, 2),
        )).prop_flat_map(|(w, a, b, eps)| {
            let n = eps.target_width();
            (Just(w), Just(a), Just(b), Just(eps), proptest::collection::vec(0u32..=2, 2 * n))
        })
    ) {
        let module = lex_module();
        let (Some(a), Some(b)) = (monomial(&module, w, &a[0]), monomial(&module, w, &b[0])) else {
            return Ok(());
        };
        let n = eps.target_width();
        let entries: Vec<_> = m.iter().enumerate().map(|(k, &e)| ((k / n + 1, k % n + 1), e)).collect();
        let m = PolyMonomial::from_exponents(2, n, &entries).unwrap();
        check_order(&module, &a, &b, &eps, &m)?;
    }

    #[test]
    fn division_replays_and_remainder_is_irreducible(
        f in element(lex_module(), 3, 2, 5),
        g in proptest::collection::vec(element(lex_module(), 2, 2, 2), 1..=3),
    ) {
        check_division(&f, &g)?;
    }

    #[test]
    fn schreyer_order_is_oi_compatible(
        (w, a, b, eps, m) in (2usize..=4).prop_flat_map(|w| (
            Just(w),
            raw_terms(2, w, 2, 1),
            raw_terms(2, w, 2, 1),
            morphism_from(w, 2),
        )).prop_flat_map(|(w, a, b, eps)| {
            let n = eps.target_width();
            (Just(w), Just(a), Just(b), Just(eps), proptest::collection::vec(0u32..=2, 2 * n))
        })
    ) {
        let module = schreyer_module();
        let (Some(a), Some(b)) = (monomial(&module, w, &a[0]), monomial(&module, w, &b[0])) else {
            return Ok(());
        };
        let n = eps.target_width();
        let entries: Vec<_> = m.iter().enumerate().map(|(k, &e)| ((k / n + 1, k % n + 1), e)).collect();
        let m = PolyMonomial::from_exponents(2, n, &entries).unwrap();
        check_order(&module, &a, &b, &eps, &m)?;
    }

    #[test]
    fn syzygies_lie_in_the_kernel(
        b in proptest::collection::vec(element(lex_module(), 2, 1, 2), 1..=2),
    ) {
        // Inputs whose basis exceeds the pair cap are replaced by fresh ones.
        prop_assume!(check_schreyer(&b)?);
    }
}
