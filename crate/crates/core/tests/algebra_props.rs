use mustafin::algebra::ideal::ring_of;
use mustafin::algebra::{
    buchberger, intersect, is_groebner_basis, normal_form, saturate, Ideal, Monomial, MonomialOrder,
    Polynomial, Rational, RingRef,
};
use proptest::prelude::*;

/// Up to four terms of degree at most 2 in three variables.
fn poly_strategy() -> impl Strategy<Value = Vec<(i64, [u16; 3])>> {
    prop::collection::vec((-3i64..=3, [0u16..=2, 0u16..=2, 0u16..=2]), 1..=4)
}

fn build(ring: &RingRef, terms: &[(i64, [u16; 3])]) -> Polynomial {
    let terms = terms
        .iter()
        .map(|(c, e)| {
            let mut exps = e[..ring.nvars().min(3)].to_vec();
            exps.resize(ring.nvars(), 0);
            (Monomial::from_slice(&exps), Rational::from(*c))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Lex bases of random inputs blow up quickly, so lex runs in two variables.
fn cases() -> [(RingRef, MonomialOrder); 2] {
    [
        (ring_of(&["x", "y", "z"]), MonomialOrder::degrevlex()),
        (ring_of(&["x", "y"]), MonomialOrder::lex()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bases_are_closed_and_contain_generators(
        a in poly_strategy(), b in poly_strategy(), f in poly_strategy()
    ) {
        for (r, order) in cases() {
            let gens = vec![build(&r, &a), build(&r, &b)];
            let gb = buchberger(&gens, &order).unwrap();
            prop_assert!(is_groebner_basis(&gb, &order));
            for g in &gens {
                prop_assert!(normal_form(g, &gb, &order).unwrap().is_zero());
            }
            let nf = normal_form(&build(&r, &f), &gb, &order).unwrap();
            prop_assert_eq!(normal_form(&nf, &gb, &order).unwrap(), nf);
        }
    }

    #[test]
    fn saturation_is_stable(a in poly_strategy(), b in poly_strategy()) {
        let r = ring_of(&["x", "y", "z", "t"]);
        let t = Polynomial::var(&r, 3);
        let i = Ideal::new(&r, vec![&build(&r, &a) * &t, build(&r, &b)]).unwrap();
        let s = saturate(&i, &t);
        prop_assert!(i.is_subset_of(&s));
        prop_assert!(saturate(&s, &t).equals(&s));
    }

    #[test]
    fn intersection_is_contained_in_both(a in poly_strategy(), b in poly_strategy()) {
        let r = ring_of(&["x", "y", "z"]);
        let i = Ideal::new(&r, vec![build(&r, &a)]).unwrap();
        let j = Ideal::new(&r, vec![build(&r, &b)]).unwrap();
        let k = intersect(&i, &j).unwrap();
        prop_assert!(k.is_subset_of(&i) && k.is_subset_of(&j));
        let product = &build(&r, &a) * &build(&r, &b);
        prop_assert!(k.contains(&product));
    }
}
