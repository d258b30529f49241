use proptest::prelude::*;
use tfp_core::format::infer_ring;
use tfp_core::groebner::{buchberger, is_groebner};
use tfp_core::poly::{parse_polynomial, Polynomial};
use tfp_core::tfp::{self, Side};
use tfp_core::verify::random_instance;
use tfp_core::{ComputeLimits, Monomial, Poly, Rational, Ring, RingRef, TermOrder, Var};

fn ring(n: usize) -> RingRef {
    Ring::new((1..=n as u32).map(|i| Var::new("x", [i])).collect()).unwrap()
}

fn poly(r: &RingRef, terms: &[(Vec<u32>, i64, i64)]) -> Poly {
    Polynomial::from_terms(
        r,
        terms.iter().map(|(e, a, b)| (Monomial::from_exponents(e.clone()), Rational::new((*a).into(), (*b).into()))),
    )
}

fn terms(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), -20i64..20, 1i64..6), 0..6)
}

proptest! {
    #[test]
    fn text_round_trip(ts in terms(4)) {
        let r = ring(4);
        let p = poly(&r, &ts);
        prop_assert_eq!(&parse_polynomial::<Rational>(&p.to_string(), &r).unwrap(), &p);
        let shown = p.display_in(&TermOrder::grevlex(4));
        prop_assert_eq!(parse_polynomial::<Rational>(&shown, &r).unwrap(), p);
    }

    #[test]
    fn inferred_ring_parses(ts in terms(3)) {
        let p = poly(&ring(3), &ts);
        let text = p.to_string();
        let r = infer_ring(&[&text]).unwrap();
        let q = parse_polynomial::<Rational>(&text, &r).unwrap();
        prop_assert_eq!(q.terms().len(), p.terms().len());
    }

    #[test]
    fn quadrics_form_a_groebner_basis(s in prop::collection::vec(1u32..5, 1..4), t in prop::collection::vec(1u32..5, 1..4)) {
        let r = s.len().min(t.len());
        let (s, t) = (s[..r].to_vec(), t[..r].to_vec());
        let columns = (0..r).map(|c| (0..r).map(|k| (k == c) as i64).collect()).collect();
        let spec = tfp::validate_spec(columns, s.clone(), t.clone()).unwrap();
        let quad: Vec<Poly> = tfp::quad_b(&spec);
        let choose2 = |n: u32| (n * n.saturating_sub(1) / 2) as usize;
        let expected: usize = s.iter().zip(&t).map(|(&a, &b)| choose2(a) * choose2(b)).sum();
        prop_assert_eq!(quad.len(), expected);
        prop_assert!(is_groebner(&quad, &tfp::quad_order(&spec)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_generators_map_into_the_sum(seed in 0u64..10_000) {
        let inst = random_instance(seed).unwrap();
        let spec = &inst.spec;
        let limits = ComputeLimits::unlimited();
        let gens = tfp::tfp_generators(&inst.i, &inst.j, spec).unwrap();
        let sum: Vec<Poly> = inst.i.iter().map(|p| spec.to_xy(p, Side::X))
            .chain(inst.j.iter().map(|p| spec.to_xy(p, Side::Y))).collect();
        let phi = tfp::phi_b::<Rational>(spec);
        let xy = phi.target();
        let gb = buchberger(xy, &sum, &TermOrder::grevlex(xy.len()), &limits).unwrap();
        for g in &gens {
            prop_assert!(gb.contains(&phi.apply(g)), "seed {seed}: {g}");
        }
    }

    #[test]
    fn basis_ignores_generator_order(seed in 0u64..10_000) {
        let inst = random_instance(seed).unwrap();
        let limits = ComputeLimits::unlimited();
        let order = inst.x_order();
        let ring = inst.spec.x_ring();
        let forward = buchberger(ring, &inst.i, &order, &limits).unwrap();
        let reversed: Vec<Poly> = inst.i.iter().rev().cloned().collect();
        let backward = buchberger(ring, &reversed, &order, &limits).unwrap();
        prop_assert!(forward.is_reduced());
        prop_assert_eq!(forward.generators(), backward.generators());
    }
}
