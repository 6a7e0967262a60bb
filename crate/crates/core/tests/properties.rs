use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use normforge::group::build_group;
use normforge::matrix_oracle::{evaluate, perturbed_assignment};
use normforge::ncring::{Ctx, NCPoly, RingContext, Sym, Word};
use normforge::Int;

fn d8_ctx() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(|| {
        let g = Arc::new(build_group(&"D8".parse().unwrap()).unwrap());
        let (s, t) = (g.generators()[0], g.generators()[1]);
        let klein = g.subgroup_generated(&[g.pow(s, 2), t]);
        let center = g.subgroup_generated(&[g.pow(s, 2)]);
        RingContext::new(g, vec![klein, center]).unwrap()
    })
}

fn poly() -> impl Strategy<Value = NCPoly> {
    let sym = (0..8usize, 0..2usize).prop_map(|(g, v)| Sym::new(g, v));
    let term = (-3i64..=3, prop::collection::vec(sym, 0..=3));
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let terms: Vec<_> = ts
            .into_iter()
            .map(|(c, syms)| (Int::from(c), Word::from_syms(&syms)))
            .collect();
        NCPoly::from_terms(d8_ctx(), terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative_mod_ideal(p in poly(), q in poly(), r in poly()) {
        let lhs = &(&p * &q) * &r;
        let rhs = &p * &(&q * &r);
        prop_assert!((&lhs - &rhs).is_zero_mod_ideal());
    }

    #[test]
    fn multiplication_distributes(p in poly(), q in poly(), r in poly()) {
        let lhs = (&p * &(&q + &r)).normal_form();
        let rhs = (&(&p * &q) + &(&p * &r)).normal_form();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_ring_map(p in poly(), q in poly(), g in 0..8usize) {
        prop_assert_eq!((&p * &q).act(g), &p.act(g) * &q.act(g));
        prop_assert_eq!((&p + &q).act(g), &p.act(g) + &q.act(g));
    }

    #[test]
    fn evaluation_respects_the_ideal(p in poly(), q in poly()) {
        let a = perturbed_assignment(&p, 7);
        let prod = evaluate(&(&p * &q), &a).unwrap();
        let direct = evaluate(&p, &a).unwrap().mul(&evaluate(&q, &a).unwrap()).unwrap();
        prop_assert_eq!(&prod, &direct);
        prop_assert_eq!(evaluate(&p.normal_form(), &a).unwrap(), evaluate(&p, &a).unwrap());
    }
}
