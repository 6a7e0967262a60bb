//! The universal ring of a context, the integral group ring, the finite
//! model of `Hom(Z[G], R)` elements built from `φ`, and 1-cocycles.

mod belement;
mod cocycle;
mod context;
mod formal;
mod group_ring;
pub mod io;
pub mod latex;
mod poly;
mod word;

pub use belement::{BContext, BElement};
pub use cocycle::CocycleOnSubgroup;
pub use context::{Ctx, RingContext};
pub use formal::FormalSum;
pub use group_ring::{identity_check, GroupRingElement};
pub use poly::NCPoly;
pub use word::{Sym, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("operands belong to different ring contexts")]
    MixedContext,
    #[error("unknown variable {0}")]
    UnknownVariable(usize),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("the phi part does not vanish, so the value is not a ring element")]
    NonConstantPhiPart,
    #[error("bad quotient: {0}")]
    BadQuotient(String),
    #[error("malformed formula file: {0}")]
    Format(String),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{build_group, FiniteGroup};
    use crate::Int;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    /// C4 with the variable on its subgroup of order 2.
    fn c4_ctx() -> Ctx {
        let g = grp("C4");
        let e = g.subgroup_generated(&[2]);
        RingContext::new(g, vec![e]).unwrap()
    }

    fn palfy(ctx: &Ctx) -> NCPoly {
        let x = NCPoly::var(ctx, 0);
        let sx = NCPoly::sym(ctx, 1, 0);
        &(&(&x * &sx) + &(&(&x * &sx) * &x)) - &(&(&x * &x) * &sx)
    }

    #[test]
    fn coset_sums_reduce_to_one() {
        let g = grp("Q8");
        let e = g.subgroup_generated(&[2]);
        let ctx = RingContext::new(g.clone(), vec![e.clone()]).unwrap();
        for r in g.elements() {
            let sum = NCPoly::sym(&ctx, r, 0).norm(&e);
            // N_E applied to r(x) is the sum over the coset rE
            assert!((sum - NCPoly::one(&ctx)).is_zero_mod_ideal());
        }
    }

    #[test]
    fn normal_form_fixes_kept_words() {
        let ctx = c4_ctx();
        // kept generators on C4 with E = {e, s2}: e(x) and s(x)
        let p = palfy(&ctx);
        assert!(p.is_normal_form());
        assert_eq!(p.normal_form(), p);
    }

    #[test]
    fn palfy_is_norm_one() {
        let ctx = c4_ctx();
        let p = palfy(&ctx);
        assert_eq!(p.stats(), (3, 3));
        assert!(p.is_norm_one(&ctx.group().whole()));
        assert!(!NCPoly::zero(&ctx).is_norm_one(&ctx.group().whole()));
        assert!(!p.with_term_negated(0).is_norm_one(&ctx.group().whole()));
    }

    #[test]
    fn elementary_variable_is_norm_one_and_norm_counts_cosets() {
        let g = grp("D8");
        for e in g.elementary_abelian_subgroups() {
            let ctx = RingContext::new(g.clone(), vec![e.clone()]).unwrap();
            let x = NCPoly::var(&ctx, 0);
            assert!(x.is_norm_one(&e));
            let n = x.norm(&g.whole()).normal_form();
            assert_eq!(n, NCPoly::constant(&ctx, (g.order() / e.order()) as i64));
        }
    }

    #[test]
    fn s3_sylow_combination() {
        let g = grp("S3");
        let es = g.subgroup_generated(&[g.element_by_name("t").unwrap()]);
        let et = g.subgroup_generated(&[g.element_by_name("s").unwrap()]);
        let ctx = RingContext::new(g.clone(), vec![es, et]).unwrap();
        let phi = &NCPoly::var(&ctx, 0) - &NCPoly::var(&ctx, 1);
        assert!(phi.is_norm_one(&g.whole()));
    }

    #[test]
    fn hand_expansion_and_mixed_contexts() {
        let ctx = c4_ctx();
        let x = NCPoly::var(&ctx, 0);
        let sx = NCPoly::sym(&ctx, 1, 0);
        let p = &(&x + &sx) * &x;
        assert_eq!(p.len(), 2);
        assert_eq!(&p + &NCPoly::zero(&ctx), p);
        assert_eq!(&NCPoly::one(&ctx) * &NCPoly::one(&ctx), NCPoly::one(&ctx));
        let other = RingContext::new(grp("C2"), vec![grp("C2").whole()]).unwrap();
        assert_eq!(
            x.try_add(&NCPoly::var(&other, 0)),
            Err(RingError::MixedContext)
        );
    }

    #[test]
    fn action_composes() {
        let g = grp("Q8");
        let ctx = RingContext::new(g.clone(), vec![g.subgroup_generated(&[1])]).unwrap();
        let p = &(&NCPoly::var(&ctx, 0) * &NCPoly::sym(&ctx, 5, 0)) - &NCPoly::sym(&ctx, 3, 0);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(p.act(a).act(b), p.act(g.mul(b, a)));
            }
        }
        assert_eq!(NCPoly::one(&ctx).act(3), NCPoly::one(&ctx));
    }

    #[test]
    fn substitution_basics() {
        let ctx = c4_ctx();
        let x = NCPoly::var(&ctx, 0);
        assert_eq!(
            x.substitute(0, &NCPoly::one(&ctx)).unwrap(),
            NCPoly::one(&ctx)
        );
        let p = palfy(&ctx);
        assert_eq!(p.substitute(0, &x).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let ctx = c4_ctx();
        let p = &palfy(&ctx).scale(&Int::from(-7)) + &NCPoly::constant(&ctx, 3);
        let text = io::to_json(&p).unwrap();
        let back = io::from_json(&text).unwrap();
        assert_eq!(back.terms(), p.terms());
        assert_eq!(io::to_json(&back).unwrap(), text);
        assert!(io::from_json(&text.replace("\"c\": \"3\"", "\"c\": \"03\"")).is_err());
    }

    #[test]
    fn latex_uses_sigma_powers() {
        let ctx = c4_ctx();
        assert_eq!(
            latex::to_latex(&palfy(&ctx)),
            "x\\sigma(x) - x^{2}\\sigma(x) + x\\sigma(x)x"
        );
    }
}
