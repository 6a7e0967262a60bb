use crate::group::Elem;
use crate::Int;

use super::{Ctx, GroupRingElement, NCPoly, RingError, Word};

/// A sum of monomials as produced by expanding an expression term by term:
/// like terms are never combined and zero products are kept. Used to count
/// the size of a formula before collection.
#[derive(Clone, Debug)]
pub struct FormalSum {
    ctx: Ctx,
    terms: Vec<(Int, Word)>,
}

impl FormalSum {
    pub fn zero(ctx: &Ctx) -> FormalSum {
        FormalSum {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    /// Each collected term of `p` becomes one formal term.
    pub fn from_poly(p: &NCPoly) -> FormalSum {
        FormalSum {
            ctx: p.ctx().clone(),
            terms: p
                .terms()
                .iter()
                .map(|(w, c)| (c.clone(), w.clone()))
                .collect(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Int, Word)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    pub fn stats(&self) -> (usize, usize) {
        (self.len(), self.degree())
    }

    fn check(&self, other: &FormalSum) -> Result<(), RingError> {
        if self.ctx != other.ctx {
            return Err(RingError::MixedContext);
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum, RingError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(FormalSum {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> FormalSum {
        FormalSum {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum, RingError> {
        self.add(&other.neg())
    }

    /// Every pair of terms, in order.
    pub fn mul(&self, other: &FormalSum) -> Result<FormalSum, RingError> {
        self.check(other)?;
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                terms.push((c1 * c2, w1.concat(w2)));
            }
        }
        Ok(FormalSum {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn act(&self, g: Elem) -> FormalSum {
        let grp = self.ctx.group();
        FormalSum {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, w)| {
                    (
                        c.clone(),
                        w.syms()
                            .iter()
                            .map(|&s| s.with_elem(grp.mul(g, s.elem())))
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// `Σ_g A[g]·g(self)`, one block of terms per element in the support of `A`.
    pub fn apply(&self, a: &GroupRingElement) -> FormalSum {
        let mut terms = Vec::new();
        for (g, k) in a.iter() {
            for (c, w) in self.act(g).terms {
                terms.push((&c * k, w));
            }
        }
        FormalSum {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Ring map into `target`, `g(x_v) ↦ act(elem_map[g], images[v])`,
    /// expanded term by term.
    pub fn substitute_into(
        &self,
        target: &Ctx,
        elem_map: &[Elem],
        images: &[FormalSum],
    ) -> Result<FormalSum, RingError> {
        if images.len() != self.ctx.num_vars() || elem_map.len() != self.ctx.group().order() {
            return Err(RingError::ContextMismatch(
                "one image per variable and per element required".into(),
            ));
        }
        if images.iter().any(|p| &p.ctx != target)
            || elem_map.iter().any(|&g| g >= target.group().order())
        {
            return Err(RingError::ContextMismatch(
                "images must live in the target context".into(),
            ));
        }
        let mut out = FormalSum::zero(target);
        for (c, w) in &self.terms {
            let mut prod = FormalSum {
                ctx: target.clone(),
                terms: vec![(c.clone(), Word::empty())],
            };
            for &s in w.syms() {
                prod = prod.mul(&images[s.var()].act(elem_map[s.elem()]))?;
            }
            out.terms.extend(prod.terms);
        }
        Ok(out)
    }

    /// Combines like terms.
    pub fn collect(&self) -> NCPoly {
        NCPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(c, w)| (c.clone(), w.clone())),
        )
        .expect("terms come from the same context")
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::build_group;
    use crate::ncring::RingContext;

    #[test]
    fn counts_before_collection() {
        let g = Arc::new(build_group(&"C4".parse().unwrap()).unwrap());
        let e = g.subgroup_generated(&[2]);
        let ctx = RingContext::new(g.clone(), vec![e]).unwrap();
        let x = FormalSum::from_poly(&NCPoly::var(&ctx, 0));
        let one_plus_s = GroupRingElement::from_pairs(&g, [(0, Int::ONE), (1, Int::ONE)]);
        let a = x.apply(&one_plus_s);
        let d = a.sub(&a).unwrap();
        assert_eq!(d.stats(), (4, 1));
        assert!(d.collect().is_zero());
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.stats(), (4, 2));
        let p = NCPoly::var(&ctx, 0).apply(&one_plus_s);
        assert_eq!(sq.collect(), &p * &p);
    }
}
