use crate::group::{Elem, Subgroup};

use super::{Ctx, GroupRingElement, NCPoly, RingError};

/// A map `β : U → R`, stored by position in the member list of `U`.
#[derive(Clone, Debug)]
pub struct CocycleOnSubgroup {
    ctx: Ctx,
    subgroup: Subgroup,
    values: Vec<NCPoly>,
}

impl CocycleOnSubgroup {
    pub fn new(ctx: &Ctx, subgroup: &Subgroup, values: Vec<NCPoly>) -> Result<Self, RingError> {
        if values.len() != subgroup.order() {
            return Err(RingError::ContextMismatch(
                "one value per element of U".into(),
            ));
        }
        if values.iter().any(|v| v.ctx() != ctx) {
            return Err(RingError::MixedContext);
        }
        Ok(CocycleOnSubgroup {
            ctx: ctx.clone(),
            subgroup: subgroup.clone(),
            values,
        })
    }

    pub fn from_fn(
        ctx: &Ctx,
        subgroup: &Subgroup,
        f: impl Fn(Elem) -> NCPoly,
    ) -> Result<Self, RingError> {
        let values = subgroup.members().iter().map(|&g| f(g)).collect();
        Self::new(ctx, subgroup, values)
    }

    /// `δ(v)(g) = (g − 1)v`
    pub fn coboundary(ctx: &Ctx, subgroup: &Subgroup, v: &NCPoly) -> Self {
        Self::from_fn(ctx, subgroup, |g| &v.act(g) - v).expect("same context")
    }

    pub fn zero(ctx: &Ctx, subgroup: &Subgroup) -> Self {
        Self::from_fn(ctx, subgroup, |_| NCPoly::zero(ctx)).expect("same context")
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn value(&self, g: Elem) -> &NCPoly {
        &self.values[self.subgroup.position(g).expect("element of U")]
    }

    /// The restriction to a subgroup of `U`.
    pub fn restrict(&self, v: &Subgroup) -> Self {
        assert!(v.is_subset_of(&self.subgroup));
        Self::from_fn(&self.ctx, v, |g| self.value(g).clone()).expect("same context")
    }

    /// Whether every value is zero in the universal ring.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(NCPoly::is_zero_mod_ideal)
    }

    /// The cocycle law `β(gh) = β(g) + gβ(h)` on all pairs, modulo the ideal.
    pub fn validate(&self) -> bool {
        let grp = self.ctx.group();
        let m = self.subgroup.members();
        m.iter().all(|&g| {
            m.iter().all(|&h| {
                let lhs = self.value(grp.mul(g, h));
                let rhs = self.value(g) + &self.value(h).act(g);
                (lhs - &rhs).is_zero_mod_ideal()
            })
        })
    }

    /// Standard consequences of the cocycle law: `β(1) = 0`,
    /// `β(g^i) = (1 + ⋯ + g^{i−1})β(g)`, `(1 + ⋯ + g^{N−1})β(g) = 0`,
    /// `β(g⁻¹) = −g⁻¹β(g)`, and `(σ − 1)β(τ) + (1 + στ)β(σ) = 0` whenever
    /// `τσ = σ⁻¹τ`.
    pub fn identities_check(&self) -> bool {
        let grp = self.ctx.group();
        let m = self.subgroup.members();
        if !self.value(0).is_zero_mod_ideal() {
            return false;
        }
        for &g in m {
            let n = grp.elem_order(g);
            let bg = self.value(g);
            let mut gi = g;
            for i in 2..=n {
                gi = grp.mul(gi, g);
                let lhs = self.value(gi);
                if !(lhs - &bg.geometric(g, i)).is_zero_mod_ideal() {
                    return false;
                }
            }
            if !bg.geometric(g, n).is_zero_mod_ideal() {
                return false;
            }
            let gi = grp.inv(g);
            if !(self.value(gi) + &bg.act(gi)).is_zero_mod_ideal() {
                return false;
            }
        }
        for &s in m {
            for &t in m {
                if grp.mul(t, s) != grp.mul(grp.inv(s), t) {
                    continue;
                }
                let one = GroupRingElement::one(grp);
                let a = &GroupRingElement::basis(grp, s) - &one;
                let b = &one + &GroupRingElement::basis(grp, grp.mul(s, t));
                let e = self.value(t).apply(&a) + self.value(s).apply(&b);
                if !e.is_zero_mod_ideal() {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `β(g) = (g − 1)w` for every `g ∈ U`.
    pub fn is_coboundary_of(&self, w: &NCPoly) -> bool {
        self.subgroup
            .members()
            .iter()
            .all(|&g| (self.value(g) - &(&w.act(g) - w)).is_zero_mod_ideal())
    }
}
