use std::fmt;

use crate::group::{Elem, FiniteGroup};
use crate::ncring::{BContext, BElement, CocycleOnSubgroup, GroupRingElement, NCPoly, RingError};
use crate::Int;

use super::{MethodError, Presentation};

/// `Σ_i lhs[i]·b(σ_i) = rhs·1`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormEquation {
    pub lhs: Vec<GroupRingElement>,
    pub rhs: Int,
}

impl NormEquation {
    pub fn display<'a>(
        &'a self,
        group: &'a FiniteGroup,
        pres: &'a Presentation,
    ) -> impl fmt::Display + 'a {
        struct D<'a>(&'a NormEquation, &'a FiniteGroup, &'a Presentation);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (i, a) in self.0.lhs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({a})·b({})", self.1.name(self.2.generators[i]))?;
                }
                if first {
                    write!(f, "0")?;
                }
                write!(f, " = {}", self.0.rhs)
            }
        }
        D(self, group, pres)
    }
}

/// `α(g) = Σ_{j<k} σ^j(φ)` where `gU = σ^k U`, for every element `g`.
pub fn build_alpha(bctx: &BContext) -> Vec<BElement> {
    let grp = bctx.ctx().group();
    grp.elements()
        .map(|g| {
            let k = bctx.class_of(g);
            let mut b = bctx.zero();
            for j in 0..k {
                b = bctx.add(&b, &bctx.phi_translate(j));
            }
            b
        })
        .collect()
}

/// Expands `β(word) = Σ_t (prefix_t)·β(letter_t)` with
/// `β(letter) = α(letter) − b(letter)`: returns the `b`-coefficients (with
/// the sign of `−b`) and the α-part.
fn expand_word(
    bctx: &BContext,
    pres: &Presentation,
    alpha: &[BElement],
    word: &[usize],
) -> (Vec<GroupRingElement>, BElement) {
    let grp = bctx.ctx().group();
    let mut coeffs = vec![GroupRingElement::zero(grp); pres.generators.len()];
    let mut a = bctx.zero();
    let mut prefix: Elem = 0;
    for &l in word {
        let s = pres.generators[l];
        coeffs[l] = &coeffs[l] + &GroupRingElement::basis(grp, prefix);
        a = bctx.add(&a, &bctx.act(prefix, &alpha[s]));
        prefix = grp.mul(prefix, s);
    }
    (coeffs, a)
}

/// The system obtained by expanding each relation `w₁ = w₂` through the
/// cocycle rule for `β = α − b`.
pub fn build_system(
    bctx: &BContext,
    pres: &Presentation,
) -> Result<Vec<NormEquation>, MethodError> {
    let alpha = build_alpha(bctx);
    let mut out = Vec::with_capacity(pres.relations.len());
    for (w1, w2) in &pres.relations {
        let (c1, a1) = expand_word(bctx, pres, &alpha, w1);
        let (c2, a2) = expand_word(bctx, pres, &alpha, w2);
        // β(w₁) = β(w₂)  ⇔  Σ (c₁ − c₂)·b = α(w₁) − α(w₂)
        let lhs = c1.iter().zip(&c2).map(|(x, y)| x - y).collect();
        let ring = bctx.coerce(&bctx.sub(&a1, &a2))?;
        if ring.terms().iter().any(|(w, _)| !w.is_empty()) {
            return Err(RingError::NonConstantPhiPart.into());
        }
        out.push(NormEquation {
            lhs,
            rhs: ring.constant_term(),
        });
    }
    Ok(out)
}

/// The residual `Σ_i A_i(b_i) − c` of one equation.
pub fn residual(eq: &NormEquation, b_values: &[NCPoly]) -> NCPoly {
    let ctx = b_values[0].ctx();
    let mut acc = NCPoly::constant(ctx, -&eq.rhs);
    for (a, b) in eq.lhs.iter().zip(b_values) {
        acc = &acc + &b.apply(a);
    }
    acc
}

/// Whether every equation holds in the universal ring.
pub fn check_solution(system: &[NormEquation], b_values: &[NCPoly]) -> bool {
    system
        .iter()
        .all(|eq| eq.lhs.len() == b_values.len() && residual(eq, b_values).is_zero_mod_ideal())
}

/// `b|_U = −β|_U`, expanding each element of `U` along its shortlex word in
/// the presentation generators. The φ-parts cancel because `α` vanishes on
/// `U`; the cocycle law is checked before returning.
pub fn extend_b(
    bctx: &BContext,
    pres: &Presentation,
    b_values: &[NCPoly],
) -> Result<CocycleOnSubgroup, MethodError> {
    let ctx = bctx.ctx();
    let grp = ctx.group().clone();
    if b_values.len() != pres.generators.len() {
        return Err(MethodError::InvalidPresentation(
            "one value per generator".into(),
        ));
    }
    let alpha = build_alpha(bctx);
    let words = grp.canonical_words(&pres.generators);
    let u = bctx.subgroup().clone();
    let mut values = Vec::with_capacity(u.order());
    for &g in u.members() {
        let word = words[g].as_ref().expect("generators generate");
        let mut beta = bctx.zero();
        let mut prefix: Elem = 0;
        for &l in word {
            let s = pres.generators[l];
            let term = bctx.sub(&alpha[s], &bctx.from_ring(b_values[l].clone()));
            beta = bctx.add(&beta, &bctx.act(prefix, &term));
            prefix = grp.mul(prefix, s);
        }
        values.push(-bctx.coerce(&beta)?);
    }
    let c = CocycleOnSubgroup::new(ctx, &u, values)?;
    if !c.validate() {
        return Err(MethodError::CocycleLawFailure);
    }
    Ok(c)
}

/// `a = b(σ) + (1 − σ)(w)` and `y = a·x`.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub a: NCPoly,
    pub y: NCPoly,
    /// whether `N_G(y) = 1` was also checked directly, on top of the
    /// invariance and quotient-norm checks that already imply it
    pub direct_check: bool,
}

/// Assembles `y = a·x`. Always checks `N_U(x) = 1`, `u(a) = a` for the
/// generators of `U` and `(1 + σ + ⋯ + σ^{p−1})(a) = 1`; together these give
/// `N_G(ax) = N_{G/U}(a·N_U(x)) = 1`. With `direct` the norm of `y` over
/// `G` is also reduced explicitly.
pub fn assemble(
    bctx: &BContext,
    b_sigma: &NCPoly,
    w: &NCPoly,
    x: &NCPoly,
    direct: bool,
) -> Result<Assembly, MethodError> {
    let ctx = bctx.ctx();
    let grp = ctx.group().clone();
    let sigma = bctx.sigma();
    let u = bctx.subgroup();
    if !x.is_norm_one(u) {
        return Err(MethodError::NormFailure("N_U(x) ≠ 1".into()));
    }
    let a = &(b_sigma + w) - &w.act(sigma);
    let gens = grp
        .subgroup_from_members(u.members())?
        .generators()
        .to_vec();
    for g in gens {
        if !(&a.act(g) - &a).is_zero_mod_ideal() {
            return Err(MethodError::InvarianceFailure(grp.name(g).to_string()));
        }
    }
    if !a.geometric(sigma, bctx.index()).normal_form().is_one() {
        return Err(MethodError::NormFailure("N_{G/U}(a) ≠ 1".into()));
    }
    let y = &a * x;
    if direct && !y.is_norm_one(&grp.whole()) {
        return Err(MethodError::NormFailure("N_G(y) ≠ 1".into()));
    }
    Ok(Assembly {
        a,
        y,
        direct_check: direct,
    })
}
