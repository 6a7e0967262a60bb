//! Explicit coboundary witnesses: given `x` with `N_U(x) = 1` and a 1-cocycle
//! `β` on `U`, find `w` with `β(g) = (g − 1)w` for all `g ∈ U`.
//!
//! Every witness is checked before it is returned. Checking the generators of
//! `U` suffices: if `β` is a cocycle and `β(g) = (g − 1)w` on generators, the
//! cocycle law propagates the identity to all of `U`.

use crate::group::{Elem, Subgroup};
use crate::ncring::{CocycleOnSubgroup, FormalSum, NCPoly, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("N_U(r) does not vanish, so r is not a coboundary")]
    NormObstruction,
    #[error("compatibility equation fails: {0}")]
    CompatibilityFailure(String),
    #[error("witness verification failed: {0}")]
    VerificationFailure(String),
    #[error("nonzero cocycle on the trivial group")]
    NonzeroCocycleOnTrivialGroup,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `Σ_{k=1}^{n−1} (1 + σ + ⋯ + σ^{k−1})(x·σ^{−k}(r))`
fn cyclic_sum(sigma: Elem, n: usize, r: &NCPoly, x: &NCPoly) -> NCPoly {
    let grp = r.ctx().group().clone();
    let sinv = grp.inv(sigma);
    // regrouped as Σ_j σ^j(x) · Σ_{m=1}^{n−1−j} σ^{−m}(r)
    let mut w = NCPoly::zero(r.ctx());
    let mut tail = NCPoly::zero(r.ctx());
    let mut sm = 0;
    let mut shifted = Vec::with_capacity(n);
    for _ in 1..n {
        sm = grp.mul(sm, sinv);
        shifted.push(r.act(sm));
    }
    // tail_j = Σ_{m=1}^{n−1−j} σ^{−m}(r), built from the longest down
    let mut tails = vec![NCPoly::zero(r.ctx()); n.saturating_sub(1)];
    for j in (0..n.saturating_sub(1)).rev() {
        tail = &tail + &shifted[n - 2 - j];
        tails[j] = tail.clone();
    }
    let mut sj = 0;
    for t in tails.iter() {
        w = &w + &(&x.act(sj) * t);
        sj = grp.mul(sj, sigma);
    }
    w
}

fn same_context(a: &NCPoly, b: &NCPoly) -> Result<(), SolverError> {
    if a.ctx() != b.ctx() {
        return Err(RingError::MixedContext.into());
    }
    Ok(())
}

/// Witness for a cyclic `U = ⟨σ⟩` of any order `N`: returns `w` with
/// `(σ − 1)w = r`, hence `(σ^i − 1)w = (1 + ⋯ + σ^{i−1})(r)` for all `i`.
pub fn witness_cyclic(
    u: &Subgroup,
    sigma: Elem,
    r: &NCPoly,
    x: &NCPoly,
) -> Result<NCPoly, SolverError> {
    same_context(r, x)?;
    let grp = r.ctx().group();
    if grp.subgroup_generated(&[sigma]) != *u {
        return Err(SolverError::Precondition("σ does not generate U".into()));
    }
    if !x.is_norm_one(u) {
        return Err(SolverError::Precondition("N_U(x) ≠ 1".into()));
    }
    if !r.norm(u).is_zero_mod_ideal() {
        return Err(SolverError::NormObstruction);
    }
    let w = cyclic_sum(sigma, u.order(), r, x);
    if !(&(&w.act(sigma) - &w) - r).is_zero_mod_ideal() {
        return Err(SolverError::VerificationFailure("(σ − 1)w ≠ r".into()));
    }
    Ok(w)
}

/// Witness for `U = ⟨σ₁⟩ × ⟨σ₂⟩ ≅ C₂ × C₂` given `r = β(σ₁)`, `s = β(σ₂)`:
///
/// `w = (1+σ₂)(x)·σ₁(r) + (1+σ₁)(x)·σ₂(s) + (1+σ₁)(x)·(1+σ₂)(x)·σ₁(σ₂−1)(r)`
pub fn witness_klein(
    u: &Subgroup,
    s1: Elem,
    s2: Elem,
    r: &NCPoly,
    s: &NCPoly,
    x: &NCPoly,
) -> Result<NCPoly, SolverError> {
    same_context(r, x)?;
    same_context(s, x)?;
    let grp = r.ctx().group();
    let ok = u.order() == 4
        && grp.elem_order(s1) == 2
        && grp.elem_order(s2) == 2
        && s1 != s2
        && grp.mul(s1, s2) == grp.mul(s2, s1)
        && grp.subgroup_generated(&[s1, s2]) == *u;
    if !ok {
        return Err(SolverError::Precondition(
            "U must be ⟨σ₁, σ₂⟩ ≅ C₂ × C₂".into(),
        ));
    }
    if !x.is_norm_one(u) {
        return Err(SolverError::Precondition("N_U(x) ≠ 1".into()));
    }
    if !(r + &r.act(s1)).is_zero_mod_ideal() {
        return Err(SolverError::CompatibilityFailure("(1 + σ₁)(r) ≠ 0".into()));
    }
    // the cocycle law on σ₁σ₂ = σ₂σ₁ gives (σ₂ − 1)(r) = (σ₁ − 1)(s)
    if !(&(&(&r.act(s2) - r) - &s.act(s1)) + s).is_zero_mod_ideal() {
        return Err(SolverError::CompatibilityFailure(
            "(σ₂ − 1)(r) ≠ (σ₁ − 1)(s)".into(),
        ));
    }
    if !(s + &s.act(s2)).is_zero_mod_ideal() {
        return Err(SolverError::CompatibilityFailure("(1 + σ₂)(s) ≠ 0".into()));
    }
    let x1 = x + &x.act(s2);
    let x2 = x + &x.act(s1);
    let d = (&r.act(s2) - r).act(s1);
    let w = &(&(&x1 * &r.act(s1)) + &(&x2 * &s.act(s2))) + &(&(&x2 * &x1) * &d);
    if !(&(&w.act(s1) - &w) - r).is_zero_mod_ideal() {
        return Err(SolverError::VerificationFailure("(σ₁ − 1)w ≠ r".into()));
    }
    if !(&(&w.act(s2) - &w) - s).is_zero_mod_ideal() {
        return Err(SolverError::VerificationFailure("(σ₂ − 1)w ≠ s".into()));
    }
    Ok(w)
}

/// The Klein witness expanded term by term, without collecting:
/// `(1+σ₂)(x)·σ₁(r) + (1+σ₁)(x)·σ₂(s) + (1+σ₁)(x)·(1+σ₂)(x)·σ₁((σ₂−1)(r))`.
/// Collecting it gives the witness of [`witness_klein`] for the same inputs.
pub fn witness_klein_formal(
    s1: Elem,
    s2: Elem,
    r: &FormalSum,
    s: &FormalSum,
    x: &FormalSum,
) -> Result<FormalSum, SolverError> {
    let x1 = x.add(&x.act(s2))?;
    let x2 = x.add(&x.act(s1))?;
    let d = r.act(s2).sub(r)?.act(s1);
    Ok(x1
        .mul(&r.act(s1))?
        .add(&x2.mul(&s.act(s2))?)?
        .add(&x2.mul(&x1)?.mul(&d)?)?)
}

/// Least index-`p` subgroup of `U` (normal, since `U` is a `p`-group) and
/// the least element of `U` outside it.
fn split(u: &Subgroup, grp: &crate::group::FiniteGroup, p: usize) -> (Subgroup, Elem) {
    let target = u.order() / p;
    let sub = grp
        .all_subgroups()
        .iter()
        .find(|h| h.order() == target && h.is_subset_of(u))
        .expect("a p-group has a subgroup of index p")
        .clone();
    let sigma = *u.members().iter().find(|&&g| !sub.contains(g)).unwrap();
    (sub, sigma)
}

fn is_cyclic(u: &Subgroup, grp: &crate::group::FiniteGroup) -> Option<Elem> {
    u.members()
        .iter()
        .copied()
        .find(|&g| grp.elem_order(g) == u.order())
}

fn recurse(
    u: &Subgroup,
    beta: &dyn Fn(Elem) -> NCPoly,
    x: &NCPoly,
    depth: u32,
    max_depth: u32,
) -> Result<NCPoly, SolverError> {
    assert!(depth <= max_depth, "recursion deeper than log_p |U|");
    let ctx = x.ctx();
    let grp = ctx.group().clone();
    if u.order() == 1 {
        if !beta(0).is_zero_mod_ideal() {
            return Err(SolverError::NonzeroCocycleOnTrivialGroup);
        }
        return Ok(NCPoly::zero(ctx));
    }
    if let Some(sigma) = is_cyclic(u, &grp) {
        return Ok(cyclic_sum(sigma, u.order(), &beta(sigma), x));
    }
    let p = crate::group::prime_power_base(u.order()).expect("U is a p-group");
    let (sub, sigma) = split(u, &grp, p);
    let x1 = x.geometric(sigma, p);
    let w1 = recurse(&sub, beta, &x1, depth + 1, max_depth)?;
    let s1 = &beta(sigma) - &(&w1.act(sigma) - &w1);
    let x2 = x.norm(&sub);
    let w2 = cyclic_sum(sigma, p, &s1, &x2);
    Ok(&w1 + &w2)
}

/// Recursive witness for any `p`-group `U`, split along the least subgroup
/// `U′` of index `p` and the least `σ ∉ U′`:
/// `w₁ = witness(U′, β|_{U′}, (1 + ⋯ + σ^{p−1})(x))`,
/// `s′ = β(σ) − (σ − 1)w₁`, `w₂` from the order-`p` cyclic formula with
/// `x″ = N_{U′}(x)` and `s′`, and `w = w₁ + w₂`.
pub fn witness(beta: &CocycleOnSubgroup, x: &NCPoly) -> Result<NCPoly, SolverError> {
    let ctx = beta.ctx();
    if x.ctx() != ctx {
        return Err(RingError::MixedContext.into());
    }
    let grp = ctx.group().clone();
    let u = beta.subgroup().clone();
    if u.order() > 1 && crate::group::prime_power_base(u.order()).is_none() {
        return Err(SolverError::Precondition("U is not a p-group".into()));
    }
    if !x.is_norm_one(&u) {
        return Err(SolverError::Precondition("N_U(x) ≠ 1".into()));
    }
    if !beta.validate() {
        return Err(SolverError::Precondition("β is not a 1-cocycle".into()));
    }
    let max_depth = crate::group::factorize(u.order())
        .first()
        .map_or(0, |f| f.1);
    let w = recurse(&u, &|g| beta.value(g).clone(), x, 0, max_depth)?;
    let gens = grp
        .subgroup_from_members(u.members())
        .expect("U is a subgroup")
        .generators()
        .to_vec();
    if u.order() == 1 {
        return Ok(w);
    }
    for g in gens {
        if !(&(&w.act(g) - &w) - beta.value(g)).is_zero_mod_ideal() {
            return Err(SolverError::VerificationFailure(format!(
                "β({}) ≠ ({} − 1)w",
                grp.name(g),
                grp.name(g)
            )));
        }
    }
    Ok(w)
}
