use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::group::{
    build_group, direct_product, factorize, Classification, Elem, FiniteGroup, GroupError,
    GroupSpec, Quotient, Subgroup,
};
use crate::ncring::{Ctx, FormalSum, NCPoly, RingContext, RingError};
use crate::Int;

use super::closed::{catalog_group, cp2_formula, palfy_c4};
use super::families::{dihedral_formula, g27_formula, quaternion_formula};
use super::{verify_if_cheap, FormulaError};

fn var_name(g: &FiniteGroup, h: &Subgroup) -> String {
    let gens: Vec<&str> = h.generators().iter().map(|&x| g.name(x)).collect();
    format!("x_<{}>", gens.join(","))
}

/// One variable `x_E` per nontrivial elementary abelian subgroup, in
/// subgroup order.
pub fn elementary_context(group: Arc<FiniteGroup>) -> Result<Ctx, FormulaError> {
    let subs: Vec<Subgroup> = group
        .elementary_abelian_subgroups()
        .into_iter()
        .filter(|h| h.order() > 1)
        .collect();
    let names = subs.iter().map(|h| var_name(&group, h)).collect();
    Ok(RingContext::with_names(group, subs, names)?)
}

fn var_of(ctx: &Ctx, h: &Subgroup) -> Result<usize, FormulaError> {
    ctx.find_var(h).ok_or_else(|| {
        FormulaError::Precondition("context has no variable for the subgroup".into())
    })
}

/// From a formula for `S` to one for `U ≤ S`: the sum of `r(Φ)` over
/// representatives of the right cosets `U·r` in `S`.
pub fn restrict_formula(phi: &NCPoly, s: &Subgroup, u: &Subgroup) -> Result<NCPoly, FormulaError> {
    if !u.is_subset_of(s) {
        return Err(FormulaError::Precondition("U is not contained in S".into()));
    }
    let g = phi.ctx().group();
    let mut covered = vec![false; g.order()];
    let mut out = NCPoly::zero(phi.ctx());
    for &r in s.members() {
        if covered[r] {
            continue;
        }
        for &x in u.members() {
            covered[g.mul(x, r)] = true;
        }
        out = &out + &phi.act(r);
    }
    verify_if_cheap(&out, u, "restricted formula")?;
    Ok(out)
}

/// `g(Φ)`, a formula for `gHg⁻¹` when `Φ` is one for `H`.
pub fn conjugate_formula(phi: &NCPoly, h: &Subgroup, g: Elem) -> Result<NCPoly, FormulaError> {
    let grp = phi.ctx().group();
    let out = phi.act(g);
    verify_if_cheap(&out, &grp.conjugate_subgroup(g, h), "conjugated formula")?;
    Ok(out)
}

/// Integers `d` with `Σ d_i a_i = 1`. Pairs `(d₀, d_i)` are moved along
/// the kernel direction to minimize `|d₀| + |d_i|`, preferring `d₀ > 0` on
/// ties, so the result is deterministic.
pub fn bezout(a: &[i64]) -> Option<Vec<i64>> {
    let (&first, rest) = a.split_first()?;
    let mut d = vec![0i64; a.len()];
    d[0] = 1;
    let mut g = first;
    for (i, &ai) in rest.iter().enumerate() {
        let e = g.extended_gcd(&ai);
        for c in d.iter_mut().take(i + 1) {
            *c *= e.x;
        }
        d[i + 1] = e.y;
        g = e.gcd;
    }
    if g != 1 {
        return None;
    }
    for i in 1..a.len() {
        let gi = a[0].gcd(&a[i]);
        let (s0, si) = (a[i] / gi, -a[0] / gi);
        let cost = |k: i64| (d[0] + k * s0).abs() + (d[i] + k * si).abs();
        // the optimum is within one step of the real minimizer of |d₀ + k s₀|
        let k0 = -((d[0] as f64) / (s0 as f64)).round() as i64;
        let best = (k0 - 2..=k0 + 2)
            .chain(std::iter::once(
                -((d[i] as f64) / (si as f64)).round() as i64
            ))
            .min_by_key(|&k| (cost(k), (d[0] + k * s0 <= 0) as u8, k))
            .unwrap();
        d[0] += best * s0;
        d[i] += best * si;
    }
    Some(d)
}

/// `Σ d_i Φ_{S_i}` over the least Sylow subgroups, primes in increasing
/// order. All formulas live in `ctx`.
pub fn sylow_combine(ctx: &Ctx, formulas: &[NCPoly]) -> Result<NCPoly, FormulaError> {
    let g = ctx.group();
    let primes = factorize(g.order());
    if formulas.len() != primes.len() || formulas.iter().any(|f| f.ctx() != ctx) {
        return Err(FormulaError::Precondition(
            "one formula per prime, all in the same context".into(),
        ));
    }
    if primes.len() == 1 {
        return Ok(formulas[0].clone());
    }
    let n = g.order() as i64;
    let cof: Vec<i64> = primes.iter().map(|&(p, a)| n / (p as i64).pow(a)).collect();
    for (&(p, _), f) in primes.iter().zip(formulas) {
        verify_if_cheap(f, &g.sylow_subgroup(p), "Sylow formula")?;
    }
    let d = bezout(&cof).expect("cofactors are coprime");
    let mut out = NCPoly::zero(ctx);
    for (di, f) in d.iter().zip(formulas) {
        out = &out + &f.scale(&Int::from(*di));
    }
    verify_if_cheap(&out, &g.whole(), "Sylow combination")?;
    Ok(out)
}

fn is_hom(src: &FiniteGroup, dst: &FiniteGroup, map: &[Elem]) -> bool {
    let mut seen = vec![false; dst.order()];
    map.len() == src.order()
        && map
            .iter()
            .all(|&m| m < dst.order() && !std::mem::replace(&mut seen[m], true))
        && src.elements().all(|a| {
            src.elements()
                .all(|b| map[src.mul(a, b)] == dst.mul(map[a], map[b]))
        })
}

/// Images of the variables of `src` under `map`: the matching variable of
/// `target`, or a formula for the image subgroup.
fn transport_images(src: &Ctx, target: &Ctx, map: &[Elem]) -> Result<Vec<NCPoly>, FormulaError> {
    let g = target.group();
    let mut images = Vec::with_capacity(src.num_vars());
    for v in 0..src.num_vars() {
        let members: Vec<Elem> = src
            .var_subgroup(v)
            .members()
            .iter()
            .map(|&m| map[m])
            .collect();
        let h = g.subgroup_from_members(&members)?;
        let img = match target.find_var(&h) {
            Some(tv) => NCPoly::var(target, tv),
            None => {
                let (k, emb) = g.subgroup_as_group(&h);
                let f = theorem22_formula(Arc::new(k))?;
                transport(&f, target, &emb)?
            }
        };
        images.push(img);
    }
    Ok(images)
}

/// Moves a formula over `K` into `target` along an injective homomorphism
/// `map: K → G`. A variable whose image subgroup has no variable in
/// `target` is replaced by a formula for that subgroup.
pub fn transport(phi: &NCPoly, target: &Ctx, map: &[Elem]) -> Result<NCPoly, FormulaError> {
    let src = phi.ctx();
    let g = target.group();
    if !is_hom(src.group(), g, map) {
        return Err(FormulaError::Precondition(
            "map is not an injective homomorphism".into(),
        ));
    }
    let images = transport_images(src, target, map)?;
    let out = phi.substitute_into(target, map, &images)?;
    let image: Vec<Elem> = map.to_vec();
    verify_if_cheap(
        &out,
        &g.subgroup_from_members(&image)?,
        "transported formula",
    )?;
    Ok(out)
}

/// [`transport`] with the outer substitution expanded term by term (the
/// substituted formulas themselves stay collected). Checked to collect to
/// the transported formula.
pub fn transport_expansion(
    phi: &NCPoly,
    target: &Ctx,
    map: &[Elem],
) -> Result<FormalSum, FormulaError> {
    let src = phi.ctx();
    let g = target.group();
    if !is_hom(src.group(), g, map) {
        return Err(FormulaError::Precondition(
            "map is not an injective homomorphism".into(),
        ));
    }
    let images: Vec<FormalSum> = transport_images(src, target, map)?
        .iter()
        .map(FormalSum::from_poly)
        .collect();
    let out = FormalSum::from_poly(phi).substitute_into(target, map, &images)?;
    if out.collect() != transport(phi, target, map)? {
        return Err(FormulaError::Verification("expanded transport".into()));
    }
    Ok(out)
}

/// Substitutes `inner` for the variable `var` of `outer`. An `inner` over
/// another group is carried into the variable's subgroup along an
/// isomorphism; the result lives in a context with the remaining variables
/// of `outer` followed by any new subgroups that `inner` needs.
pub fn compose(outer: &NCPoly, var: usize, inner: &NCPoly) -> Result<NCPoly, FormulaError> {
    let octx = outer.ctx();
    if var >= octx.num_vars() {
        return Err(RingError::UnknownVariable(var).into());
    }
    if inner.ctx() == octx {
        let out = outer.substitute(var, inner)?;
        verify_if_cheap(&out, &octx.group().whole(), "composed formula")?;
        return Ok(out);
    }
    let g = octx.group().clone();
    let h = octx.var_subgroup(var);
    let (hg, emb) = g.subgroup_as_group(h);
    let iso = inner.ctx().group().find_isomorphism(&hg).ok_or_else(|| {
        FormulaError::Precondition(format!(
            "{} is not isomorphic to the subgroup of variable {var}",
            inner.ctx().group().label()
        ))
    })?;
    let map: Vec<Elem> = iso.iter().map(|&k| emb[k]).collect();
    let mut subs: Vec<Subgroup> = (0..octx.num_vars())
        .filter(|&v| v != var)
        .map(|v| octx.var_subgroup(v).clone())
        .collect();
    let mut inner_vars = Vec::with_capacity(inner.ctx().num_vars());
    for v in 0..inner.ctx().num_vars() {
        let members: Vec<Elem> = inner
            .ctx()
            .var_subgroup(v)
            .members()
            .iter()
            .map(|&m| map[m])
            .collect();
        let k = g.subgroup_from_members(&members)?;
        let idx = match subs.iter().position(|s| *s == k) {
            Some(i) => i,
            None => {
                subs.push(k);
                subs.len() - 1
            }
        };
        inner_vars.push(idx);
    }
    let target = RingContext::new(g.clone(), subs)?;
    let inner_images: Vec<NCPoly> = inner_vars
        .iter()
        .map(|&i| NCPoly::var(&target, i))
        .collect();
    let carried = inner.substitute_into(&target, &map, &inner_images)?;
    let images: Vec<NCPoly> = (0..octx.num_vars())
        .map(|v| match v.cmp(&var) {
            std::cmp::Ordering::Less => NCPoly::var(&target, v),
            std::cmp::Ordering::Equal => carried.clone(),
            std::cmp::Ordering::Greater => NCPoly::var(&target, v - 1),
        })
        .collect();
    let ids: Vec<Elem> = g.elements().collect();
    let out = outer.substitute_into(&target, &ids, &images)?;
    verify_if_cheap(&out, &g.whole(), "composed formula")?;
    Ok(out)
}

/// `Φ_{G/U}(N_U(Φ_{π⁻¹(Ē)}))·x_U`. `lifts[v]` is a formula in `ctx` for the
/// preimage of the subgroup of the `v`-th variable of `phi_q`; quotient
/// elements act through their least coset representatives.
pub fn central_reduction(
    ctx: &Ctx,
    q: &Quotient,
    phi_q: &NCPoly,
    lifts: &[NCPoly],
) -> Result<NCPoly, FormulaError> {
    let g = ctx.group();
    let u = &q.kernel;
    if q.group.is_elementary_abelian_group() {
        return Err(FormulaError::QuotientElementaryAbelian);
    }
    let central = u
        .members()
        .iter()
        .all(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)));
    if !central || crate::group::prime_power_base(u.order()) != Some(u.order()) {
        return Err(FormulaError::Precondition(
            "U must be central of prime order".into(),
        ));
    }
    if lifts.len() != phi_q.ctx().num_vars() || phi_q.ctx().group().order() != q.group.order() {
        return Err(FormulaError::Precondition(
            "one lifted formula per quotient variable".into(),
        ));
    }
    let x_u = NCPoly::var(ctx, var_of(ctx, u)?);
    let mut images = Vec::with_capacity(lifts.len());
    for (v, f) in lifts.iter().enumerate() {
        let pre = q.preimage(g, phi_q.ctx().var_subgroup(v));
        verify_if_cheap(f, &pre, "preimage formula")?;
        let img = f.norm(u);
        if u.generators().iter().any(|&k| img.act(k) != img) {
            return Err(FormulaError::Verification(
                "N_U image is not U-invariant".into(),
            ));
        }
        images.push(img);
    }
    let elem_map: Vec<Elem> = (0..q.group.order()).map(|e| q.lift(e)).collect();
    let z = phi_q.substitute_into(ctx, &elem_map, &images)?;
    let out = &z * &x_u;
    verify_if_cheap(&out, &g.whole(), "central reduction")?;
    Ok(out)
}

fn flat_factors(spec: &GroupSpec) -> Vec<GroupSpec> {
    match spec {
        GroupSpec::DirectProduct(fs) => fs.clone(),
        s => vec![s.clone()],
    }
}

/// `A × B` with `(a, b)` at index `a·|B| + b`, through the catalog when both
/// factors come from it.
fn product_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<Arc<FiniteGroup>, FormulaError> {
    if let (Some(sa), Some(sb)) = (a.spec(), b.spec()) {
        let mut fs = flat_factors(sa);
        fs.extend(flat_factors(sb));
        let spec = GroupSpec::DirectProduct(fs);
        if spec.validate().is_ok() {
            return Ok(Arc::new(build_group(&spec)?));
        }
    }
    let label = format!("{}x{}", a.label(), b.label());
    Ok(Arc::new(direct_product(&label, &[a, b])?))
}

/// `Φ_H(N_C(x_{E'×C}))·x_C` over `H × C_p`, for a formula `Φ_H` in
/// elementary abelian variables of `H`.
pub fn product_reduction(phi_h: &NCPoly, p: usize) -> Result<NCPoly, FormulaError> {
    if !crate::group::is_prime(p) {
        return Err(FormulaError::Precondition(format!("{p} is not prime")));
    }
    let h = phi_h.ctx().group();
    let cp = catalog_group(GroupSpec::Cyclic(p))?;
    let g = product_group(h, &cp)?;
    let ctx = elementary_context(g.clone())?;
    let c = g.subgroup_generated(&[1]);
    let x_c = NCPoly::var(&ctx, var_of(&ctx, &c)?);
    let mut images = Vec::new();
    for v in 0..phi_h.ctx().num_vars() {
        let e = phi_h.ctx().var_subgroup(v);
        if !h.is_elementary_abelian(e) {
            return Err(FormulaError::Precondition(
                "Φ_H must use elementary abelian variables".into(),
            ));
        }
        let members: Vec<Elem> = e
            .members()
            .iter()
            .flat_map(|&m| (0..p).map(move |k| m * p + k))
            .collect();
        let ec = g.subgroup_from_members(&members)?;
        images.push(NCPoly::var(&ctx, var_of(&ctx, &ec)?).norm(&c));
    }
    let emb: Vec<Elem> = h.elements().map(|k| k * p).collect();
    let z = phi_h.substitute_into(&ctx, &emb, &images)?;
    if z.act(1) != z {
        return Err(FormulaError::Verification(
            "substituted formula is not C-invariant".into(),
        ));
    }
    let out = &z * &x_c;
    verify_if_cheap(&out, &g.whole(), "product reduction")?;
    Ok(out)
}

fn memo(
    cell: &'static OnceLock<Result<NCPoly, FormulaError>>,
    f: fn() -> Result<NCPoly, FormulaError>,
) -> Result<NCPoly, FormulaError> {
    cell.get_or_init(f).clone()
}

/// A library formula for an extraspecial or almost extraspecial group,
/// with an isomorphism from the library group onto `group`.
pub fn base_formula(group: &FiniteGroup) -> Result<(NCPoly, Vec<Elem>), FormulaError> {
    static Q8: OnceLock<Result<NCPoly, FormulaError>> = OnceLock::new();
    static D8: OnceLock<Result<NCPoly, FormulaError>> = OnceLock::new();
    static G27: OnceLock<Result<NCPoly, FormulaError>> = OnceLock::new();
    let n = group.order();
    let unsupported = || FormulaError::UnsupportedBaseGroup(group.iso_label());
    let p = group.prime().ok_or_else(unsupported)?;
    let inv = group.invariants();
    let lib = if n == p * p && inv.abelian && inv.exponent == n {
        if p == 2 {
            palfy_c4()?
        } else {
            cp2_formula(p).map_err(|_| unsupported())?
        }
    } else if n == 8 && group.iso_label() == "Q8" {
        memo(&Q8, || quaternion_formula(1))?
    } else if n == 8 && group.iso_label() == "D8" {
        memo(&D8, || dihedral_formula(2))?
    } else if n == 27 && group.iso_label() == "G27" {
        memo(&G27, g27_formula)?
    } else {
        return Err(unsupported());
    };
    let iso = lib
        .ctx()
        .group()
        .find_isomorphism(group)
        .ok_or_else(unsupported)?;
    Ok((lib, iso))
}

/// The recursive reduction to extraspecial and almost extraspecial groups,
/// output in [`elementary_context`] of `group`.
pub fn theorem22_formula(group: Arc<FiniteGroup>) -> Result<NCPoly, FormulaError> {
    let ctx = elementary_context(group.clone())?;
    if group.order() == 1 {
        return Ok(NCPoly::one(&ctx));
    }
    match group.classify()? {
        Classification::ElementaryAbelian => Ok(NCPoly::var(&ctx, var_of(&ctx, &group.whole())?)),
        Classification::Extraspecial | Classification::AlmostExtraspecial => {
            let (lib, iso) = base_formula(&group)?;
            transport(&lib, &ctx, &iso)
        }
        Classification::Other => {
            let u = group.central_reduction_subgroup()?;
            let q = group.quotient(&u)?;
            let phi_q = theorem22_formula(Arc::new(q.group.clone()))?;
            let mut lifts = Vec::new();
            for v in 0..phi_q.ctx().num_vars() {
                let pre = q.preimage(&group, phi_q.ctx().var_subgroup(v));
                let (k, emb) = group.subgroup_as_group(&pre);
                let f = theorem22_formula(Arc::new(k))?;
                lifts.push(transport(&f, &ctx, &emb)?);
            }
            central_reduction(&ctx, &q, &phi_q, &lifts)
        }
    }
}

/// A formula for any group: the reduction above on each Sylow subgroup,
/// combined with Bézout coefficients.
pub fn formula_for(group: Arc<FiniteGroup>) -> Result<NCPoly, FormulaError> {
    if group.prime().is_some() || group.order() == 1 {
        return theorem22_formula(group);
    }
    let ctx = elementary_context(group.clone())?;
    let mut parts = Vec::new();
    for (p, _) in factorize(group.order()) {
        let s = group.sylow_subgroup(p);
        let (k, emb) = group.subgroup_as_group(&s);
        let f = theorem22_formula(Arc::new(k))?;
        parts.push(transport(&f, &ctx, &emb)?);
    }
    sylow_combine(&ctx, &parts)
}

/// `{(a, b) : a ∈ s_a, b ∈ s_b}` inside `A × B`.
fn product_subgroup(
    g: &FiniteGroup,
    nb: usize,
    sa: &[Elem],
    sb: &[Elem],
) -> Result<Subgroup, GroupError> {
    let members: Vec<Elem> = sa
        .iter()
        .flat_map(|&a| sb.iter().map(move |&b| a * nb + b))
        .collect();
    g.subgroup_from_members(&members)
}

/// A formula for `G₁ × G₂` built from formulas for the factors' sections:
/// elementary abelian factors are split off one cyclic factor at a time,
/// otherwise a central subgroup of order `p` of `G₂` is factored out.
pub fn theorem25_formula(
    g1: Arc<FiniteGroup>,
    g2: Arc<FiniteGroup>,
) -> Result<NCPoly, FormulaError> {
    let p = match (g1.prime(), g2.prime()) {
        (Some(a), Some(b)) if a == b => a,
        (Some(a), None) if g2.order() == 1 => a,
        (None, Some(b)) if g1.order() == 1 => b,
        _ => {
            return Err(FormulaError::Precondition(
                "factors must be p-groups for the same p".into(),
            ))
        }
    };
    let g = product_group(&g1, &g2)?;
    let ctx = elementary_context(g.clone())?;
    let n2 = g2.order();
    let g2_elem = g2.order() == 1 || g2.is_elementary_abelian_group();
    let g1_elem = g1.order() == 1 || g1.is_elementary_abelian_group();
    if g2_elem {
        // G₁ × C_p × ⋯ × C_p, then along (g₁, c₁, …, c_r) ↦ (g₁, Π b_i^{c_i})
        let basis = g2
            .subgroup_from_members(&g2.elements().collect::<Vec<_>>())?
            .generators()
            .to_vec();
        let mut phi = theorem22_formula(g1.clone())?;
        for _ in &basis {
            phi = product_reduction(&phi, p)?;
        }
        let pg = phi.ctx().group().clone();
        let r = basis.len();
        let map: Vec<Elem> = pg
            .elements()
            .map(|mut k| {
                let mut b = 0;
                for i in (0..r).rev() {
                    let c = k % p;
                    k /= p;
                    b = g2.mul(g2.pow(basis[i], c as i64), b);
                }
                k * n2 + b
            })
            .collect();
        return transport(&phi, &ctx, &map);
    }
    if g1_elem {
        let phi = theorem25_formula(g2.clone(), g1.clone())?;
        let n1 = g1.order();
        let map: Vec<Elem> = (0..g.order()).map(|k| (k % n1) * n2 + k / n1).collect();
        return transport(&phi, &ctx, &map);
    }
    let u2 = match g2.central_reduction_subgroup() {
        Ok(u) => u,
        Err(_) => {
            let z = g2.center();
            let h = *z
                .members()
                .iter()
                .find(|&&x| g2.elem_order(x) == p)
                .expect("p-groups have central elements of order p");
            g2.subgroup_generated(&[h])
        }
    };
    let u = product_subgroup(&g, n2, &[0], u2.members())?;
    let q = g.quotient(&u)?;
    // G/U ≅ G₁ × G₂/U₂ via (a, b̄) ↦ π(a, lift(b̄))
    let q2 = g2.quotient(&u2)?;
    let phi_q_src = theorem25_formula(g1.clone(), Arc::new(q2.group.clone()))?;
    let nq2 = q2.group.order();
    let qmap: Vec<Elem> = (0..g1.order() * nq2)
        .map(|k| q.project((k / nq2) * n2 + q2.lift(k % nq2)))
        .collect();
    let qctx = elementary_context(Arc::new(q.group.clone()))?;
    let phi_q = transport(&phi_q_src, &qctx, &qmap)?;
    let mut lifts = Vec::new();
    for v in 0..qctx.num_vars() {
        let pre = q.preimage(&g, qctx.var_subgroup(v));
        let (mut e1, mut nn): (Vec<Elem>, Vec<Elem>) =
            pre.members().iter().map(|&k| (k / n2, k % n2)).unzip();
        e1.sort_unstable();
        e1.dedup();
        nn.sort_unstable();
        nn.dedup();
        let e1s = g1.subgroup_from_members(&e1)?;
        let ns = g2.subgroup_from_members(&nn)?;
        let (ng, nemb) = g2.subgroup_as_group(&ns);
        let (eg, eemb) = g1.subgroup_as_group(&e1s);
        let (ng, eg) = (Arc::new(ng), Arc::new(eg));
        // N × E₁, placed in G as (e, n)
        let f = theorem25_formula(ng.clone(), eg.clone())?;
        let ne = eg.order();
        let emb: Vec<Elem> = (0..ng.order() * ne)
            .map(|k| eemb[k % ne] * n2 + nemb[k / ne])
            .collect();
        let big = transport(&f, &ctx, &emb)?;
        let container = g.subgroup_from_members(&emb)?;
        lifts.push(restrict_formula(&big, &container, &pre)?);
    }
    central_reduction(&ctx, &q, &phi_q, &lifts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn bezout_is_normalized() {
        assert_eq!(bezout(&[3, 2]).unwrap(), vec![1, -1]);
        let d = bezout(&[15, 10, 6]).unwrap();
        assert_eq!(
            d.iter().zip([15, 10, 6]).map(|(a, b)| a * b).sum::<i64>(),
            1
        );
        assert!(bezout(&[4, 6]).is_none());
    }

    #[test]
    fn s3_combination() {
        let g = grp("S3");
        let phi = formula_for(g.clone()).unwrap();
        let ctx = phi.ctx().clone();
        let es = ctx.find_var(&g.sylow_subgroup(2)).unwrap();
        let et = ctx.find_var(&g.sylow_subgroup(3)).unwrap();
        assert_eq!(phi, &NCPoly::var(&ctx, es) - &NCPoly::var(&ctx, et));
    }

    #[test]
    fn c6_combination() {
        let phi = formula_for(grp("C6")).unwrap();
        assert!(phi.is_norm_one(&phi.ctx().group().whole()));
    }

    #[test]
    fn restrict_and_conjugate() {
        let g = grp("D8");
        let ctx = elementary_context(g.clone()).unwrap();
        let phi = theorem22_formula(g.clone()).unwrap();
        assert_eq!(phi.ctx(), &ctx);
        let c4 = g.subgroup_generated(&[1]);
        let r = restrict_formula(&phi, &g.whole(), &c4).unwrap();
        assert!(r.is_norm_one(&c4));
        let same = restrict_formula(&phi, &g.whole(), &g.whole()).unwrap();
        assert_eq!(same, phi);
        let k = g.subgroup_generated(&[2, 4]);
        let xk = NCPoly::var(&ctx, ctx.find_var(&k).unwrap());
        let c = conjugate_formula(&xk, &k, 1).unwrap();
        assert!(c.is_norm_one(&g.conjugate_subgroup(1, &k)));
    }

    #[test]
    fn small_reductions() {
        for s in ["C8", "C4xC2", "C9", "E(2,3)"] {
            let phi = theorem22_formula(grp(s)).unwrap();
            assert!(phi.is_norm_one(&phi.ctx().group().whole()), "{s}");
        }
    }

    #[test]
    fn quotient_must_not_be_elementary() {
        let g = grp("C4");
        let u = g.subgroup_generated(&[2]);
        let q = g.quotient(&u).unwrap();
        let ctx = elementary_context(g.clone()).unwrap();
        let qctx = elementary_context(Arc::new(q.group.clone())).unwrap();
        let phi_q = NCPoly::var(&qctx, 0);
        let lift = NCPoly::var(&ctx, 0);
        assert_eq!(
            central_reduction(&ctx, &q, &phi_q, &[lift]),
            Err(FormulaError::QuotientElementaryAbelian)
        );
    }

    #[test]
    fn products_with_a_cyclic_factor() {
        let c2 = grp("C2");
        let x = NCPoly::var(&elementary_context(c2).unwrap(), 0);
        let k = product_reduction(&x, 2).unwrap();
        assert!(k.is_norm_one(&k.ctx().group().whole()));
        let trivial = elementary_context(grp("C1")).unwrap();
        let xc = product_reduction(&NCPoly::one(&trivial), 3).unwrap();
        assert_eq!(xc.stats(), (1, 1));
        let c4 = product_reduction(&theorem22_formula(grp("C4")).unwrap(), 2).unwrap();
        assert!(c4.is_norm_one(&c4.ctx().group().whole()));
    }

    #[test]
    fn quaternion_with_palfy_expansion() {
        let q8 = grp("Q8");
        let (lib, iso) = base_formula(&q8).unwrap();
        let ctx = elementary_context(q8.clone()).unwrap();
        let f = transport_expansion(&lib, &ctx, &iso).unwrap();
        assert_eq!(f.stats(), (666, 9));
        let y = theorem22_formula(q8.clone()).unwrap();
        assert_eq!(f.collect(), y);
        assert!(y.is_norm_one(&q8.whole()));
    }

    #[test]
    fn composing_files() {
        let q8 = crate::formula_lib::q8_transcribed().unwrap();
        let palfy = palfy_c4().unwrap();
        let y = compose(&q8, 0, &palfy).unwrap();
        let g = q8.ctx().group().clone();
        assert_eq!(y.degree(), 9);
        assert_eq!(y.ctx().num_vars(), 1);
        assert_eq!(y.ctx().var_subgroup(0).order(), 2);
        assert!(y.is_norm_one(&g.whole()));
        let x = NCPoly::var(q8.ctx(), 0);
        assert_eq!(compose(&q8, 0, &x).unwrap(), q8);
        assert!(compose(&q8, 1, &x).is_err());
        let c9 = crate::formula_lib::c9_transcribed().unwrap();
        assert!(matches!(
            compose(&q8, 0, &c9),
            Err(FormulaError::Precondition(_))
        ));
    }

    #[test]
    fn unsupported_base_group() {
        // extraspecial of order 27 and exponent 3
        let he = crate::group::FiniteGroup::from_table(
            "He27",
            (0..27).map(|i| format!("h{i}")).collect(),
            heisenberg_table(),
            vec![1, 3],
        )
        .unwrap();
        assert!(matches!(
            theorem22_formula(Arc::new(he)),
            Err(FormulaError::UnsupportedBaseGroup(_))
        ));
    }

    /// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b') mod 3 at index a + 3b + 9c
    fn heisenberg_table() -> Vec<Vec<Elem>> {
        let split = |k: usize| (k % 3, (k / 3) % 3, k / 9);
        (0..27)
            .map(|x| {
                (0..27)
                    .map(|y| {
                        let (a, b, c) = split(x);
                        let (a2, b2, c2) = split(y);
                        (a + a2) % 3 + 3 * ((b + b2) % 3) + 9 * ((c + c2 + a * b2) % 3)
                    })
                    .collect()
            })
            .collect()
    }
}
