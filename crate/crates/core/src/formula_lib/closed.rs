use std::sync::Arc;

use crate::group::{build_group, is_prime, FiniteGroup, GroupSpec};
use crate::ncring::{Ctx, NCPoly, RingContext, Sym, Word};
use crate::Int;

use super::{verify_norm_one, FormulaError};

pub(crate) fn catalog_group(spec: GroupSpec) -> Result<Arc<FiniteGroup>, FormulaError> {
    Ok(Arc::new(build_group(&spec)?))
}

/// Builds `Σ c·g₁(x)⋯g_k(x)` in the single-variable context `ctx` from
/// element names.
pub(crate) fn from_named(ctx: &Ctx, terms: &[(i64, &[&str])]) -> NCPoly {
    let grp = ctx.group();
    let terms = terms.iter().map(|(c, names)| {
        let w: Word = names
            .iter()
            .map(|n| {
                Sym::new(
                    grp.element_by_name(n)
                        .unwrap_or_else(|| panic!("no element {n}")),
                    0,
                )
            })
            .collect();
        (Int::from(*c), w)
    });
    NCPoly::from_terms(ctx, terms).expect("names resolve inside the context")
}

/// `C_n` with the variable on the subgroup of order `n / index`.
fn cyclic_ctx(n: usize, sub_gen: usize) -> Result<Ctx, FormulaError> {
    let g = catalog_group(GroupSpec::Cyclic(n))?;
    let e = g.subgroup_generated(&[sub_gen]);
    Ok(RingContext::with_names(g, vec![e], vec!["x_E".into()])?)
}

/// `x σ(x) + x σ(x) x − x² σ(x)` over `C₄`, `x = x_E` for `E = ⟨σ²⟩`.
pub fn palfy_c4() -> Result<NCPoly, FormulaError> {
    let ctx = cyclic_ctx(4, 2)?;
    let phi = from_named(
        &ctx,
        &[
            (1, &["e", "s"]),
            (1, &["e", "s", "e"]),
            (-1, &["e", "e", "s"]),
        ],
    );
    verify_norm_one(&phi, &ctx.group().whole(), "Pálfy formula")?;
    Ok(phi)
}

/// The four-sum formula for `C_{p²}` in `x = x_E`, `E = ⟨σ^p⟩`, as collected
/// (not reduced) polynomial.
pub fn cp2_formula(p: usize) -> Result<NCPoly, FormulaError> {
    if !is_prime(p) || p > 7 {
        return Err(FormulaError::Precondition(format!(
            "p = {p} must be a prime ≤ 7"
        )));
    }
    let n = p * p;
    let ctx = cyclic_ctx(n, p)?;
    let s = |k: i64| Sym::new(k.rem_euclid(n as i64) as usize, 0);
    let (p_, x) = (p as i64, s(0));
    let mut terms: Vec<(Int, Word)> = vec![(Int::ONE, Word::from_syms(&[x, x]))];
    for k in 1..p_ {
        for i in 0..k {
            for j in 0..p_ {
                let off = j - (k - i) * p_;
                terms.push((Int::ONE, Word::from_syms(&[s(i * p_), s(off), x])));
                terms.push((
                    Int::from(-1),
                    Word::from_syms(&[s(i * p_ + 1), s(off + 1), x]),
                ));
            }
            terms.push((Int::from(-1), Word::from_syms(&[s(i * p_), x])));
            terms.push((Int::ONE, Word::from_syms(&[s(i * p_ + 1), x])));
        }
    }
    let phi = NCPoly::from_terms(&ctx, terms)?;
    verify_norm_one(&phi, &ctx.group().whole(), &format!("C{n} formula"))?;
    Ok(phi)
}

/// Hand transcription of the 22-term formula for `C₉`, kept separate from
/// [`cp2_formula`] so the two can be compared.
pub fn c9_transcribed() -> Result<NCPoly, FormulaError> {
    let ctx = cyclic_ctx(9, 3)?;
    let phi = from_named(
        &ctx,
        &[
            (-1, &["e", "e"]),
            (2, &["s", "e"]),
            (-1, &["s3", "e"]),
            (1, &["s4", "e"]),
            (1, &["e", "s3", "e"]),
            (1, &["e", "s4", "e"]),
            (1, &["e", "s5", "e"]),
            (1, &["e", "s6", "e"]),
            (1, &["e", "s7", "e"]),
            (1, &["e", "s8", "e"]),
            (-1, &["s", "s4", "e"]),
            (-1, &["s", "s5", "e"]),
            (-1, &["s", "s6", "e"]),
            (-1, &["s", "s7", "e"]),
            (-1, &["s", "s8", "e"]),
            (-1, &["s", "e", "e"]),
            (1, &["s3", "s6", "e"]),
            (1, &["s3", "s7", "e"]),
            (1, &["s3", "s8", "e"]),
            (-1, &["s4", "s7", "e"]),
            (-1, &["s4", "s8", "e"]),
            (-1, &["s4", "e", "e"]),
        ],
    );
    Ok(phi)
}

/// Hand transcription of the 26-term element `y` over `Q₈` in `x = x_U`,
/// `U = ⟨σ⟩`.
pub fn q8_transcribed() -> Result<NCPoly, FormulaError> {
    let g = catalog_group(GroupSpec::Quaternion(8))?;
    let u = g.subgroup_generated(&[1]);
    let ctx = RingContext::with_names(g, vec![u], vec!["x".into()])?;
    let phi = from_named(
        &ctx,
        &[
            (1, &["e", "e"]),
            (1, &["s", "e"]),
            (1, &["e", "s", "e"]),
            (1, &["e", "s2", "e"]),
            (1, &["e", "s3", "e"]),
            (-1, &["e", "t", "e"]),
            (-1, &["e", "s2t", "e"]),
            (-1, &["e", "s3t", "e"]),
            (1, &["s", "s2", "e"]),
            (1, &["s", "s3", "e"]),
            (-1, &["s", "t", "e"]),
            (-1, &["s", "s3t", "e"]),
            (1, &["s2", "s3", "e"]),
            (-1, &["s2", "t", "e"]),
            (1, &["t", "e", "e"]),
            (1, &["t", "s2", "e"]),
            (1, &["t", "s3", "e"]),
            (-1, &["t", "st", "e"]),
            (-1, &["t", "s2t", "e"]),
            (-1, &["t", "s3t", "e"]),
            (1, &["s2t", "s2", "e"]),
            (-1, &["s2t", "st", "e"]),
            (1, &["s3t", "s2", "e"]),
            (1, &["s3t", "s3", "e"]),
            (-1, &["s3t", "st", "e"]),
            (-1, &["s3t", "s2t", "e"]),
        ],
    );
    Ok(phi)
}

/// `Φ_E = x_E` for an elementary abelian subgroup that has a variable in `ctx`.
pub fn elementary_formula(ctx: &Ctx, e: &crate::group::Subgroup) -> Result<NCPoly, FormulaError> {
    if !ctx.group().is_elementary_abelian(e) {
        return Err(FormulaError::Precondition(
            "subgroup is not elementary abelian".into(),
        ));
    }
    let v = ctx
        .find_var(e)
        .ok_or_else(|| FormulaError::Precondition("no variable for the subgroup".into()))?;
    Ok(NCPoly::var(ctx, v))
}
