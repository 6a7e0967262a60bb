use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ncring::{Ctx, NCPoly, Word};
use crate::Int;

use super::{hnf, MethodError, NormEquation};

/// Default bound on `|G|` for the ansatz.
pub const ANSATZ_MAX_ORDER: usize = 32;

/// Looks for a solution of the form `b(σ_i) = Σ_{H ∈ pool} A_{i,H}(x_H)`
/// with `A_{i,H} ∈ Z[G]`. Every unknown contributes a linear polynomial to
/// each equation, so matching the coefficients of kept generators and of
/// `1` gives an integer linear system. Returns the HNF particular solution.
pub fn ansatz_solve(
    system: &[NormEquation],
    ctx: &Ctx,
    pool: &[usize],
    max_order: usize,
) -> Result<Vec<NCPoly>, MethodError> {
    let grp = ctx.group().clone();
    let n = grp.order();
    if n > max_order {
        return Err(MethodError::Unsupported(format!(
            "ansatz limited to |G| ≤ {max_order}"
        )));
    }
    if pool.iter().any(|&v| v >= ctx.num_vars()) {
        return Err(crate::ncring::RingError::UnknownVariable(*pool.iter().max().unwrap()).into());
    }
    let ngen = system.first().map_or(0, |e| e.lhs.len());
    let ncols = ngen * pool.len() * n;
    let col = |i: usize, h: usize, g: usize| (i * pool.len() + h) * n + g;
    let mut rows: BTreeMap<(usize, Word), Vec<BigInt>> = BTreeMap::new();
    let mut rhs: BTreeMap<(usize, Word), BigInt> = BTreeMap::new();
    for (j, eq) in system.iter().enumerate() {
        if eq.lhs.len() != ngen {
            return Err(MethodError::InvalidPresentation("ragged system".into()));
        }
        rhs.insert((j, Word::empty()), eq.rhs.to_bigint());
        rows.entry((j, Word::empty()))
            .or_insert_with(|| vec![BigInt::zero(); ncols]);
        for (i, a) in eq.lhs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, &v) in pool.iter().enumerate() {
                for g in grp.elements() {
                    let contrib = NCPoly::sym(ctx, g, v).apply(a).normal_form();
                    for (w, c) in contrib.terms() {
                        let row = rows
                            .entry((j, w.clone()))
                            .or_insert_with(|| vec![BigInt::zero(); ncols]);
                        row[col(i, h, g)] += c.to_bigint();
                    }
                }
            }
        }
    }
    let keys: Vec<(usize, Word)> = rows.keys().cloned().collect();
    let m: Vec<Vec<BigInt>> = keys.iter().map(|k| rows[k].clone()).collect();
    let v: Vec<BigInt> = keys
        .iter()
        .map(|k| rhs.get(k).cloned().unwrap_or_default())
        .collect();
    let c = hnf::solve(&m, &v, ncols).ok_or(MethodError::NoSolution)?;
    let mut out = Vec::with_capacity(ngen);
    for i in 0..ngen {
        let mut terms = Vec::new();
        for (h, &var) in pool.iter().enumerate() {
            for g in grp.elements() {
                let k = &c[col(i, h, g)];
                if !k.is_zero() {
                    terms.push((
                        Int::from(k.clone()),
                        Word::from_syms(&[crate::ncring::Sym::new(g, var)]),
                    ));
                }
            }
        }
        out.push(NCPoly::from_terms(ctx, terms)?);
    }
    Ok(out)
}
