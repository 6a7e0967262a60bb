use std::sync::Arc;

use crate::cocycle_solver::witness_klein_formal;
use crate::group::{Elem, FiniteGroup, GroupSpec};
use crate::method::{catalog_setup, run_setup, NormEquation, PipelineResult, Setup};
use crate::ncring::{identity_check, FormalSum, GroupRingElement, NCPoly};
use crate::Int;

use super::closed::{c9_transcribed, catalog_group};
use super::FormulaError;

fn gre(g: &Arc<FiniteGroup>, pairs: &[(i64, Elem)]) -> GroupRingElement {
    GroupRingElement::from_pairs(g, pairs.iter().map(|&(c, e)| (e, Int::from(c))))
}

fn eq(lhs: Vec<GroupRingElement>, rhs: i64) -> NormEquation {
    NormEquation {
        lhs,
        rhs: Int::from(rhs),
    }
}

/// The systems derived by hand for the three families, unknowns ordered as
/// `[b(σ), b(τ)]`.
pub fn lemma_system(setup: &Setup) -> Option<Vec<NormEquation>> {
    let g = setup.ctx.group();
    let (s, t) = (setup.pres.generators[0], setup.pres.generators[1]);
    let one = GroupRingElement::one(g);
    let zero = GroupRingElement::zero(g);
    let st = g.mul(s, t);
    let h = g.subgroup_generated(&[s]);
    let n_h = GroupRingElement::norm_element(g, &h);
    let s_minus_1 = gre(g, &[(1, s), (-1, 0)]);
    let one_plus_st = gre(g, &[(1, 0), (1, st)]);
    match g.spec()? {
        GroupSpec::Quaternion(order) => {
            let half = order / 4;
            Some(vec![
                eq(vec![n_h, zero], 0),
                eq(vec![one_plus_st, s_minus_1], 0),
                eq(
                    vec![
                        -&GroupRingElement::geometric(g, s, half),
                        &one + &GroupRingElement::basis(g, t),
                    ],
                    1,
                ),
            ])
        }
        GroupSpec::Dihedral(order) => Some(vec![
            eq(vec![zero, &one + &GroupRingElement::basis(g, t)], 0),
            eq(vec![n_h, GroupRingElement::zero(g)], (order / 4) as i64),
            eq(vec![one_plus_st, s_minus_1], 1),
        ]),
        &GroupSpec::ModMax(p) => {
            let sp = g.pow(s, p as i64);
            let sp1 = g.mul(sp, s);
            let coeff_s = &(&GroupRingElement::geometric(g, s, p)
                + &GroupRingElement::basis(g, sp))
                - &GroupRingElement::basis(g, t);
            Some(vec![
                eq(vec![zero, GroupRingElement::geometric(g, t, p)], 0),
                eq(vec![n_h, GroupRingElement::zero(g)], p as i64),
                eq(vec![coeff_s, gre(g, &[(1, sp1), (-1, 0)])], 1),
            ])
        }
        _ => None,
    }
}

/// `x' ` over `G₂₇`: the `C₉` formula with `σ^i ↦ (στ)^i` and
/// `x_E ↦ x₀ = (1 + τ + τ²)(x)`.
pub fn g27_x_prime(setup: &Setup) -> Result<NCPoly, FormulaError> {
    let g = setup.ctx.group();
    let (s, t) = (setup.pres.generators[0], setup.pres.generators[1]);
    let st = g.mul(s, t);
    let c9 = c9_transcribed()?;
    let x = NCPoly::var(&setup.ctx, setup.x_var);
    let x0 = x.geometric(t, 3);
    let elem_map: Vec<Elem> = (0..9).map(|i| g.pow(st, i)).collect();
    Ok(c9.substitute_into(&setup.ctx, &elem_map, &[x0])?)
}

fn g27_a(g: &Arc<FiniteGroup>, s: Elem, t: Elem) -> GroupRingElement {
    let p = |k: i64| g.pow(s, k);
    gre(
        g,
        &[
            (1, p(6)),
            (-1, g.mul(p(1), t)),
            (-1, g.mul(p(2), t)),
            (-1, g.mul(p(3), t)),
            (-1, g.mul(p(5), t)),
        ],
    )
}

/// The group ring identity behind the third equation for `G₂₇`:
/// `(σ⁴ − 1)(τ − 1)A + (1 + σ + σ² + σ³ − τ)(1 + στ + (στ)²) = N_{⟨στ⟩}`.
pub fn identity_85() -> Result<bool, FormulaError> {
    let g = catalog_group(GroupSpec::ModMax(3))?;
    let (s, t) = (1, 9);
    let st = g.mul(s, t);
    let a = g27_a(&g, s, t);
    let lhs1 = &(&gre(&g, &[(1, g.pow(s, 4)), (-1, 0)]) * &gre(&g, &[(1, t), (-1, 0)])) * &a;
    let lhs2 = &(&GroupRingElement::geometric(&g, s, 4) - &GroupRingElement::basis(&g, t))
        * &GroupRingElement::geometric(&g, st, 3);
    let rhs = GroupRingElement::norm_element(&g, &g.subgroup_generated(&[st]));
    Ok(identity_check(&(&lhs1 + &lhs2), &rhs))
}

/// The solutions worked out by hand, if `setup` is one of the catalog
/// setups they were written for.
pub fn library_solution(setup: &Setup) -> Option<Vec<NCPoly>> {
    let g = setup.ctx.group().clone();
    let (s, t) = (setup.pres.generators[0], setup.pres.generators[1]);
    let st = g.mul(s, t);
    match g.spec()? {
        GroupSpec::Quaternion(order) => {
            let x = NCPoly::var(&setup.ctx, setup.x_var);
            let b_s = &x - &x.act(st);
            let b_t = x.geometric(s, order / 4);
            Some(vec![b_s, b_t])
        }
        GroupSpec::Dihedral(order) => {
            let x2 = NCPoly::var(&setup.ctx, 1);
            let u = g.pow(s, (order / 4) as i64);
            let b_s = &x2.act(s) + &x2.act(g.mul(u, t));
            let b_t = x2.apply(&gre(&g, &[(1, t), (1, g.mul(t, u)), (-1, 0), (-1, u)]));
            Some(vec![b_s, b_t])
        }
        GroupSpec::ModMax(3) => {
            let xp = g27_x_prime(setup).ok()?;
            let b_s = xp.geometric(st, 3);
            let ta = &gre(&g, &[(1, t), (-1, 0)]) * &g27_a(&g, s, t);
            Some(vec![b_s, xp.apply(&ta)])
        }
        _ => None,
    }
}

fn family_run(spec: GroupSpec, direct: Option<bool>) -> Result<PipelineResult, FormulaError> {
    let setup = catalog_setup(catalog_group(spec.clone())?)?;
    let b = library_solution(&setup)
        .ok_or_else(|| FormulaError::Precondition(format!("no library solution for {spec}")))?;
    Ok(run_setup(setup, Some(b), direct)?)
}

/// Full run for `Q_{2^{n+2}}`, `1 ≤ n ≤ 3`.
pub fn quaternion_run(n: u32) -> Result<PipelineResult, FormulaError> {
    if !(1..=3).contains(&n) {
        return Err(FormulaError::Precondition(format!(
            "quaternion family needs 1 ≤ n ≤ 3, got {n}"
        )));
    }
    family_run(GroupSpec::Quaternion(1 << (n + 2)), None)
}

pub fn quaternion_formula(n: u32) -> Result<NCPoly, FormulaError> {
    Ok(quaternion_run(n)?.assembly.y)
}

/// Full run for `D_{2^{n+1}}`, `2 ≤ n ≤ 3`.
pub fn dihedral_run(n: u32) -> Result<PipelineResult, FormulaError> {
    if !(2..=3).contains(&n) {
        return Err(FormulaError::Precondition(format!(
            "dihedral family needs 2 ≤ n ≤ 3, got {n}"
        )));
    }
    family_run(GroupSpec::Dihedral(1 << (n + 1)), None)
}

pub fn dihedral_formula(n: u32) -> Result<NCPoly, FormulaError> {
    Ok(dihedral_run(n)?.assembly.y)
}

/// The `D₈` witness and `y` expanded term by term, with `b(σ²)` written as
/// `(1 + σ)b(σ) − N_{U₂}(x₂)`. Both collect to the run's `w` and `y` modulo
/// the norm relations; this is checked before returning.
pub fn dihedral_eight_expansion(
    run: &PipelineResult,
) -> Result<(FormalSum, FormalSum), FormulaError> {
    let setup = &run.setup;
    let g = setup.ctx.group();
    if g.spec() != Some(&GroupSpec::Dihedral(8)) {
        return Err(FormulaError::Precondition(
            "expansion is defined for D8 only".into(),
        ));
    }
    let (s1, s2) = setup.klein.expect("D8 setup uses the Klein witness");
    let sigma = setup.bctx.sigma();
    let b_sigma = &run.b_values[setup.sigma_letter];
    let x2 = NCPoly::var(&setup.ctx, 1);
    let s_val = &b_sigma.geometric(sigma, 2) - &x2.norm(setup.ctx.var_subgroup(1));
    if !(&s_val - run.cocycle.value(s2)).is_zero_mod_ideal() {
        return Err(FormulaError::Verification("b(σ²) rewrite".into()));
    }
    let x = FormalSum::from_poly(&NCPoly::var(&setup.ctx, setup.x_var));
    let r = FormalSum::from_poly(run.cocycle.value(s1));
    let w = witness_klein_formal(s1, s2, &r, &FormalSum::from_poly(&s_val), &x)?;
    if !(&w.collect() - &run.w).is_zero_mod_ideal() {
        return Err(FormulaError::Verification("expanded witness".into()));
    }
    let a = FormalSum::from_poly(b_sigma).add(&w)?.sub(&w.act(sigma))?;
    let y = a.mul(&x)?;
    if !(&y.collect() - &run.assembly.y).is_zero_mod_ideal() {
        return Err(FormulaError::Verification("expanded y".into()));
    }
    Ok((w, y))
}

/// Full run for `G₂₇`; also checks the group ring identity and
/// `N_{⟨στ⟩}(x') = 1` before trusting the solution.
pub fn g27_run() -> Result<PipelineResult, FormulaError> {
    if !identity_85()? {
        return Err(FormulaError::Verification(
            "group ring identity for G27".into(),
        ));
    }
    let setup = catalog_setup(catalog_group(GroupSpec::ModMax(3))?)?;
    let g = setup.ctx.group().clone();
    let st = g.mul(setup.pres.generators[0], setup.pres.generators[1]);
    let xp = g27_x_prime(&setup)?;
    if !xp.is_norm_one(&g.subgroup_generated(&[st])) {
        return Err(FormulaError::Verification("N_<st>(x') ≠ 1".into()));
    }
    family_run(GroupSpec::ModMax(3), None)
}

pub fn g27_formula() -> Result<NCPoly, FormulaError> {
    Ok(g27_run()?.assembly.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula_lib::q8_transcribed;
    use crate::method::{build_system, check_solution};

    #[test]
    fn identity_holds() {
        assert!(identity_85().unwrap());
    }

    #[test]
    fn lemma_systems_agree_with_generated_ones() {
        for spec in ["Q8", "Q16", "D8", "D16", "G27"] {
            let setup = catalog_setup(catalog_group(spec.parse().unwrap()).unwrap()).unwrap();
            let generated = build_system(&setup.bctx, &setup.pres).unwrap();
            let hand = lemma_system(&setup).unwrap();
            let rhs: Vec<_> = generated.iter().map(|e| e.rhs.clone()).collect();
            assert_eq!(
                rhs,
                hand.iter().map(|e| e.rhs.clone()).collect::<Vec<_>>(),
                "{spec}"
            );
            let b = library_solution(&setup).unwrap();
            assert!(check_solution(&generated, &b), "{spec}");
            assert!(check_solution(&hand, &b), "{spec}");
        }
    }

    #[test]
    fn quaternion_eight_matches_transcription() {
        let r = quaternion_run(1).unwrap();
        assert_eq!(r.w.stats(), (12, 2));
        assert_eq!(r.assembly.y, q8_transcribed().unwrap());
    }

    #[test]
    fn dihedral_eight_counts() {
        let r = dihedral_run(2).unwrap();
        let (w, y) = dihedral_eight_expansion(&r).unwrap();
        assert_eq!(w.stats(), (48, 3));
        assert_eq!(y.stats(), (98, 4));
        // after collection the degree-three block of w cancels
        assert_eq!(r.w.stats(), (15, 2));
        assert!(r.assembly.y.is_norm_one(&r.setup.ctx.group().whole()));
    }

    #[test]
    fn family_bounds() {
        assert!(quaternion_run(0).is_err());
        assert!(dihedral_run(1).is_err());
    }
}
