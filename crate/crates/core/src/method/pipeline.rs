use std::sync::Arc;

use crate::cocycle_solver::{witness, witness_klein};
use crate::group::{build_group, Elem, FiniteGroup, GroupSpec, Subgroup};
use crate::ncring::{BContext, CocycleOnSubgroup, Ctx, NCPoly, RingContext};

use super::{
    ansatz_solve, assemble, build_system, check_solution, extend_b, Assembly, MethodError,
    NormEquation, Presentation, ANSATZ_MAX_ORDER,
};

/// Everything the method needs before a solution is chosen.
#[derive(Clone, Debug)]
pub struct Setup {
    pub ctx: Ctx,
    pub bctx: BContext,
    pub pres: Presentation,
    /// the variable with `N_U(x) = 1`
    pub x_var: usize,
    /// position of `σ` (the generator of `G/U`) among the generators
    pub sigma_letter: usize,
    /// `(σ₁, σ₂)` when `U ≅ C₂ × C₂` is to be handled by the Klein formula
    pub klein: Option<(Elem, Elem)>,
}

/// Setups for the worked families:
///
/// - quaternion: `U = ⟨σ⟩`, `G/U` generated by `τ`, one variable `x = x_U`
/// - dihedral of order `2^{n+1}`: `U = ⟨σ², τ⟩`, `G/U` generated by `σ`,
///   variables `x = x_U` and `x_2 = x_{U₂}` with `U₂ = ⟨u, στ⟩`,
///   `u = σ^{2^{n−1}}`
/// - order 27: `U = ⟨σ³, τ⟩`, `G/U` generated by `σ`, `x = x_U`
pub fn catalog_setup(group: Arc<FiniteGroup>) -> Result<Setup, MethodError> {
    let pres = Presentation::catalog(&group).ok_or_else(|| {
        MethodError::Unsupported(format!("no catalog presentation for {}", group.label()))
    })?;
    let (s, t) = (pres.generators[0], pres.generators[1]);
    let spec = group.spec().cloned().expect("catalog group");
    let (u, sigma_letter, extra, klein) = match spec {
        GroupSpec::Quaternion(_) => (group.subgroup_generated(&[s]), 1, None, None),
        GroupSpec::Dihedral(order) => {
            let m = order / 2;
            let s2 = group.pow(s, 2);
            let u = group.subgroup_generated(&[s2, t]);
            let c = group.pow(s, (m / 2) as i64);
            let u2 = group.subgroup_generated(&[c, group.mul(s, t)]);
            let klein = (order == 8).then_some((t, s2));
            (u, 0, Some(u2), klein)
        }
        GroupSpec::ModMax(p) => {
            let sp = group.pow(s, p as i64);
            (group.subgroup_generated(&[sp, t]), 0, None, None)
        }
        _ => unreachable!("catalog presentations exist only for the families above"),
    };
    let (subs, names) = match extra {
        Some(u2) => (
            vec![u.clone(), u2],
            vec!["x".to_string(), "x_2".to_string()],
        ),
        None => (vec![u.clone()], vec!["x".to_string()]),
    };
    let ctx = RingContext::with_names(group.clone(), subs, names)?;
    let bctx = BContext::new(&ctx, &u, pres.generators[sigma_letter])?;
    Ok(Setup {
        ctx,
        bctx,
        pres,
        x_var: 0,
        sigma_letter,
        klein,
    })
}

/// A setup for any `p`-group: the table presentation, `U` the least
/// subgroup of index `p` that is normal, `σ` the least generator outside
/// `U`, and the single variable `x = x_U`.
pub fn generic_setup(group: Arc<FiniteGroup>) -> Result<Setup, MethodError> {
    let p = group
        .prime()
        .ok_or_else(|| MethodError::Unsupported(format!("{} is not a p-group", group.label())))?;
    if group.order() == 1 {
        return Err(MethodError::Unsupported("trivial group".into()));
    }
    let u: Subgroup = group
        .normal_subgroups()
        .into_iter()
        .find(|h| h.order() * p == group.order())
        .expect("p-groups have normal subgroups of index p");
    let pres = Presentation::from_table(&group);
    let sigma_letter = pres
        .generators
        .iter()
        .position(|&g| !u.contains(g))
        .expect("generators are not all in a proper subgroup");
    let ctx = RingContext::new(group.clone(), vec![u.clone()])?;
    let bctx = BContext::new(&ctx, &u, pres.generators[sigma_letter])?;
    Ok(Setup {
        ctx,
        bctx,
        pres,
        x_var: 0,
        sigma_letter,
        klein: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionSource {
    Library,
    Ansatz,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub setup: Setup,
    pub system: Vec<NormEquation>,
    pub b_values: Vec<NCPoly>,
    pub source: SolutionSource,
    /// `b` restricted to `U`
    pub cocycle: CocycleOnSubgroup,
    pub w: NCPoly,
    pub assembly: Assembly,
}

/// Largest `|G|·len(y)` for which `N_G(y)` is reduced directly by default.
const DIRECT_CHECK_BUDGET: usize = 2_000_000;

/// Runs the method on a prepared setup. Without `b_values` the linear
/// ansatz over all context variables is tried. `direct` forces or skips the
/// direct reduction of `N_G(y)`; by default it runs when cheap.
pub fn run_setup(
    setup: Setup,
    b_values: Option<Vec<NCPoly>>,
    direct: Option<bool>,
) -> Result<PipelineResult, MethodError> {
    let system = build_system(&setup.bctx, &setup.pres)?;
    let (b_values, source) = match b_values {
        Some(b) => (b, SolutionSource::Library),
        None => {
            let pool: Vec<usize> = (0..setup.ctx.num_vars()).collect();
            (
                ansatz_solve(&system, &setup.ctx, &pool, ANSATZ_MAX_ORDER)?,
                SolutionSource::Ansatz,
            )
        }
    };
    if !check_solution(&system, &b_values) {
        return Err(MethodError::SolutionRejected);
    }
    let cocycle = extend_b(&setup.bctx, &setup.pres, &b_values)?;
    let x = NCPoly::var(&setup.ctx, setup.x_var);
    let w = match setup.klein {
        Some((s1, s2)) => {
            let u = setup.bctx.subgroup();
            witness_klein(u, s1, s2, cocycle.value(s1), cocycle.value(s2), &x)?
        }
        None => witness(&cocycle, &x)?,
    };
    let b_sigma = &b_values[setup.sigma_letter];
    let order = setup.ctx.group().order();
    let direct = direct.unwrap_or_else(|| {
        let est = (b_sigma.len() + 2 * w.len()) * order;
        est <= DIRECT_CHECK_BUDGET
    });
    let assembly = assemble(&setup.bctx, b_sigma, &w, &x, direct)?;
    Ok(PipelineResult {
        setup,
        system,
        b_values,
        source,
        cocycle,
        w,
        assembly,
    })
}

/// Builds the group, picks the catalog setup and the library solution when
/// available (otherwise the table presentation and the ansatz), and runs the
/// method to a verified `y`.
pub fn run_pipeline(spec: &GroupSpec) -> Result<PipelineResult, MethodError> {
    let group = Arc::new(build_group(spec)?);
    match catalog_setup(group.clone()) {
        Ok(setup) => {
            let b = crate::formula_lib::library_solution(&setup);
            run_setup(setup, b, None)
        }
        Err(MethodError::Unsupported(_)) => run_setup(generic_setup(group)?, None, None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncring::RingContext;
    use crate::Int;

    fn setup(spec: &str) -> Setup {
        catalog_setup(Arc::new(build_group(&spec.parse().unwrap()).unwrap())).unwrap()
    }

    fn rhs(s: &Setup) -> Vec<i64> {
        build_system(&s.bctx, &s.pres)
            .unwrap()
            .iter()
            .map(|e| e.rhs.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn system_right_hand_sides() {
        assert_eq!(rhs(&setup("Q8")), vec![0, 0, 1]);
        assert_eq!(rhs(&setup("Q16")), vec![0, 0, 1]);
        assert_eq!(rhs(&setup("D8")), vec![0, 2, 1]);
        assert_eq!(rhs(&setup("D16")), vec![0, 4, 1]);
        assert_eq!(rhs(&setup("G27")), vec![0, 3, 1]);
    }

    #[test]
    fn alpha_values() {
        let s = setup("G27");
        let alpha = super::super::build_alpha(&s.bctx);
        let g = s.ctx.group();
        let sigma = s.bctx.sigma();
        for &u in s.bctx.subgroup().members() {
            assert!(s.bctx.coerce(&alpha[u]).unwrap().is_zero());
        }
        assert_eq!(alpha[sigma], s.bctx.phi_translate(0));
        let two = s
            .bctx
            .add(&s.bctx.phi_translate(0), &s.bctx.phi_translate(1));
        assert_eq!(alpha[g.mul(sigma, sigma)], two);
    }

    #[test]
    fn zero_values_fail_nonzero_systems() {
        for spec in ["Q8", "D8"] {
            let s = setup(spec);
            let system = build_system(&s.bctx, &s.pres).unwrap();
            let zeros = vec![NCPoly::zero(&s.ctx); 2];
            assert!(!check_solution(&system, &zeros));
        }
    }

    #[test]
    fn extension_to_u() {
        let s = setup("D8");
        let b = crate::formula_lib::library_solution(&s).unwrap();
        let c = extend_b(&s.bctx, &s.pres, &b).unwrap();
        let g = s.ctx.group();
        let sigma = s.bctx.sigma();
        assert!(c.value(0).is_zero());
        let expect = &b[0].geometric(sigma, 2) - &NCPoly::one(&s.ctx);
        assert!((&expect - c.value(g.mul(sigma, sigma))).is_zero_mod_ideal());

        let s = setup("Q8");
        let b = crate::formula_lib::library_solution(&s).unwrap();
        let c = extend_b(&s.bctx, &s.pres, &b).unwrap();
        let gen = s.pres.generators[0];
        for k in 0..4 {
            let expect = b[0].geometric(gen, k);
            assert!((&expect - c.value(g_pow(&s, gen, k))).is_zero_mod_ideal());
        }
    }

    fn g_pow(s: &Setup, g: Elem, k: usize) -> Elem {
        s.ctx.group().pow(g, k as i64)
    }

    #[test]
    fn ansatz_solves_quaternion_and_dihedral_eight() {
        for spec in ["Q8", "D8"] {
            let r = run_setup(setup(spec), None, Some(true)).unwrap();
            assert_eq!(r.source, SolutionSource::Ansatz);
            assert!(check_solution(&r.system, &r.b_values));
            assert!(r.assembly.direct_check);
        }
    }

    #[test]
    fn ansatz_on_homogeneous_system_is_zero() {
        let s = setup("Q8");
        let mut system = build_system(&s.bctx, &s.pres).unwrap();
        for e in &mut system {
            e.rhs = Int::ZERO;
        }
        let b = ansatz_solve(&system, &s.ctx, &[0], ANSATZ_MAX_ORDER).unwrap();
        assert!(b.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn ansatz_respects_order_bound() {
        let s = setup("Q16");
        let system = build_system(&s.bctx, &s.pres).unwrap();
        assert!(matches!(
            ansatz_solve(&system, &s.ctx, &[0], 8),
            Err(MethodError::Unsupported(_))
        ));
    }

    #[test]
    fn relation_orientation_does_not_matter() {
        let s = setup("Q8");
        let flipped = Presentation::new(
            s.ctx.group(),
            s.pres.generators.clone(),
            s.pres
                .relations
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        )
        .unwrap();
        let e1 = build_system(&s.bctx, &s.pres).unwrap();
        let e2 = build_system(&s.bctx, &flipped).unwrap();
        for (a, b) in e1.iter().zip(&e2) {
            assert_eq!(a.rhs, -&b.rhs);
            for (x, y) in a.lhs.iter().zip(&b.lhs) {
                assert!((x + y).is_zero());
            }
        }
        let b = crate::formula_lib::library_solution(&s).unwrap();
        assert!(check_solution(&e2, &b));
    }

    #[test]
    fn generic_groups_go_through_the_ansatz() {
        for spec in ["C4", "C8", "C4xC2", "C9"] {
            let r = run_pipeline(&spec.parse().unwrap()).unwrap();
            assert_eq!(r.source, SolutionSource::Ansatz, "{spec}");
            let g = r.setup.ctx.group();
            assert!(r.assembly.y.is_norm_one(&g.whole()), "{spec}");
        }
        assert!(matches!(
            run_pipeline(&"S3".parse().unwrap()),
            Err(MethodError::Unsupported(_))
        ));
    }

    #[test]
    fn library_families_verify() {
        for spec in ["Q16", "D16"] {
            let r = run_pipeline(&spec.parse().unwrap()).unwrap();
            assert_eq!(r.source, SolutionSource::Library);
            assert!(r.assembly.direct_check, "{spec}");
        }
    }

    #[test]
    fn invariant_b_needs_no_witness() {
        // G = C2, U trivial: b(σ) = x_G is U-invariant with (1 + σ)b(σ) = 1
        let g = Arc::new(build_group(&"C2".parse().unwrap()).unwrap());
        let u = g.subgroup_generated(&[]);
        let ctx = RingContext::new(g.clone(), vec![u.clone(), g.whole()]).unwrap();
        let bctx = BContext::new(&ctx, &u, 1).unwrap();
        let x = NCPoly::var(&ctx, 0);
        let b = NCPoly::var(&ctx, 1);
        let asm = assemble(&bctx, &b, &NCPoly::zero(&ctx), &x, true).unwrap();
        assert_eq!(asm.y, &b * &x);
        assert_eq!(asm.y.normal_form(), b);
        let bad = b.scale(&Int::from(2));
        assert!(matches!(
            assemble(&bctx, &bad, &NCPoly::zero(&ctx), &x, true),
            Err(MethodError::NormFailure(_))
        ));
    }
}
