//! Numeric falsifier: formulas evaluated in `M_n(Z)`, `n = |G|`, where `G`
//! acts through the regular representation, `x ↦ P_g·x·P_g⁻¹`.
//!
//! For a subgroup `H` the diagonal idempotent on the least right coset
//! representatives of `H` has `N_H = I`. A second, noncommutative model adds
//! `M − h₀(M)` for a sparse random `M` and some `h₀ ∈ H`, which keeps the norm
//! equal to `I`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::ncring::{NCPoly, Sym};
use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Seed of the perturbed model used by [`oracle_check`].
pub const DEFAULT_SEED: u64 = 0x6e66;

/// Dense square matrix with exact entries, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![Int::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Int::ONE;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Int) -> IntMatrix {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| *self.get(i, j) == if i == j { Int::ONE } else { Int::ZERO })
        })
    }

    fn check_dim(&self, other: &IntMatrix) -> Result<(), OracleError> {
        if self.n != other.n {
            return Err(OracleError::DimensionMismatch(format!(
                "{} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, OracleError> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix { n: self.n, data })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, OracleError> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix { n: self.n, data })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, OracleError> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `P_g·self·P_g⁻¹`: entry `(i, j)` moves to `(gi, gj)`.
    pub fn conjugate(&self, group: &FiniteGroup, g: Elem) -> Result<IntMatrix, OracleError> {
        self.check_group(group)?;
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(group.mul(g, i), group.mul(g, j), self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `Σ_{h ∈ H} P_h·self·P_h⁻¹`
    pub fn norm(&self, group: &FiniteGroup, h: &Subgroup) -> Result<IntMatrix, OracleError> {
        self.check_group(group)?;
        let mut out = Self::zero(self.n);
        for &g in h.members() {
            for i in 0..self.n {
                for j in 0..self.n {
                    let v = self.get(i, j);
                    if !v.is_zero() {
                        out.data[group.mul(g, i) * self.n + group.mul(g, j)] += v.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_group(&self, group: &FiniteGroup) -> Result<(), OracleError> {
        if self.n != group.order() {
            return Err(OracleError::DimensionMismatch(format!(
                "{}×{} matrix for a group of order {}",
                self.n,
                self.n,
                group.order()
            )));
        }
        Ok(())
    }
}

/// `P_g` with `P_g e_k = e_{gk}`, for every element.
pub fn regular_action(group: &FiniteGroup) -> Vec<IntMatrix> {
    let n = group.order();
    group
        .elements()
        .map(|g| {
            IntMatrix::from_fn(n, |i, j| {
                if i == group.mul(g, j) {
                    Int::ONE
                } else {
                    Int::ZERO
                }
            })
        })
        .collect()
}

/// Least element of each right coset `Hr`.
fn right_coset_reps(group: &FiniteGroup, h: &Subgroup) -> Vec<Elem> {
    group
        .elements()
        .filter(|&r| h.members().iter().all(|&k| group.mul(k, r) >= r))
        .collect()
}

/// The diagonal `0/1` matrix supported on the least right coset
/// representatives of `H`.
pub fn model_norm_one(group: &FiniteGroup, h: &Subgroup) -> IntMatrix {
    let n = group.order();
    let mut m = IntMatrix::zero(n);
    for r in right_coset_reps(group, h) {
        m.set(r, r, Int::ONE);
    }
    m
}

/// `model_norm_one(H) + M − h₀(M)` with `M` a seeded sparse random matrix and
/// `h₀` the first generator of `H`; equal to the diagonal model when `H` is
/// trivial.
pub fn perturbed_model(group: &FiniteGroup, h: &Subgroup, seed: u64) -> IntMatrix {
    let n = group.order();
    let mut m = model_norm_one(group, h);
    let Some(&h0) = h.generators().first() else {
        return m;
    };
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ ((h.members().iter().sum::<usize>() as u64) << 8));
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let c = Int::from(rng.gen_range(1..=2i64) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let (a, b) = (group.mul(h0, i), group.mul(h0, j));
        let v = m.get(i, j) + &c;
        m.set(i, j, v);
        let v = m.get(a, b) - &c;
        m.set(a, b, v);
    }
    m
}

type SparseRows = Vec<Vec<(u32, i128)>>;

fn to_sparse(m: &IntMatrix) -> Option<SparseRows> {
    let n = m.dim();
    let mut rows = vec![Vec::new(); n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            let v = m.get(i, j);
            if !v.is_zero() {
                row.push((j as u32, v.to_bigint().to_i128()?));
            }
        }
    }
    Some(rows)
}

fn conj_sparse(group: &FiniteGroup, rows: &SparseRows, g: Elem) -> SparseRows {
    let mut out = vec![Vec::new(); rows.len()];
    for (i, row) in rows.iter().enumerate() {
        let gi = group.mul(g, i);
        out[gi] = row
            .iter()
            .map(|&(j, v)| (group.mul(g, j as usize) as u32, v))
            .collect();
        out[gi].sort_unstable_by_key(|e| e.0);
    }
    out
}

/// Sparse product with overflow detection.
fn mul_sparse(
    a: &SparseRows,
    b: &SparseRows,
    buf: &mut [i128],
    touched: &mut Vec<u32>,
) -> Option<SparseRows> {
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        for &(k, x) in row {
            for &(j, y) in &b[k as usize] {
                let slot = &mut buf[j as usize];
                if *slot == 0 {
                    touched.push(j);
                }
                *slot = slot.checked_add(x.checked_mul(y)?)?;
            }
        }
        touched.sort_unstable();
        let mut r = Vec::with_capacity(touched.len());
        for &j in touched.iter() {
            let v = std::mem::take(&mut buf[j as usize]);
            if v != 0 {
                r.push((j, v));
            }
        }
        touched.clear();
        out.push(r);
    }
    Some(out)
}

/// Evaluates a chunk of terms, reusing the product of the common prefix
/// with the previous word.
fn eval_chunk(
    n: usize,
    terms: &[(crate::ncring::Word, Int)],
    cache: &FxHashMap<Sym, SparseRows>,
) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; n * n];
    let mut buf = vec![0i128; n];
    let mut touched = Vec::new();
    let mut stack: Vec<SparseRows> = Vec::new();
    let mut prev: &[Sym] = &[];
    let identity: SparseRows = (0..n).map(|i| vec![(i as u32, 1i128)]).collect();
    for (w, c) in terms {
        let syms = w.syms();
        let common = syms.iter().zip(prev).take_while(|(a, b)| a == b).count();
        stack.truncate(common);
        for &s in &syms[stack.len()..] {
            let m = &cache[&s];
            let next = match stack.last() {
                Some(top) => mul_sparse(top, m, &mut buf, &mut touched)?,
                None => m.clone(),
            };
            stack.push(next);
        }
        prev = syms;
        let c = c.to_bigint().to_i128()?;
        let top = stack.last().unwrap_or(&identity);
        for (i, row) in top.iter().enumerate() {
            for &(j, v) in row {
                let slot = &mut acc[i * n + j as usize];
                *slot = slot.checked_add(c.checked_mul(v)?)?;
            }
        }
    }
    Some(acc)
}

fn eval_fast(p: &NCPoly, assignment: &[IntMatrix]) -> Option<IntMatrix> {
    let ctx = p.ctx();
    let group = ctx.group();
    let n = group.order();
    let base: Vec<SparseRows> = assignment.iter().map(to_sparse).collect::<Option<_>>()?;
    let mut cache = FxHashMap::default();
    for (w, _) in p.terms() {
        for &s in w.syms() {
            cache
                .entry(s)
                .or_insert_with(|| conj_sparse(group, &base[s.var()], s.elem()));
        }
    }
    let chunks: Vec<Option<Vec<i128>>> = p
        .terms()
        .par_chunks(4096)
        .map(|ch| eval_chunk(n, ch, &cache))
        .collect();
    let mut total = vec![0i128; n * n];
    for ch in chunks {
        for (t, v) in total.iter_mut().zip(ch?) {
            *t = t.checked_add(v)?;
        }
    }
    Some(IntMatrix {
        n,
        data: total
            .into_iter()
            .map(|v| Int::from(BigInt::from(v)))
            .collect(),
    })
}

fn eval_exact(p: &NCPoly, assignment: &[IntMatrix]) -> Result<IntMatrix, OracleError> {
    let group = p.ctx().group();
    let n = group.order();
    let mut acc = IntMatrix::zero(n);
    for (w, c) in p.terms() {
        let mut m = IntMatrix::identity(n);
        for &s in w.syms() {
            m = m.mul(&assignment[s.var()].conjugate(group, s.elem())?)?;
        }
        for (a, b) in acc.data.iter_mut().zip(&m.data) {
            *a += c * b;
        }
    }
    Ok(acc)
}

/// The image of `p` under `g(x_v) ↦ P_g·assignment[v]·P_g⁻¹`.
pub fn evaluate(p: &NCPoly, assignment: &[IntMatrix]) -> Result<IntMatrix, OracleError> {
    let ctx = p.ctx();
    let n = ctx.group().order();
    if assignment.len() != ctx.num_vars() {
        return Err(OracleError::DimensionMismatch(format!(
            "{} matrices for {} variables",
            assignment.len(),
            ctx.num_vars()
        )));
    }
    if let Some(m) = assignment.iter().find(|m| m.dim() != n) {
        return Err(OracleError::DimensionMismatch(format!(
            "{}×{} matrix, group of order {n}",
            m.dim(),
            m.dim()
        )));
    }
    match eval_fast(p, assignment) {
        Some(m) => Ok(m),
        None => eval_exact(p, assignment),
    }
}

/// The diagonal model for every variable of the context.
pub fn diagonal_assignment(p: &NCPoly) -> Vec<IntMatrix> {
    let ctx = p.ctx();
    (0..ctx.num_vars())
        .map(|v| model_norm_one(ctx.group(), ctx.var_subgroup(v)))
        .collect()
}

/// The perturbed model for every variable of the context.
pub fn perturbed_assignment(p: &NCPoly, seed: u64) -> Vec<IntMatrix> {
    let ctx = p.ctx();
    (0..ctx.num_vars())
        .map(|v| {
            perturbed_model(
                ctx.group(),
                ctx.var_subgroup(v),
                seed.wrapping_add(v as u64),
            )
        })
        .collect()
}

/// Whether `N_S(p)` evaluates to `I` under `assignment`.
pub fn oracle_check_with(
    p: &NCPoly,
    s: &Subgroup,
    assignment: &[IntMatrix],
) -> Result<bool, OracleError> {
    let y = evaluate(p, assignment)?;
    Ok(y.norm(p.ctx().group(), s)?.is_identity())
}

/// `N_S(p) = I` in both the diagonal and the perturbed model.
pub fn oracle_check(p: &NCPoly, s: &Subgroup) -> Result<bool, OracleError> {
    Ok(oracle_check_with(p, s, &diagonal_assignment(p))?
        && oracle_check_with(p, s, &perturbed_assignment(p, DEFAULT_SEED))?)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::build_group;
    use crate::ncring::RingContext;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn regular_action_is_a_homomorphism() {
        for spec in ["C4", "Q8", "D8", "E(2,2)", "D16", "Q16", "C4xC2"] {
            let g = grp(spec);
            let p = regular_action(&g);
            assert!(p[0].is_identity());
            for a in g.elements() {
                assert!(p[a].mul(&p[g.inv(a)]).unwrap().is_identity());
                for b in g.elements() {
                    assert_eq!(p[a].mul(&p[b]).unwrap(), p[g.mul(a, b)], "{spec}");
                }
            }
        }
    }

    #[test]
    fn conjugate_matches_permutation_matrices() {
        let g = grp("Q8");
        let p = regular_action(&g);
        let x = IntMatrix::from_fn(8, |i, j| Int::from((i * 8 + j) as i64 % 5 - 2));
        for a in g.elements() {
            let direct = p[a].mul(&x).unwrap().mul(&p[g.inv(a)]).unwrap();
            assert_eq!(x.conjugate(&g, a).unwrap(), direct);
        }
    }

    #[test]
    fn models_have_norm_one() {
        for spec in ["Q8", "D8", "G27"] {
            let g = grp(spec);
            for h in g.all_subgroups() {
                assert!(
                    model_norm_one(&g, h).norm(&g, h).unwrap().is_identity(),
                    "{spec}"
                );
                let pm = perturbed_model(&g, h, 7);
                assert!(pm.norm(&g, h).unwrap().is_identity(), "{spec}");
            }
        }
        let g = grp("Q8");
        assert!(model_norm_one(&g, &g.subgroup_generated(&[])).is_identity());
        assert_eq!(right_coset_reps(&g, &g.whole()), vec![0]);
    }

    #[test]
    fn evaluation_basics() {
        let g = grp("C4");
        let ctx = RingContext::new(g.clone(), vec![g.subgroup_generated(&[2])]).unwrap();
        let one = NCPoly::one(&ctx);
        let a = diagonal_assignment(&one);
        assert!(evaluate(&one, &a).unwrap().is_identity());
        assert!(evaluate(&NCPoly::zero(&ctx), &a).unwrap() == IntMatrix::zero(4));
        assert!(matches!(
            evaluate(&one, &[]),
            Err(OracleError::DimensionMismatch(_))
        ));
        assert!(matches!(
            evaluate(&one, &[IntMatrix::identity(3)]),
            Err(OracleError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn fast_and_exact_paths_agree() {
        let g = grp("D8");
        let ctx = RingContext::new(
            g.clone(),
            vec![g.subgroup_generated(&[2]), g.subgroup_generated(&[4])],
        )
        .unwrap();
        let x = NCPoly::var(&ctx, 0);
        let z = NCPoly::var(&ctx, 1);
        let p = &(&(&x.act(1) * &z.act(3)) * &x) - &(&z.act(5) * &x.act(2)).scale(&Int::from(3));
        let p = &p + &NCPoly::constant(&ctx, 2);
        let a = perturbed_assignment(&p, 11);
        assert_eq!(eval_fast(&p, &a).unwrap(), eval_exact(&p, &a).unwrap());
        let y = evaluate(&p, &a).unwrap();
        assert_eq!(
            evaluate(&p.act(3), &a).unwrap(),
            y.conjugate(&g, 3).unwrap()
        );
    }

    #[test]
    fn palfy_passes_and_a_sign_flip_fails() {
        let p = crate::formula_lib::palfy_c4().unwrap();
        let g = p.ctx().group().clone();
        assert!(oracle_check(&p, &g.whole()).unwrap());
        assert!(!oracle_check(&p.with_term_negated(0), &g.whole()).unwrap());
    }
}
