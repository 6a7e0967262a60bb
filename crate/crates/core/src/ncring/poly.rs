use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::group::{Elem, Subgroup};
use crate::Int;

use super::{Ctx, GroupRingElement, RingError, Sym, Word};

type Acc = FxHashMap<Word, Int>;

/// Work below this many elementary steps stays on the calling thread.
const PAR_THRESHOLD: usize = 20_000;

/// An element of the free ring on the symbols `g(x_v)` of a context, with
/// exact integer coefficients. Terms are kept sorted (deglex) with like terms
/// collected and no zero coefficients. Nothing is reduced modulo the norm
/// relations until [`NCPoly::normal_form`] is called.
#[derive(Clone)]
pub struct NCPoly {
    ctx: Ctx,
    terms: Vec<(Word, Int)>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

fn add_into(acc: &mut Acc, w: Word, c: Int) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn merge(mut a: Acc, mut b: Acc) -> Acc {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (w, c) in b {
        add_into(&mut a, w, c);
    }
    a
}

/// Runs `job(i, acc)` for `i < n`, in parallel when `work` is large, and
/// collects everything emitted into one polynomial.
fn collect_jobs<F>(ctx: &Ctx, n: usize, work: usize, job: F) -> NCPoly
where
    F: Fn(usize, &mut Acc) + Sync,
{
    let acc = if work < PAR_THRESHOLD || n < 2 {
        let mut acc = Acc::default();
        for i in 0..n {
            job(i, &mut acc);
        }
        acc
    } else {
        (0..n)
            .into_par_iter()
            .fold(Acc::default, |mut acc, i| {
                job(i, &mut acc);
                acc
            })
            .reduce(Acc::default, merge)
    };
    NCPoly::from_acc(ctx.clone(), acc)
}

impl NCPoly {
    fn from_acc(ctx: Ctx, acc: Acc) -> NCPoly {
        let mut terms: Vec<(Word, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        NCPoly { ctx, terms }
    }

    pub fn zero(ctx: &Ctx) -> NCPoly {
        NCPoly {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> NCPoly {
        Self::constant(ctx, Int::ONE)
    }

    pub fn constant(ctx: &Ctx, c: impl Into<Int>) -> NCPoly {
        let c = c.into();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Word::empty(), c)]
        };
        NCPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The generator `g(x_v)`.
    pub fn sym(ctx: &Ctx, g: Elem, v: usize) -> NCPoly {
        assert!(
            v < ctx.num_vars() && g < ctx.group().order(),
            "generator outside context"
        );
        NCPoly {
            ctx: ctx.clone(),
            terms: vec![(Word::from_syms(&[Sym::new(g, v)]), Int::ONE)],
        }
    }

    /// `x_v` itself.
    pub fn var(ctx: &Ctx, v: usize) -> NCPoly {
        Self::sym(ctx, 0, v)
    }

    /// Collects `(coefficient, word)` pairs, checking every generator.
    pub fn from_terms<I>(ctx: &Ctx, terms: I) -> Result<NCPoly, RingError>
    where
        I: IntoIterator<Item = (Int, Word)>,
    {
        let mut acc = Acc::default();
        for (c, w) in terms {
            for &s in w.syms() {
                ctx.check_sym(s)?;
            }
            add_into(&mut acc, w, c);
        }
        Ok(Self::from_acc(ctx.clone(), acc))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Word, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty() && self.terms[0].1.is_one()
    }

    pub fn degree(&self) -> usize {
        self.terms.last().map_or(0, |(w, _)| w.len())
    }

    /// `(number of monomials, maximal degree)` of the stored form.
    pub fn stats(&self) -> (usize, usize) {
        (self.len(), self.degree())
    }

    pub fn constant_term(&self) -> Int {
        match self.terms.first() {
            Some((w, c)) if w.is_empty() => c.clone(),
            _ => Int::ZERO,
        }
    }

    pub fn coefficient(&self, w: &Word) -> Int {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(w))
            .map_or(Int::ZERO, |i| self.terms[i].1.clone())
    }

    fn same_ctx(&self, other: &NCPoly) -> Result<(), RingError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(RingError::MixedContext)
        }
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly, RingError> {
        self.same_ctx(other)?;
        Ok(self.merge_sorted(other, false))
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly, RingError> {
        self.same_ctx(other)?;
        Ok(self.merge_sorted(other, true))
    }

    fn merge_sorted(&self, other: &NCPoly, negate: bool) -> NCPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Int| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(w, c)| (w.clone(), sign(c))));
        NCPoly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly, RingError> {
        self.same_ctx(other)?;
        let (a, b) = (&self.terms, &other.terms);
        Ok(collect_jobs(
            &self.ctx,
            a.len(),
            a.len() * b.len(),
            |i, acc| {
                let (wa, ca) = &a[i];
                for (wb, cb) in b {
                    add_into(acc, wa.concat(wb), ca * cb);
                }
            },
        ))
    }

    pub fn scale(&self, c: &Int) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(&self.ctx);
        }
        NCPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// The ring automorphism induced by `g`: `k(x_v) ↦ (gk)(x_v)`.
    pub fn act(&self, g: Elem) -> NCPoly {
        if g == 0 {
            return self.clone();
        }
        let grp = self.ctx.group();
        let mut terms: Vec<(Word, Int)> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w2: Word = w
                    .syms()
                    .iter()
                    .map(|&s| s.with_elem(grp.mul(g, s.elem())))
                    .collect();
                (w2, c.clone())
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        NCPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// `Σ_g A[g]·g(p)`
    pub fn apply(&self, a: &GroupRingElement) -> NCPoly {
        let coeffs: Vec<(Elem, &Int)> = a.iter().collect();
        let grp = self.ctx.group().clone();
        assert!(
            a.group_matches(&grp),
            "group ring element over a different group"
        );
        collect_jobs(
            &self.ctx,
            coeffs.len(),
            coeffs.len() * self.len(),
            |i, acc| {
                let (g, k) = coeffs[i];
                for (w, c) in &self.terms {
                    let w2: Word = w
                        .syms()
                        .iter()
                        .map(|&s| s.with_elem(grp.mul(g, s.elem())))
                        .collect();
                    add_into(acc, w2, c * k);
                }
            },
        )
    }

    /// `N_H(p) = Σ_{h ∈ H} h(p)`
    pub fn norm(&self, h: &Subgroup) -> NCPoly {
        self.apply(&GroupRingElement::norm_element(self.ctx.group(), h))
    }

    /// `(1 + g + ⋯ + g^{k−1})(p)`
    pub fn geometric(&self, g: Elem, k: usize) -> NCPoly {
        self.apply(&GroupRingElement::geometric(self.ctx.group(), g, k))
    }

    /// The unique representative in the free ring on the kept generators.
    pub fn normal_form(&self) -> NCPoly {
        let ctx = &self.ctx;
        if self
            .terms
            .iter()
            .all(|(w, _)| w.syms().iter().all(|&s| !ctx.is_eliminated(s)))
        {
            return self.clone();
        }
        let work = self
            .terms
            .iter()
            .map(|(w, _)| w.len().max(1))
            .sum::<usize>()
            * 4;
        collect_jobs(ctx, self.terms.len(), work, |i, acc| {
            let (w, c) = &self.terms[i];
            nf_word_into(ctx, w, c, acc)
        })
    }

    pub fn is_normal_form(&self) -> bool {
        self.terms
            .iter()
            .all(|(w, _)| w.syms().iter().all(|&s| !self.ctx.is_eliminated(s)))
    }

    /// Whether `N_H(p) = 1` in the universal ring.
    pub fn is_norm_one(&self, h: &Subgroup) -> bool {
        self.norm(h).normal_form().is_one()
    }

    /// Whether `p = 0` in the universal ring.
    pub fn is_zero_mod_ideal(&self) -> bool {
        self.normal_form().is_zero()
    }

    /// Ring map into `target`: `g(x_v) ↦ act(elem_map[g], images[v])`.
    ///
    /// `elem_map` need not be a homomorphism; whether the result means
    /// anything is up to the caller to verify.
    pub fn substitute_into(
        &self,
        target: &Ctx,
        elem_map: &[Elem],
        images: &[NCPoly],
    ) -> Result<NCPoly, RingError> {
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
        let mut cache: FxHashMap<Sym, NCPoly> = FxHashMap::default();
        for (w, _) in &self.terms {
            for &s in w.syms() {
                cache
                    .entry(s)
                    .or_insert_with(|| images[s.var()].act(elem_map[s.elem()]));
            }
        }
        let work: usize = self
            .terms
            .iter()
            .map(|(w, _)| w.syms().iter().map(|s| cache[s].len()).product::<usize>())
            .sum();
        Ok(collect_jobs(target, self.terms.len(), work, |i, acc| {
            let (w, c) = &self.terms[i];
            let mut partial: Vec<(Word, Int)> = vec![(Word::empty(), c.clone())];
            for s in w.syms() {
                let img = &cache[s];
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (pw, pc) in &partial {
                    for (iw, ic) in img.terms() {
                        next.push((pw.concat(iw), pc * ic));
                    }
                }
                partial = next;
            }
            for (w, c) in partial {
                add_into(acc, w, c);
            }
        }))
    }

    /// Replaces `x_var` by `replacement` within the same context.
    pub fn substitute(&self, var: usize, replacement: &NCPoly) -> Result<NCPoly, RingError> {
        self.same_ctx(replacement)?;
        if var >= self.ctx.num_vars() {
            return Err(RingError::UnknownVariable(var));
        }
        let elem_map: Vec<Elem> = self.ctx.group().elements().collect();
        let images: Vec<NCPoly> = (0..self.ctx.num_vars())
            .map(|v| {
                if v == var {
                    replacement.clone()
                } else {
                    NCPoly::var(&self.ctx, v)
                }
            })
            .collect();
        self.substitute_into(&self.ctx, &elem_map, &images)
    }

    /// The same polynomial read in another context over the same group,
    /// variables renumbered by `var_map`.
    pub fn relabel(&self, target: &Ctx, var_map: &[usize]) -> Result<NCPoly, RingError> {
        if target.group().order() != self.ctx.group().order()
            || var_map.len() != self.ctx.num_vars()
        {
            return Err(RingError::ContextMismatch(
                "relabel needs the same group".into(),
            ));
        }
        for (v, &tv) in var_map.iter().enumerate() {
            if tv >= target.num_vars() || target.var_subgroup(tv) != self.ctx.var_subgroup(v) {
                return Err(RingError::ContextMismatch(format!(
                    "variable {v} has no counterpart"
                )));
            }
        }
        let mut terms: Vec<(Word, Int)> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w2: Word = w
                    .syms()
                    .iter()
                    .map(|s| Sym::new(s.elem(), var_map[s.var()]))
                    .collect();
                (w2, c.clone())
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Ok(NCPoly {
            ctx: target.clone(),
            terms,
        })
    }

    /// Flips the sign of the `i`-th term.
    pub fn with_term_negated(&self, i: usize) -> NCPoly {
        let mut p = self.clone();
        p.terms[i].1 = -&p.terms[i].1;
        p
    }
}

fn nf_word_into(ctx: &Ctx, w: &Word, c: &Int, acc: &mut Acc) {
    if w.syms().iter().all(|&s| !ctx.is_eliminated(s)) {
        add_into(acc, w.clone(), c.clone());
        return;
    }
    // coset mates are never eliminated, so a single pass suffices
    let mut partial: Vec<(Word, Int)> = vec![(Word::empty(), c.clone())];
    for &s in w.syms() {
        match ctx.replacement(s) {
            None => {
                for (pw, _) in partial.iter_mut() {
                    pw.push(s);
                }
            }
            Some(mates) => {
                let mut next = Vec::with_capacity(partial.len() * (mates.len() + 1));
                for (pw, pc) in partial {
                    let neg = -&pc;
                    for &k in mates {
                        let mut w2 = pw.clone();
                        w2.push(s.with_elem(k));
                        next.push((w2, neg.clone()));
                    }
                    next.push((pw, pc));
                }
                partial = next;
            }
        }
    }
    for (w, c) in partial {
        add_into(acc, w, c);
    }
}

macro_rules! ring_op {
    ($tr:ident, $f:ident, $try:ident) => {
        impl $tr<&NCPoly> for &NCPoly {
            type Output = NCPoly;
            fn $f(self, rhs: &NCPoly) -> NCPoly {
                self.$try(rhs).expect("operands from different contexts")
            }
        }
        impl $tr<NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $f(self, rhs: NCPoly) -> NCPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $f(self, rhs: &NCPoly) -> NCPoly {
                (&self).$f(rhs)
            }
        }
    };
}

ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Plain-text rendering, e.g. `x*s(x) + x*s(x)*x - x*x*s(x)`.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let grp = self.ctx.group();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            for (k, s) in w.syms().iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                let name = self.ctx.var_name(s.var());
                if s.elem() == 0 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{}({name})", grp.name(s.elem()))?;
                }
            }
        }
        Ok(())
    }
}
