use crate::group::{Elem, Subgroup};
use crate::Int;

use super::{Ctx, NCPoly, RingError};

/// The setting `(U, σ)` for elements of the form
/// `r + Σ_k c_k σ^k(φ)`, where `φ` is the indicator function of `U`.
///
/// `φ` is `U`-invariant and its `p` translates sum to `1`, which is all the
/// arithmetic below uses.
#[derive(Clone, Debug)]
pub struct BContext {
    ctx: Ctx,
    u: Subgroup,
    sigma: Elem,
    p: usize,
    /// `class[g] = k` where `gU = σ^k U`
    class: Vec<usize>,
}

/// `ring + Σ_k phi[k]·σ^k(φ)`, canonical when `phi[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElement {
    pub ring: NCPoly,
    pub phi: Vec<Int>,
}

impl BContext {
    pub fn new(ctx: &Ctx, u: &Subgroup, sigma: Elem) -> Result<BContext, RingError> {
        let g = ctx.group();
        if !g.is_normal(u) {
            return Err(RingError::BadQuotient("U is not normal".into()));
        }
        let p = g.order() / u.order();
        if !crate::group::is_prime(p) {
            return Err(RingError::BadQuotient(format!("index {p} is not prime")));
        }
        let mut class = vec![usize::MAX; g.order()];
        let mut s = 0;
        for k in 0..p {
            for &x in u.members() {
                let y = g.mul(s, x);
                if class[y] != usize::MAX {
                    return Err(RingError::BadQuotient("σ does not generate G/U".into()));
                }
                class[y] = k;
            }
            s = g.mul(s, sigma);
        }
        Ok(BContext {
            ctx: ctx.clone(),
            u: u.clone(),
            sigma,
            p,
            class,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.u
    }

    pub fn sigma(&self) -> Elem {
        self.sigma
    }

    pub fn index(&self) -> usize {
        self.p
    }

    /// `k` with `gU = σ^k U`.
    pub fn class_of(&self, g: Elem) -> usize {
        self.class[g]
    }

    pub fn zero(&self) -> BElement {
        BElement {
            ring: NCPoly::zero(&self.ctx),
            phi: vec![Int::ZERO; self.p],
        }
    }

    pub fn from_ring(&self, r: NCPoly) -> BElement {
        BElement {
            ring: r,
            phi: vec![Int::ZERO; self.p],
        }
    }

    /// `σ^k(φ)`
    pub fn phi_translate(&self, k: usize) -> BElement {
        let mut phi = vec![Int::ZERO; self.p];
        phi[k % self.p] = Int::ONE;
        self.canonical(BElement {
            ring: NCPoly::zero(&self.ctx),
            phi,
        })
    }

    /// Folds `phi[0]` into the ring part using `Σ_k σ^k(φ) = 1`.
    pub fn canonical(&self, b: BElement) -> BElement {
        let c = b.phi[0].clone();
        if c.is_zero() {
            return b;
        }
        let phi = b.phi.iter().map(|x| x - &c).collect();
        BElement {
            ring: &b.ring + &NCPoly::constant(&self.ctx, c),
            phi,
        }
    }

    pub fn add(&self, a: &BElement, b: &BElement) -> BElement {
        let phi = a.phi.iter().zip(&b.phi).map(|(x, y)| x + y).collect();
        self.canonical(BElement {
            ring: &a.ring + &b.ring,
            phi,
        })
    }

    pub fn neg(&self, a: &BElement) -> BElement {
        BElement {
            ring: -&a.ring,
            phi: a.phi.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, a: &BElement, b: &BElement) -> BElement {
        self.add(a, &self.neg(b))
    }

    /// `g·b`: acts on the ring part and rotates the φ-translates by the class
    /// of `g`.
    pub fn act(&self, g: Elem, b: &BElement) -> BElement {
        let k = self.class[g];
        let mut phi = vec![Int::ZERO; self.p];
        for (j, c) in b.phi.iter().enumerate() {
            phi[(j + k) % self.p] = c.clone();
        }
        self.canonical(BElement {
            ring: b.ring.act(g),
            phi,
        })
    }

    /// The ring element, provided no φ-translates remain.
    pub fn coerce(&self, b: &BElement) -> Result<NCPoly, RingError> {
        let b = self.canonical(b.clone());
        if b.phi.iter().any(|c| !c.is_zero()) {
            return Err(RingError::NonConstantPhiPart);
        }
        Ok(b.ring)
    }
}
