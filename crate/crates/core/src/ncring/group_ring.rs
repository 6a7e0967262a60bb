use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::Int;

/// An element of the integral group ring `Z[G]`.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<Elem, Int>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.group_matches(&other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    pub fn basis(group: &Arc<FiniteGroup>, g: Elem) -> Self {
        Self::from_pairs(group, [(g, Int::ONE)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Elem, Int)>>(
        group: &Arc<FiniteGroup>,
        pairs: I,
    ) -> Self {
        let mut coeffs: BTreeMap<Elem, Int> = BTreeMap::new();
        for (g, c) in pairs {
            assert!(g < group.order(), "element outside the group");
            *coeffs.entry(g).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        GroupRingElement {
            group: group.clone(),
            coeffs,
        }
    }

    /// `Σ_{h ∈ H} h`
    pub fn norm_element(group: &Arc<FiniteGroup>, h: &Subgroup) -> Self {
        Self::from_pairs(group, h.members().iter().map(|&x| (x, Int::ONE)))
    }

    /// `1 + g + ⋯ + g^{k−1}`
    pub fn geometric(group: &Arc<FiniteGroup>, g: Elem, k: usize) -> Self {
        let mut x = 0;
        let mut pairs = Vec::with_capacity(k);
        for _ in 0..k {
            pairs.push((x, Int::ONE));
            x = group.mul(x, g);
        }
        Self::from_pairs(group, pairs)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub(crate) fn group_matches(&self, other: &Arc<FiniteGroup>) -> bool {
        Arc::ptr_eq(&self.group, other) || *self.group == **other
    }

    pub fn coeff(&self, g: Elem) -> Int {
        self.coeffs.get(&g).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, &Int)> + '_ {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of the coefficients (the augmentation).
    pub fn augmentation(&self) -> Int {
        self.coeffs.values().cloned().sum()
    }

    pub fn scale(&self, c: &Int) -> Self {
        Self::from_pairs(&self.group, self.coeffs.iter().map(|(&g, x)| (g, x * c)))
    }

    fn check(&self, other: &Self) {
        assert!(
            self.group_matches(&other.group),
            "group ring elements over different groups"
        );
    }
}

/// Both sides compared in canonical form.
pub fn identity_check(lhs: &GroupRingElement, rhs: &GroupRingElement) -> bool {
    lhs == rhs
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.check(rhs);
        GroupRingElement::from_pairs(
            &self.group,
            self.iter().chain(rhs.iter()).map(|(g, c)| (g, c.clone())),
        )
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&Int::from(-1))
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.check(rhs);
        let mut pairs = Vec::with_capacity(self.coeffs.len() * rhs.coeffs.len());
        for (a, x) in self.iter() {
            for (b, y) in rhs.iter() {
                pairs.push((self.group.mul(a, b), x * y));
            }
        }
        GroupRingElement::from_pairs(&self.group, pairs)
    }
}

macro_rules! owned_op {
    ($tr:ident, $f:ident) => {
        impl $tr for GroupRingElement {
            type Output = GroupRingElement;
            fn $f(self, rhs: GroupRingElement) -> GroupRingElement {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 + s - 2*st` style, in element order.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&g, c)) in self.coeffs.iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let name = if g == 0 { "1" } else { self.group.name(g) };
            match (abs.is_one(), g == 0) {
                (true, _) => write!(f, "{name}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{name}")?,
            }
        }
        Ok(())
    }
}
