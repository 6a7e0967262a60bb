use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::group::Elem;

/// The generator `g(x_v)`: element in the low 16 bits, variable above.
/// The packed order is lexicographic in `(var, element)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(u32);

impl Sym {
    pub const MAX_ELEM: usize = u16::MAX as usize;

    pub fn new(elem: Elem, var: usize) -> Sym {
        debug_assert!(elem <= Self::MAX_ELEM && var <= u16::MAX as usize);
        Sym(((var as u32) << 16) | elem as u32)
    }

    #[inline]
    pub fn elem(self) -> Elem {
        (self.0 & 0xffff) as Elem
    }

    #[inline]
    pub fn var(self) -> usize {
        (self.0 >> 16) as usize
    }

    pub fn with_elem(self, elem: Elem) -> Sym {
        Sym::new(elem, self.var())
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x{})", self.elem(), self.var())
    }
}

/// A monomial. Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub(crate) SmallVec<[Sym; 6]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_syms(syms: &[Sym]) -> Word {
        Word(SmallVec::from_slice(syms))
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Sym> for Word {
    fn from_iter<I: IntoIterator<Item = Sym>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}
