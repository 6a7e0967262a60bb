//! Finite groups given by explicit multiplication tables.
//!
//! Every group used by the library comes from the family catalog in
//! [`catalog`] (cyclic, elementary abelian, generalized quaternion, dihedral,
//! the modular group of order p³, S₃ and direct products), from quotients, or
//! from subgroups promoted to groups in their own right. Element `0` is
//! always the identity.

mod catalog;
mod classify;
mod quotient;
mod subgroup;

use std::fmt;
use std::sync::OnceLock;

pub use catalog::{build_group, direct_product, GroupSpec};
pub use classify::{Classification, IsoInvariants};
pub use quotient::Quotient;
pub use subgroup::{CosetSide, Subgroup};

/// Index of an element inside its [`FiniteGroup`].
pub type Elem = usize;

/// Largest table the library will build.
pub const MAX_TABLE_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("group {0} is not a p-group")]
    NotAPGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no such element: {0}")]
    NoSuchElement(String),
    #[error("group order {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
}

/// A finite group with named elements and a full multiplication table.
pub struct FiniteGroup {
    label: String,
    spec: Option<GroupSpec>,
    names: Vec<String>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    generators: Vec<Elem>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order())
            .field("generators", &self.generator_names())
            .finish()
    }
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            label: self.label.clone(),
            spec: self.spec.clone(),
            names: self.names.clone(),
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            elem_order: self.elem_order.clone(),
            generators: self.generators.clone(),
            subgroups: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, checking the
    /// group axioms, that `0` is the identity and that `generators` generate.
    pub fn from_table(
        label: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<Elem>>,
        generators: Vec<Elem>,
    ) -> Result<FiniteGroup, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty element list".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::BoundExceeded {
                order: n,
                bound: MAX_TABLE_ORDER,
            });
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &table {
            for &c in row {
                if c >= n {
                    return Err(GroupError::NotAGroup(format!("entry {c} out of range")));
                }
                mul.push(c as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::NotAGroup(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inv[a] = b as u32,
                _ => {
                    return Err(GroupError::NotAGroup(format!(
                        "{} has no inverse",
                        names[a]
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let elem_order: Vec<u32> = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1u32);
                while x != 0 {
                    x = at(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        let g = FiniteGroup {
            label: label.into(),
            spec: None,
            names,
            mul,
            inv,
            elem_order,
            generators,
            subgroups: OnceLock::new(),
        };
        if g.generators.iter().any(|&x| x >= n) {
            return Err(GroupError::NotAGroup("generator out of range".into()));
        }
        if g.closure(&g.generators).len() != n {
            return Err(GroupError::NotAGroup(
                "generator set does not generate".into(),
            ));
        }
        Ok(g)
    }

    pub(crate) fn with_spec(mut self, spec: GroupSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The catalog description this group was built from, if any.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// `{"spec", "order", "elements", "mul"}`, with `spec` null for groups
    /// outside the catalog.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct GroupFile<'a> {
            spec: Option<String>,
            order: usize,
            elements: &'a [String],
            mul: Vec<Vec<Elem>>,
        }
        let file = GroupFile {
            spec: self.spec.as_ref().map(|s| s.to_string()),
            order: self.order(),
            elements: &self.names,
            mul: self.table(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order() + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as Elem
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.elem_order(a) as i64;
        let k = k.rem_euclid(ord);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g h g⁻¹`
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elem_order(&self, a: Elem) -> usize {
        self.elem_order[a] as usize
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|&g| self.name(g)).collect()
    }

    /// Product of a word, read left to right.
    pub fn eval_word(&self, word: &[Elem]) -> Elem {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.elem_order(a))
            .fold(1, num_integer::lcm)
    }

    /// The prime `p` if the order is a positive power of `p`.
    pub fn prime(&self) -> Option<usize> {
        prime_power_base(self.order())
    }

    /// Shortest-then-lexicographically-least word in `gens` for every
    /// element reachable from the identity. Letters are positions in `gens`.
    pub fn canonical_words(&self, gens: &[Elem]) -> Vec<Option<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order()];
        words[0] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(i);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    /// Searches for an isomorphism `self → other`, returned as the image of
    /// every element. The search assigns images to the generators of `self`
    /// and checks the resulting map against both tables.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<Elem>> {
        if self.order() != other.order() {
            return None;
        }
        let gens = self.generators.clone();
        let words = self.canonical_words(&gens);
        let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.unwrap()).collect();
        let candidates: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&g| {
                other
                    .elements()
                    .filter(|&h| other.elem_order(h) == self.elem_order(g))
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        self.iso_search(other, &words, &candidates, &mut choice, 0)
    }

    fn iso_search(
        &self,
        other: &FiniteGroup,
        words: &[Vec<usize>],
        candidates: &[Vec<Elem>],
        choice: &mut Vec<Elem>,
        depth: usize,
    ) -> Option<Vec<Elem>> {
        if depth == candidates.len() {
            let map: Vec<Elem> = words
                .iter()
                .map(|w| w.iter().fold(0, |acc, &l| other.mul(acc, choice[l])))
                .collect();
            let mut seen = vec![false; other.order()];
            for &m in &map {
                if std::mem::replace(&mut seen[m], true) {
                    return None;
                }
            }
            for a in self.elements() {
                for b in self.elements() {
                    if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                        return None;
                    }
                }
            }
            return Some(map);
        }
        for &c in &candidates[depth] {
            choice[depth] = c;
            if let Some(m) = self.iso_search(other, words, candidates, choice, depth + 1) {
                return Some(m);
            }
        }
        None
    }
}

/// `Some(p)` when `n = p^k` with `k ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as `(p, a)` pairs in increasing order of `p`.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut a = 0;
        while n.is_multiple_of(d) {
            n /= d;
            a += 1;
        }
        if a > 0 {
            out.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
