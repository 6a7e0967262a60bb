use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::group::{CosetSide, Elem, FiniteGroup, Subgroup};

use super::{RingError, Sym};

/// Shared handle to a ring context.
pub type Ctx = Arc<RingContext>;

#[derive(Clone, Debug)]
pub(crate) struct VarInfo {
    pub(crate) subgroup: Subgroup,
    pub(crate) name: String,
    /// for each element: the other members of its left coset when the
    /// element is the eliminated (largest) one, `None` otherwise
    pub(crate) replacement: Vec<Option<Vec<Elem>>>,
}

/// The group together with the subgroups `H` whose variables `x_H` satisfy
/// `N_H(x_H) = 1`. This determines the universal ring and its rewriting
/// system: in each left coset `gH` the largest element `m` is eliminated via
/// `m(x_H) = 1 − Σ_{k ∈ gH, k ≠ m} k(x_H)`.
pub struct RingContext {
    group: Arc<FiniteGroup>,
    vars: Vec<VarInfo>,
    fingerprint: u64,
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                let names: Vec<&str> = v
                    .subgroup
                    .members()
                    .iter()
                    .map(|&m| self.group.name(m))
                    .collect();
                format!("{}={{{}}}", v.name, names.join(","))
            })
            .collect();
        write!(
            f,
            "RingContext({}; {})",
            self.group.label(),
            vars.join("; ")
        )
    }
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl Eq for RingContext {}

impl RingContext {
    /// Builds a context with default variable names (`x` for a single
    /// variable, `x_0, x_1, …` otherwise).
    pub fn new(group: Arc<FiniteGroup>, subgroups: Vec<Subgroup>) -> Result<Ctx, RingError> {
        let names = if subgroups.len() == 1 {
            vec!["x".to_string()]
        } else {
            (0..subgroups.len()).map(|i| format!("x_{i}")).collect()
        };
        Self::with_names(group, subgroups, names)
    }

    pub fn with_names(
        group: Arc<FiniteGroup>,
        subgroups: Vec<Subgroup>,
        names: Vec<String>,
    ) -> Result<Ctx, RingError> {
        if names.len() != subgroups.len() {
            return Err(RingError::InvalidContext("one name per variable".into()));
        }
        if group.order() > Sym::MAX_ELEM || subgroups.len() > u16::MAX as usize {
            return Err(RingError::InvalidContext("context too large".into()));
        }
        for (i, h) in subgroups.iter().enumerate() {
            if h.members().last().is_some_and(|&m| m >= group.order()) {
                return Err(RingError::InvalidContext(
                    "subgroup outside the group".into(),
                ));
            }
            if subgroups[..i].contains(h) {
                return Err(RingError::InvalidContext("duplicate subgroup".into()));
            }
        }
        let mut hasher = DefaultHasher::new();
        group.names().hash(&mut hasher);
        group.table().hash(&mut hasher);
        let vars = subgroups
            .into_iter()
            .zip(names)
            .map(|(h, name)| {
                h.members().hash(&mut hasher);
                let mut replacement = vec![None; group.order()];
                for r in group.coset_reps(&h, CosetSide::Left) {
                    let coset: Vec<Elem> = h.members().iter().map(|&x| group.mul(r, x)).collect();
                    let m = *coset.iter().max().unwrap();
                    let mut others: Vec<Elem> = coset.into_iter().filter(|&k| k != m).collect();
                    others.sort_unstable();
                    replacement[m] = Some(others);
                }
                VarInfo {
                    subgroup: h,
                    name,
                    replacement,
                }
            })
            .collect();
        Ok(Arc::new(RingContext {
            group,
            vars,
            fingerprint: hasher.finish(),
        }))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_subgroup(&self, v: usize) -> &Subgroup {
        &self.vars[v].subgroup
    }

    pub fn var_name(&self, v: usize) -> &str {
        &self.vars[v].name
    }

    pub fn find_var(&self, h: &Subgroup) -> Option<usize> {
        self.vars.iter().position(|v| &v.subgroup == h)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Whether the generator is rewritten away by the normal form.
    #[inline]
    pub fn is_eliminated(&self, s: Sym) -> bool {
        self.vars[s.var()].replacement[s.elem()].is_some()
    }

    /// The coset mates replacing an eliminated generator.
    #[inline]
    pub(crate) fn replacement(&self, s: Sym) -> Option<&[Elem]> {
        self.vars[s.var()].replacement[s.elem()].as_deref()
    }

    pub(crate) fn check_sym(&self, s: Sym) -> Result<(), RingError> {
        if s.var() >= self.vars.len() {
            return Err(RingError::UnknownVariable(s.var()));
        }
        if s.elem() >= self.group.order() {
            return Err(RingError::UnknownElement(s.elem().to_string()));
        }
        Ok(())
    }
}
