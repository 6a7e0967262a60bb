use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use super::{factorize, Elem, FiniteGroup, GroupError};

/// A subgroup, stored as its sorted member list. Equality, ordering and
/// hashing only look at the members; subgroups compare by sorted member list,
/// which is the tie-breaking order used throughout the library.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Position of `g` in the sorted member list.
    pub fn position(&self, g: Elem) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSide {
    /// cosets gH
    Left,
    /// cosets Hg
    Right,
}

impl FiniteGroup {
    /// Sorted closure of `gens` under multiplication.
    pub(crate) fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut out = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut generators: Vec<Elem> = Vec::new();
        for &g in gens {
            if g != 0 && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Subgroup {
            members: self.closure(&generators),
            generators,
        }
    }

    /// Validates that `members` is a subgroup.
    pub fn subgroup_from_members(&self, members: &[Elem]) -> Result<Subgroup, GroupError> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) || m.iter().any(|&x| x >= self.order()) {
            return Err(GroupError::NotAGroup(
                "member list is not a subgroup".into(),
            ));
        }
        for &a in &m {
            for &b in &m {
                if m.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::NotAGroup("member list is not closed".into()));
                }
            }
        }
        // greedy generating set: add any member not yet generated
        let mut gens = Vec::new();
        let mut cur = vec![0];
        for &x in &m {
            if cur.binary_search(&x).is_err() {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        Ok(Subgroup {
            members: m,
            generators: gens,
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![0],
            generators: vec![],
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
            generators: self.generators().to_vec(),
        }
    }

    /// Every subgroup, sorted by member list.
    pub fn all_subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| {
            let mut cyclic: Vec<(Elem, Vec<Elem>)> = Vec::new();
            let mut seen_cyclic = BTreeSet::new();
            for g in self.elements().skip(1) {
                let c = self.closure(&[g]);
                if seen_cyclic.insert(c.clone()) {
                    cyclic.push((g, c));
                }
            }
            let mut all: BTreeSet<Subgroup> = BTreeSet::new();
            all.insert(self.trivial_subgroup());
            let mut frontier: Vec<Subgroup> = Vec::new();
            for (g, c) in &cyclic {
                let s = Subgroup {
                    members: c.clone(),
                    generators: vec![*g],
                };
                if all.insert(s.clone()) {
                    frontier.push(s);
                }
            }
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for h in &frontier {
                    for (g, _) in &cyclic {
                        if h.contains(*g) {
                            continue;
                        }
                        let mut gens = h.generators.clone();
                        gens.push(*g);
                        let j = Subgroup {
                            members: self.closure(&gens),
                            generators: gens,
                        };
                        if !all.contains(&j) {
                            all.insert(j.clone());
                            next.push(j);
                        }
                    }
                }
                frontier = next;
            }
            all.into_iter().collect()
        })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators()
            .iter()
            .all(|&g| h.generators().iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .iter()
            .filter(|h| self.is_normal(h))
            .cloned()
            .collect()
    }

    /// `g H g⁻¹`
    pub fn conjugate_subgroup(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&x| self.conj(g, x)).collect();
        self.subgroup_generated(&gens)
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gs = h.generators();
        gs.iter()
            .all(|&a| gs.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Nontrivial, abelian and of prime exponent.
    pub fn is_elementary_abelian(&self, h: &Subgroup) -> bool {
        if h.is_trivial() || !self.is_abelian_subgroup(h) {
            return false;
        }
        let p = self.elem_order(h.members()[1]);
        super::is_prime(p) && h.members().iter().skip(1).all(|&x| self.elem_order(x) == p)
    }

    pub fn elementary_abelian_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .iter()
            .filter(|h| self.is_elementary_abelian(h))
            .cloned()
            .collect()
    }

    pub fn maximal_elem_abelian(&self) -> Vec<Subgroup> {
        let ea = self.elementary_abelian_subgroups();
        ea.iter()
            .filter(|h| {
                !ea.iter()
                    .any(|k| k.order() > h.order() && h.is_subset_of(k))
            })
            .cloned()
            .collect()
    }

    /// One representative (the least) per conjugacy class of maximal
    /// elementary abelian subgroups.
    pub fn conjugacy_reps_elem_abelian(&self) -> Vec<Subgroup> {
        let mut reps: Vec<Subgroup> = Vec::new();
        let mut covered: BTreeSet<Subgroup> = BTreeSet::new();
        for h in self.maximal_elem_abelian() {
            if covered.contains(&h) {
                continue;
            }
            for g in self.elements() {
                covered.insert(self.conjugate_subgroup(g, &h));
            }
            reps.push(h);
        }
        reps
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&z| {
                self.generators()
                    .iter()
                    .all(|&g| self.mul(g, z) == self.mul(z, g))
            })
            .collect();
        self.subgroup_from_members(&members)
            .expect("center is a subgroup")
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let c = self.mul(self.mul(a, b), self.inv(self.mul(b, a)));
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        let gens: Vec<Elem> = comms;
        let s = self.subgroup_generated(&gens);
        self.subgroup_from_members(s.members())
            .expect("commutator subgroup")
    }

    /// Minimal element of each coset, sorted.
    pub fn coset_reps(&self, h: &Subgroup, side: CosetSide) -> Vec<Elem> {
        let mut assigned = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            reps.push(g);
            for &x in h.members() {
                let y = match side {
                    CosetSide::Left => self.mul(g, x),
                    CosetSide::Right => self.mul(x, g),
                };
                assigned[y] = true;
            }
        }
        reps
    }

    /// The least Sylow `p`-subgroup.
    pub fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let pa = factorize(self.order())
            .into_iter()
            .find(|&(q, _)| q == p)
            .map(|(q, a)| q.pow(a))
            .unwrap_or(1);
        self.all_subgroups()
            .iter()
            .find(|h| h.order() == pa)
            .cloned()
            .expect("Sylow subgroups exist")
    }

    /// The least `⟨h⟩` with `h` central of order `p` and `G/⟨h⟩` not
    /// elementary abelian.
    pub fn central_reduction_subgroup(&self) -> Result<Subgroup, GroupError> {
        let p = self
            .prime()
            .ok_or_else(|| GroupError::NotAPGroup(self.label().to_string()))?;
        let z = self.center();
        let mut candidates: Vec<Subgroup> = z
            .members()
            .iter()
            .filter(|&&h| self.elem_order(h) == p)
            .map(|&h| self.subgroup_generated(&[h]))
            .collect();
        candidates.sort();
        candidates.dedup();
        candidates
            .into_iter()
            .find(|n| {
                !self
                    .quotient(n)
                    .expect("central subgroups are normal")
                    .group
                    .is_elementary_abelian_group()
            })
            .ok_or_else(|| {
                GroupError::NoSuchElement(format!(
                    "{} has no central subgroup of order {p} with non-elementary-abelian quotient",
                    self.label()
                ))
            })
    }

    pub fn is_elementary_abelian_group(&self) -> bool {
        self.order() > 1 && self.is_elementary_abelian(&self.whole())
    }

    /// A subgroup as a group in its own right, together with the embedding
    /// (the parent index of each new element). Element names are inherited.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let emb = h.members().to_vec();
        let names = emb.iter().map(|&x| self.name(x).to_string()).collect();
        let table = emb
            .iter()
            .map(|&a| {
                emb.iter()
                    .map(|&b| h.position(self.mul(a, b)).unwrap())
                    .collect()
            })
            .collect();
        let gens = h
            .generators()
            .iter()
            .map(|&g| h.position(g).unwrap())
            .collect();
        let label = format!(
            "{}<{}>",
            self.label(),
            h.generators()
                .iter()
                .map(|&g| self.name(g))
                .collect::<Vec<_>>()
                .join(",")
        );
        let g = FiniteGroup::from_table(label, names, table, gens).expect("subgroup is a group");
        (g, emb)
    }
}

#[cfg(test)]
mod tests {
    use crate::group::build_group;

    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    fn by_names(gr: &FiniteGroup, names: &[&str]) -> Vec<Elem> {
        names
            .iter()
            .map(|n| gr.element_by_name(n).unwrap())
            .collect()
    }

    fn brute_force_subgroups(gr: &FiniteGroup) -> Vec<Vec<Elem>> {
        // every subset closed under multiplication; only feasible for tiny groups
        let n = gr.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let m: Vec<Elem> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if m.iter()
                .all(|&a| m.iter().all(|&b| mask >> gr.mul(a, b) & 1 == 1))
            {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn subgroup_enumeration_matches_brute_force() {
        for s in ["C4", "E(2,2)", "Q8", "D8", "S3", "C4xC2", "E(2,3)", "C9"] {
            let gr = g(s);
            let fast: Vec<Vec<Elem>> = gr
                .all_subgroups()
                .iter()
                .map(|h| h.members().to_vec())
                .collect();
            assert_eq!(fast, brute_force_subgroups(&gr), "{s}");
        }
    }

    #[test]
    fn generated_subgroups() {
        let q8 = g("Q8");
        assert!(q8.subgroup_generated(&[]).is_trivial());
        assert_eq!(q8.subgroup_generated(&by_names(&q8, &["s2"])).order(), 2);
        let d8 = g("D8");
        assert_eq!(
            d8.subgroup_generated(&by_names(&d8, &["s2", "t"])).order(),
            4
        );
    }

    #[test]
    fn elementary_abelian_sets() {
        let q8 = g("Q8");
        let ea = q8.elementary_abelian_subgroups();
        assert_eq!(ea.len(), 1);
        assert_eq!(ea[0].order(), 2);
        let d8 = g("D8");
        let reps = d8.conjugacy_reps_elem_abelian();
        assert_eq!(reps.len(), 2);
        assert!(reps.iter().all(|h| h.order() == 4));
        let c5 = g("C5");
        assert_eq!(c5.elementary_abelian_subgroups(), vec![c5.whole()]);
    }

    #[test]
    fn elementary_abelian_list_is_complete() {
        for s in ["Q16", "D16", "C4xC2", "E(2,3)", "Q8xC2", "G27"] {
            let gr = g(s);
            let listed = gr.elementary_abelian_subgroups();
            for h in gr.all_subgroups() {
                let abelian = h
                    .members()
                    .iter()
                    .all(|&a| h.members().iter().all(|&b| gr.mul(a, b) == gr.mul(b, a)));
                let orders: BTreeSet<usize> = h
                    .members()
                    .iter()
                    .skip(1)
                    .map(|&x| gr.elem_order(x))
                    .collect();
                let prime_exp =
                    orders.len() == 1 && crate::group::is_prime(*orders.iter().next().unwrap());
                assert_eq!(
                    listed.contains(h),
                    abelian && prime_exp && !h.is_trivial(),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn centers_and_commutators() {
        let c4 = g("C4xC2");
        assert_eq!(c4.center(), c4.whole());
        assert!(c4.commutator_subgroup().is_trivial());
        let q16 = g("Q16");
        // brute force: elements commuting with everything
        let brute: Vec<Elem> = q16
            .elements()
            .filter(|&z| q16.elements().all(|x| q16.mul(x, z) == q16.mul(z, x)))
            .collect();
        assert_eq!(q16.center().members(), &brute[..]);
        assert_eq!(q16.center().members(), &by_names(&q16, &["e", "s4"])[..]);
        let g27 = g("G27");
        assert_eq!(
            g27.center(),
            g27.subgroup_generated(&by_names(&g27, &["s3"]))
        );
        assert_eq!(g27.commutator_subgroup().order(), 3);
    }

    #[test]
    fn sylow_and_central_reduction() {
        let s3 = g("S3");
        assert_eq!(s3.sylow_subgroup(2).order(), 2);
        assert_eq!(s3.sylow_subgroup(3).order(), 3);
        let c8 = g("C8");
        let n = c8.central_reduction_subgroup().unwrap();
        assert_eq!(n, c8.subgroup_generated(&by_names(&c8, &["s4"])));
        let c4c2 = g("C4xC2");
        let n = c4c2.central_reduction_subgroup().unwrap();
        assert!(!c4c2
            .quotient(&n)
            .unwrap()
            .group
            .is_elementary_abelian_group());
        for s in ["C4", "Q8", "D8", "E(2,2)", "G27"] {
            assert!(g(s).central_reduction_subgroup().is_err(), "{s}");
        }
    }

    #[test]
    fn coset_reps_partition() {
        let d8 = &g("D8");
        assert_eq!(
            d8.coset_reps(&d8.trivial_subgroup(), CosetSide::Left).len(),
            8
        );
        assert_eq!(d8.coset_reps(&d8.whole(), CosetSide::Right), vec![0]);
        for h in d8.all_subgroups() {
            for side in [CosetSide::Left, CosetSide::Right] {
                let reps = d8.coset_reps(h, side);
                let mut all: Vec<Elem> = reps
                    .iter()
                    .flat_map(|&r| {
                        h.members().iter().map(move |&x| match side {
                            CosetSide::Left => d8.mul(r, x),
                            CosetSide::Right => d8.mul(x, r),
                        })
                    })
                    .collect();
                all.sort_unstable();
                assert_eq!(all, d8.elements().collect::<Vec<_>>());
                assert_eq!(reps[0], 0);
            }
        }
        let u2 = d8.subgroup_generated(&by_names(d8, &["s2", "st"]));
        assert_eq!(d8.coset_reps(&u2, CosetSide::Left).len(), 2);
    }

    #[test]
    fn subgroup_as_group_keeps_names() {
        let q8 = g("Q8");
        let u = q8.subgroup_generated(&by_names(&q8, &["s"]));
        let (h, emb) = q8.subgroup_as_group(&u);
        assert_eq!(h.order(), 4);
        assert_eq!(h.names(), &["e", "s", "s2", "s3"]);
        assert_eq!(emb, vec![0, 1, 2, 3]);
    }
}
