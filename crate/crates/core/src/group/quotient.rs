use super::{Elem, FiniteGroup, GroupError, Subgroup};

/// `G/N` with the natural projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// image of every element of `G`
    pub projection: Vec<Elem>,
    /// least element of each coset, indexed by quotient element
    pub reps: Vec<Elem>,
    pub kernel: Subgroup,
}

impl Quotient {
    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g]
    }

    /// Canonical lift: the least element of the coset.
    pub fn lift(&self, q: Elem) -> Elem {
        self.reps[q]
    }

    pub fn project_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&g| self.project(g)).collect();
        self.group.subgroup_generated(&gens)
    }

    /// `π⁻¹(S̄)`
    pub fn preimage(&self, parent: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let mut gens: Vec<Elem> = s.generators().iter().map(|&q| self.lift(q)).collect();
        gens.extend_from_slice(self.kernel.generators());
        let members: Vec<Elem> = parent
            .elements()
            .filter(|&g| s.contains(self.project(g)))
            .collect();
        let sub = parent.subgroup_generated(&gens);
        debug_assert_eq!(sub.members(), &members[..]);
        sub
    }
}

impl FiniteGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let reps = self.coset_reps(n, super::CosetSide::Left);
        let mut projection = vec![usize::MAX; self.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &x in n.members() {
                projection[self.mul(r, x)] = i;
            }
        }
        let names = reps.iter().map(|&r| self.name(r).to_string()).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let mut gens = Vec::new();
        for &g in self.generators() {
            let q = projection[g];
            if q != 0 && !gens.contains(&q) {
                gens.push(q);
            }
        }
        let label = format!(
            "{}/<{}>",
            self.label(),
            n.generators()
                .iter()
                .map(|&g| self.name(g))
                .collect::<Vec<_>>()
                .join(",")
        );
        let group = FiniteGroup::from_table(label, names, table, gens)?;
        Ok(Quotient {
            group,
            projection,
            reps,
            kernel: n.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::group::build_group;

    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_kernel_gives_an_isomorphic_copy() {
        let q8 = g("Q8");
        let q = q8.quotient(&q8.trivial_subgroup()).unwrap();
        assert!(q.group.find_isomorphism(&q8).is_some());
    }

    #[test]
    fn q8_mod_center_is_klein() {
        let q8 = g("Q8");
        let z = q8.subgroup_generated(&[q8.element_by_name("s2").unwrap()]);
        let q = q8.quotient(&z).unwrap();
        assert_eq!(q.group.order(), 4);
        // brute-force table check: every element squares to the identity
        assert!(q.group.elements().all(|x| q.group.mul(x, x) == 0));
        for a in q8.elements() {
            for b in q8.elements() {
                assert_eq!(
                    q.project(q8.mul(a, b)),
                    q.group.mul(q.project(a), q.project(b))
                );
            }
        }
    }

    #[test]
    fn g27_mod_u_is_cyclic() {
        let g27 = g("G27");
        let u = g27.subgroup_generated(&[
            g27.element_by_name("s3").unwrap(),
            g27.element_by_name("t").unwrap(),
        ]);
        let q = g27.quotient(&u).unwrap();
        assert_eq!(q.group.order(), 3);
        assert_eq!(q.project(g27.element_by_name("s").unwrap()), 1);
        assert_eq!(q.group.elem_order(1), 3);
    }

    #[test]
    fn non_normal_is_rejected() {
        let d8 = g("D8");
        let t = d8.subgroup_generated(&[d8.element_by_name("t").unwrap()]);
        assert_eq!(d8.quotient(&t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn preimage_inverts_projection() {
        for s in ["Q16", "D16", "G27", "C4xC2"] {
            let gr = g(s);
            for n in gr.normal_subgroups() {
                let q = gr.quotient(&n).unwrap();
                for sb in q.group.all_subgroups() {
                    let pre = q.preimage(&gr, sb);
                    assert_eq!(pre.order(), n.order() * sb.order());
                    assert_eq!(&q.project_subgroup(&pre), sb);
                }
            }
        }
    }
}
