use std::collections::BTreeSet;
use std::fmt;

use super::{Elem, FiniteGroup, GroupError, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    ElementaryAbelian,
    Extraspecial,
    AlmostExtraspecial,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::ElementaryAbelian => "elementary abelian",
            Classification::Extraspecial => "extraspecial",
            Classification::AlmostExtraspecial => "almost extraspecial",
            Classification::Other => "other",
        })
    }
}

/// Cheap isomorphism invariants; enough to tell the catalog groups apart up
/// to order 32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoInvariants {
    pub order: usize,
    pub abelian: bool,
    pub exponent: usize,
    pub center_order: usize,
    /// number of elements of order p (p the smallest prime divisor)
    pub order_p_count: usize,
}

impl FiniteGroup {
    pub fn invariants(&self) -> IsoInvariants {
        let p = super::factorize(self.order())
            .first()
            .map_or(1, |&(p, _)| p);
        IsoInvariants {
            order: self.order(),
            abelian: self.is_abelian(),
            exponent: self.exponent(),
            center_order: self.center().order(),
            order_p_count: self.elements().filter(|&x| self.elem_order(x) == p).count(),
        }
    }

    pub fn classify(&self) -> Result<Classification, GroupError> {
        if self.order() == 1 {
            return Ok(Classification::Other);
        }
        let p = self
            .prime()
            .ok_or_else(|| GroupError::NotAPGroup(self.label().to_string()))?;
        if self.is_elementary_abelian_group() {
            return Ok(Classification::ElementaryAbelian);
        }
        let z = self.center();
        let cyclic_center = z.members().iter().any(|&x| self.elem_order(x) == z.order());
        let kind = if z.order() == p {
            Classification::Extraspecial
        } else if z.order() == p * p && cyclic_center {
            Classification::AlmostExtraspecial
        } else {
            return Ok(Classification::Other);
        };
        // the order-p subgroup of a cyclic center is unique
        let h = z
            .members()
            .iter()
            .copied()
            .find(|&x| self.elem_order(x) == p)
            .expect("center of a p-group is nontrivial");
        let n = self.subgroup_generated(&[h]);
        let q = self.quotient(&n).expect("central subgroup is normal");
        Ok(if q.group.is_elementary_abelian_group() {
            kind
        } else {
            Classification::Other
        })
    }

    /// Isomorphism-class label: catalog names where the invariants pin the
    /// group down, a descriptive fallback otherwise.
    pub fn iso_label(&self) -> String {
        let inv = self.invariants();
        let n = inv.order;
        if inv.abelian && inv.exponent == n {
            return format!("C{n}");
        }
        if let Some(p) = self.prime() {
            if inv.abelian && inv.exponent == p {
                let r = super::factorize(n)[0].1;
                return format!("E({p},{r})");
            }
            if n == p * p * p && !inv.abelian {
                return match (p, inv.exponent == p, inv.order_p_count) {
                    (2, _, 1) => "Q8".into(),
                    (2, _, _) => "D8".into(),
                    (_, true, _) => format!("He{n}"),
                    (_, false, _) => format!("G{n}"),
                };
            }
        }
        let ab = if inv.abelian { "ab" } else { "nab" };
        format!(
            "[{n},{ab},exp{},z{},i{}]",
            inv.exponent, inv.center_order, inv.order_p_count
        )
    }

    /// Labels of every extraspecial or almost extraspecial subquotient.
    pub fn f_set(&self, bound: usize) -> Result<BTreeSet<String>, GroupError> {
        if self.order() > bound {
            return Err(GroupError::BoundExceeded {
                order: self.order(),
                bound,
            });
        }
        let p = match self.prime() {
            Some(p) => p,
            None if self.order() == 1 => return Ok(BTreeSet::new()),
            None => return Err(GroupError::NotAPGroup(self.label().to_string())),
        };
        let mut labels = BTreeSet::new();
        let subs = self.all_subgroups();
        for h in subs {
            // nonabelian extraspecial groups have order ≥ p³, C_{p²} has order p²
            if h.order() < p * p {
                continue;
            }
            let (hg, emb) = self.subgroup_as_group(h);
            for n in subs.iter().filter(|n| n.is_subset_of(h)) {
                let quotient_order = h.order() / n.order();
                if quotient_order < p * p {
                    continue;
                }
                let local = local_subgroup(&hg, &emb, n);
                if !hg.is_normal(&local) {
                    continue;
                }
                let q = hg.quotient(&local).expect("normal");
                if matches!(
                    q.group.classify()?,
                    Classification::Extraspecial | Classification::AlmostExtraspecial
                ) {
                    labels.insert(q.group.iso_label());
                }
            }
        }
        Ok(labels)
    }
}

fn local_subgroup(hg: &FiniteGroup, emb: &[Elem], n: &Subgroup) -> Subgroup {
    let members: Vec<Elem> = n
        .members()
        .iter()
        .map(|m| emb.binary_search(m).expect("n ≤ h"))
        .collect();
    hg.subgroup_from_members(&members).expect("subgroup")
}

#[cfg(test)]
mod tests {
    use crate::group::build_group;

    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn classification_of_catalog_groups() {
        use Classification::*;
        for (s, c) in [
            ("C4", AlmostExtraspecial),
            ("C9", AlmostExtraspecial),
            ("C25", AlmostExtraspecial),
            ("Q8", Extraspecial),
            ("D8", Extraspecial),
            ("G27", Extraspecial),
            ("E(2,3)", ElementaryAbelian),
            ("C3", ElementaryAbelian),
            ("C8", Other),
            ("C4xC2", Other),
            ("Q16", Other),
            ("Q8xC2", Other),
            ("Q8xC4", Other),
        ] {
            assert_eq!(g(s).classify().unwrap(), c, "{s}");
        }
        assert!(g("S3").classify().is_err());
    }

    #[test]
    fn extraspecial_implies_center_and_quotient() {
        for s in ["Q8", "D8", "G27", "Q16", "D16", "Q8xC2", "D8xC2", "C4xC2"] {
            let gr = g(s);
            if gr.classify().unwrap() == Classification::Extraspecial {
                let z = gr.center();
                assert_eq!(z.order(), gr.prime().unwrap());
                assert!(gr.quotient(&z).unwrap().group.is_elementary_abelian_group());
            }
        }
    }

    #[test]
    fn catalog_labels() {
        assert_eq!(g("Q8").iso_label(), "Q8");
        assert_eq!(g("D8").iso_label(), "D8");
        assert_eq!(g("C4").iso_label(), "C4");
        assert_eq!(g("G27").iso_label(), "G27");
        assert_eq!(g("E(3,2)").iso_label(), "E(3,2)");
    }

    #[test]
    fn f_sets_of_the_two_families() {
        assert_eq!(g("Q16").f_set(64).unwrap(), set(&["C4", "D8", "Q8"]));
        assert_eq!(g("D16").f_set(64).unwrap(), set(&["C4", "D8"]));
        assert!(g("E(2,3)").f_set(64).unwrap().is_empty());
        assert!(g("Q16").f_set(8).is_err());
    }
}
