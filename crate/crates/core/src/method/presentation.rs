use std::fmt;

use crate::group::{Elem, FiniteGroup, GroupSpec};

use super::MethodError;

/// Generators with positive-word relations `w₁ = w₂`. Letters are
/// positions in `generators`; a relator `R` is `(R, [])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Elem>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Presentation {
    /// Checks every relation against the table and that the generators
    /// generate the group.
    pub fn new(
        group: &FiniteGroup,
        generators: Vec<Elem>,
        relations: Vec<(Vec<usize>, Vec<usize>)>,
    ) -> Result<Presentation, MethodError> {
        if group.subgroup_generated(&generators).order() != group.order() {
            return Err(MethodError::InvalidPresentation(
                "generators do not generate the group".into(),
            ));
        }
        let p = Presentation {
            generators,
            relations,
        };
        for (i, (a, b)) in p.relations.iter().enumerate() {
            if a.iter().chain(b).any(|&l| l >= p.generators.len()) {
                return Err(MethodError::InvalidPresentation(format!(
                    "relation {i} uses an unknown letter"
                )));
            }
            if p.eval(group, a) != p.eval(group, b) {
                return Err(MethodError::InvalidPresentation(format!(
                    "relation {} fails in {}",
                    p.display_relation(group, i),
                    group.label()
                )));
            }
        }
        Ok(p)
    }

    pub fn eval(&self, group: &FiniteGroup, word: &[usize]) -> Elem {
        word.iter()
            .fold(0, |acc, &l| group.mul(acc, self.generators[l]))
    }

    /// The presentations used for the worked families, with σ first and τ
    /// second:
    ///
    /// - quaternion of order 2m: σ^m = 1, στσ = τ, ττ = σ^{m/2}
    /// - dihedral of order 2m: ττ = 1, σ^m = 1, στσ = τ
    /// - order p³: τ^p = 1, σ^{p²} = 1, σ^{p+1}τ = τσ
    pub fn catalog(group: &FiniteGroup) -> Option<Presentation> {
        let rep = |k: usize| vec![0; k];
        let rels = match group.spec()? {
            GroupSpec::Quaternion(order) => {
                let m = order / 2;
                vec![
                    (rep(m), vec![]),
                    (vec![0, 1, 0], vec![1]),
                    (vec![1, 1], rep(m / 2)),
                ]
            }
            GroupSpec::Dihedral(order) => {
                let m = order / 2;
                vec![
                    (vec![1, 1], vec![]),
                    (rep(m), vec![]),
                    (vec![0, 1, 0], vec![1]),
                ]
            }
            GroupSpec::ModMax(p) => {
                let mut lhs = rep(p + 1);
                lhs.push(1);
                vec![
                    (vec![1; *p], vec![]),
                    (rep(p * p), vec![]),
                    (lhs, vec![1, 0]),
                ]
            }
            _ => return None,
        };
        Presentation::new(group, group.generators().to_vec(), rels).ok()
    }

    /// A presentation read off the table: for each element `g` with
    /// canonical word `w_g` and each generator `s`, the relation
    /// `w_g s = w_{gs}`. It defines the group for any generating set.
    pub fn from_table(group: &FiniteGroup) -> Presentation {
        let gens = group.generators().to_vec();
        let words = group.canonical_words(&gens);
        let mut relations = Vec::new();
        for g in group.elements() {
            let wg = words[g].as_ref().expect("generators generate");
            for (i, &s) in gens.iter().enumerate() {
                let gs = group.mul(g, s);
                let mut lhs = wg.clone();
                lhs.push(i);
                let rhs = words[gs].as_ref().expect("generators generate").clone();
                if lhs != rhs {
                    relations.push((lhs, rhs));
                }
            }
        }
        Presentation {
            generators: gens,
            relations,
        }
    }

    pub fn display_word(&self, group: &FiniteGroup, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            out.push_str(group.name(self.generators[word[i]]));
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    pub fn display_relation(&self, group: &FiniteGroup, i: usize) -> String {
        let (a, b) = &self.relations[i];
        format!(
            "{} = {}",
            self.display_word(group, a),
            self.display_word(group, b)
        )
    }

    pub fn display<'a>(&'a self, group: &'a FiniteGroup) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Presentation, &'a FiniteGroup);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let gens: Vec<&str> = self.0.generators.iter().map(|&g| self.1.name(g)).collect();
                let rels: Vec<String> = (0..self.0.relations.len())
                    .map(|i| self.0.display_relation(self.1, i))
                    .collect();
                write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
            }
        }
        D(self, group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn catalog_relations_hold() {
        for s in ["Q8", "Q16", "Q32", "D8", "D16", "G27"] {
            let g = build_group(&s.parse().unwrap()).unwrap();
            let p = Presentation::catalog(&g).unwrap();
            assert_eq!(p.relations.len(), 3, "{s}");
        }
        let g = build_group(&"C4".parse().unwrap()).unwrap();
        assert!(Presentation::catalog(&g).is_none());
    }

    #[test]
    fn wrong_relation_is_rejected() {
        let g = build_group(&"Q8".parse().unwrap()).unwrap();
        let bad = Presentation::new(&g, vec![1, 4], vec![(vec![1, 1], vec![])]);
        assert!(matches!(bad, Err(MethodError::InvalidPresentation(_))));
    }

    #[test]
    fn table_presentation_holds() {
        for s in ["C4", "S3", "Q8xC2"] {
            let g = build_group(&s.parse().unwrap()).unwrap();
            let p = Presentation::from_table(&g);
            let q = Presentation::new(&g, p.generators.clone(), p.relations.clone()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn display() {
        let g = build_group(&"D8".parse().unwrap()).unwrap();
        let p = Presentation::catalog(&g).unwrap();
        assert_eq!(
            p.display(&g).to_string(),
            "<s, t | t^2 = 1, s^4 = 1, sts = t>"
        );
    }
}
