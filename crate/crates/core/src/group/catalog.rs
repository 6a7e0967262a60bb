use std::fmt;
use std::str::FromStr;

use super::{is_prime, FiniteGroup, GroupError, MAX_TABLE_ORDER};

/// A member of the group catalog.
///
/// `Quaternion(m)` and `Dihedral(m)` carry the group order; `ModMax(p)` is
/// the nonabelian group of order p³ and exponent p² with
/// σ^{p²} = τ^p = 1, τστ⁻¹ = σ^{p+1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    ElemAbelian(usize, usize),
    Quaternion(usize),
    Dihedral(usize),
    ModMax(usize),
    Symmetric3,
    DirectProduct(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::ElemAbelian(p, r) => p.pow(*r as u32),
            GroupSpec::Quaternion(m) | GroupSpec::Dihedral(m) => *m,
            GroupSpec::ModMax(p) => p * p * p,
            GroupSpec::Symmetric3 => 6,
            GroupSpec::DirectProduct(fs) => fs.iter().map(GroupSpec::order).product(),
        }
    }

    /// Checks the documented parameter bounds.
    pub fn validate(&self) -> Result<(), GroupError> {
        let err = |reason: &str| {
            Err(GroupError::Spec {
                spec: self.to_string(),
                reason: reason.to_string(),
            })
        };
        match self {
            GroupSpec::Cyclic(n) if *n == 0 => err("cyclic order must be positive"),
            GroupSpec::ElemAbelian(p, r) => {
                if !is_prime(*p) {
                    err("p must be prime")
                } else if *r == 0 {
                    err("rank must be positive")
                } else if (*p as f64).powi(*r as i32) > MAX_TABLE_ORDER as f64 {
                    err("group too large")
                } else {
                    Ok(())
                }
            }
            GroupSpec::Quaternion(m) if !m.is_power_of_two() || *m < 8 => {
                err("quaternion order must be a power of two, at least 8")
            }
            GroupSpec::Dihedral(m) if !m.is_power_of_two() || *m < 8 => {
                err("dihedral order must be a power of two, at least 8")
            }
            GroupSpec::ModMax(p) if !is_prime(*p) || *p == 2 => err("p must be an odd prime"),
            GroupSpec::DirectProduct(fs) => {
                if fs.len() < 2 {
                    return err("a direct product needs at least two factors");
                }
                for f in fs {
                    if matches!(f, GroupSpec::DirectProduct(_)) {
                        return err("nested direct products are flattened");
                    }
                    f.validate()?;
                }
                if fs
                    .iter()
                    .try_fold(1usize, |acc, f| acc.checked_mul(f.order()))
                    .is_none()
                {
                    return err("group too large");
                }
                Ok(())
            }
            _ => Ok(()),
        }?;
        let order = self.order();
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::BoundExceeded {
                order,
                bound: MAX_TABLE_ORDER,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::ElemAbelian(p, r) => write!(f, "E({p},{r})"),
            GroupSpec::Quaternion(m) => write!(f, "Q{m}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::ModMax(p) => write!(f, "G{}", p * p * p),
            GroupSpec::Symmetric3 => write!(f, "S3"),
            GroupSpec::DirectProduct(fs) => {
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| GroupError::Spec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let factors: Vec<&str> = s.split('x').collect();
        let mut parsed = Vec::with_capacity(factors.len());
        for f in &factors {
            parsed.push(parse_factor(f).ok_or_else(|| bad("unrecognized factor"))?);
        }
        let spec = if parsed.len() == 1 {
            parsed.pop().unwrap()
        } else {
            GroupSpec::DirectProduct(parsed)
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_num(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0'))
    {
        return None;
    }
    s.parse().ok()
}

fn parse_factor(f: &str) -> Option<GroupSpec> {
    if f == "S3" {
        return Some(GroupSpec::Symmetric3);
    }
    if let Some(inner) = f.strip_prefix("E(").and_then(|r| r.strip_suffix(')')) {
        let (p, r) = inner.split_once(',')?;
        return Some(GroupSpec::ElemAbelian(parse_num(p)?, parse_num(r)?));
    }
    let (head, tail) = f.split_at(f.char_indices().nth(1)?.0);
    let n = parse_num(tail)?;
    match head {
        "C" => Some(GroupSpec::Cyclic(n)),
        "Q" => Some(GroupSpec::Quaternion(n)),
        "D" => Some(GroupSpec::Dihedral(n)),
        "G" => {
            let p = (2..=n).find(|&p| p * p * p >= n)?;
            (p * p * p == n).then_some(GroupSpec::ModMax(p))
        }
        _ => None,
    }
}

/// Builds the multiplication table for a catalog group.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    spec.validate()?;
    let g = match spec {
        GroupSpec::Cyclic(n) => metacyclic(&spec.to_string(), *n, 1, 0, 0)?,
        GroupSpec::ElemAbelian(p, r) => {
            if *r == 1 {
                metacyclic(&spec.to_string(), *p, 1, 0, 0)?
            } else {
                let c = metacyclic(&format!("C{p}"), *p, 1, 0, 0)?;
                let copies: Vec<&FiniteGroup> = (0..*r).map(|_| &c).collect();
                direct_product(&spec.to_string(), &copies)?
            }
        }
        GroupSpec::Quaternion(order) => {
            let m = order / 2;
            metacyclic(&spec.to_string(), m, 2, m - 1, m / 2)?
        }
        GroupSpec::Dihedral(order) => {
            let m = order / 2;
            metacyclic(&spec.to_string(), m, 2, m - 1, 0)?
        }
        GroupSpec::ModMax(p) => metacyclic(&spec.to_string(), p * p, *p, p + 1, 0)?,
        GroupSpec::Symmetric3 => metacyclic("S3", 3, 2, 2, 0)?,
        GroupSpec::DirectProduct(fs) => {
            let built = fs.iter().map(build_group).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&FiniteGroup> = built.iter().collect();
            direct_product(&spec.to_string(), &refs)?
        }
    };
    Ok(g.with_spec(spec.clone()))
}

/// ⟨σ, τ | σ^m = 1, τ^t = σ^z, τστ⁻¹ = σ^r⟩ with element σ^i τ^j at index
/// `i + j·m`. With `t = 1` this is the cyclic group of order `m`.
fn metacyclic(
    label: &str,
    m: usize,
    t: usize,
    r: usize,
    z: usize,
) -> Result<FiniteGroup, GroupError> {
    let n = m * t;
    // r^b mod m for b < t
    let mut rpow = vec![1 % m.max(1); t.max(1)];
    for b in 1..t {
        rpow[b] = rpow[b - 1] * r % m;
    }
    let names: Vec<String> = (0..n)
        .map(|k| {
            let (i, j) = (k % m, k / m);
            let mut s = String::new();
            match i {
                0 => {}
                1 => s.push('s'),
                _ => s.push_str(&format!("s{i}")),
            }
            match j {
                0 => {}
                1 => s.push('t'),
                _ => s.push_str(&format!("t{j}")),
            }
            if s.is_empty() {
                s.push('e');
            }
            s
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let (a, b) = (x % m, x / m);
            (0..n)
                .map(|y| {
                    let (c, d) = (y % m, y / m);
                    let mut i = a + c * rpow[b];
                    let mut j = b + d;
                    if j >= t {
                        j -= t;
                        i += z;
                    }
                    i % m + j * m
                })
                .collect()
        })
        .collect();
    let mut gens = Vec::new();
    if m > 1 {
        gens.push(1);
    }
    if t > 1 {
        gens.push(m);
    }
    FiniteGroup::from_table(label, names, table, gens)
}

/// The direct product on index tuples, elements named `(a,b,…)`.
pub fn direct_product(label: &str, factors: &[&FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let n: usize = orders.iter().product();
    let split = |mut k: usize| -> Vec<usize> {
        let mut parts = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            parts[i] = k % orders[i];
            k /= orders[i];
        }
        parts
    };
    let join = |parts: &[usize]| {
        parts
            .iter()
            .zip(&orders)
            .fold(0, |acc, (&p, &o)| acc * o + p)
    };
    let tuples: Vec<Vec<usize>> = (0..n).map(split).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let inner: Vec<&str> = t.iter().zip(factors).map(|(&x, f)| f.name(x)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let table = tuples
        .iter()
        .map(|a| {
            tuples
                .iter()
                .map(|b| {
                    let prod: Vec<usize> = factors
                        .iter()
                        .enumerate()
                        .map(|(i, f)| f.mul(a[i], b[i]))
                        .collect();
                    join(&prod)
                })
                .collect()
        })
        .collect();
    let mut gens = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &g in f.generators() {
            let mut parts = vec![0; factors.len()];
            parts[i] = g;
            gens.push(join(&parts));
        }
    }
    FiniteGroup::from_table(label, names, table, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "C4", "C9", "E(2,2)", "Q8", "Q16", "D8", "D16", "G27", "S3", "Q8xC3", "C4xC2",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for s in [
            "", "C0", "Q12", "D4", "G8", "G25", "E(4,2)", "C04", "X3", "C4x", "E(2,0)",
        ] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn trivial_group() {
        let t = g("C1");
        assert_eq!(t.order(), 1);
        assert!(t.generators().is_empty());
    }

    #[test]
    fn quaternion_relations() {
        let q = g("Q8");
        let s = q.element_by_name("s").unwrap();
        let t = q.element_by_name("t").unwrap();
        assert_eq!(q.elem_order(s), 4);
        assert_eq!(q.mul(t, t), q.pow(s, 2));
        assert_eq!(q.conj(t, s), q.inv(s));
        assert_eq!(q.names()[..4], ["e", "s", "s2", "s3"]);
        assert_eq!(q.name(5), "st");
    }

    #[test]
    fn modmax_relation() {
        let g27 = g("G27");
        let s = g27.element_by_name("s").unwrap();
        let t = g27.element_by_name("t").unwrap();
        assert_eq!(g27.mul(t, s), g27.mul(g27.pow(s, 4), t));
        assert_eq!(g27.elem_order(s), 9);
        assert_eq!(g27.elem_order(t), 3);
        assert_eq!(g27.exponent(), 9);
    }

    #[test]
    fn dihedral_relations() {
        let d = g("D16");
        let s = d.element_by_name("s").unwrap();
        let t = d.element_by_name("t").unwrap();
        assert_eq!(d.elem_order(s), 8);
        assert_eq!(d.mul(t, t), 0);
        assert_eq!(d.conj(t, s), d.inv(s));
    }

    #[test]
    fn product_names_and_indices() {
        let p = g("Q8xC3");
        assert_eq!(p.order(), 24);
        assert_eq!(p.name(0), "(e,e)");
        // index a·|B| + b
        assert_eq!(p.name(5 * 3 + 2), "(st,s2)");
        assert_eq!(p.generators().len(), 3);
        let e = g("E(2,3)");
        assert!(e.elements().all(|x| e.elem_order(x) <= 2));
        assert_eq!(e.label(), "E(2,3)");
    }
}
