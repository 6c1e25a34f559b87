//! Abstract finite groups given by permutation generators.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::FiniteGroup;
use crate::error::Error;

/// A permutation of `{0, ..., degree-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            map: (0..degree as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Composition `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&i| self.map[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u8; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u8;
        }
        Permutation { map }
    }

    /// Extends the permutation to a larger degree by fixing new points.
    pub fn pad(&self, degree: usize) -> Permutation {
        let mut map = self.map.clone();
        for i in map.len()..degree {
            map.push(i as u8);
        }
        Permutation { map }
    }

    /// Parses 1-based cycle notation, e.g. `(1 2 3)(4 5)`.
    pub fn parse_cycles(s: &str) -> Result<Permutation, Error> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(Error::Parse(String::from("expected '(' in cycle notation")));
            };
            let Some(close) = rest.find(')') else {
                return Err(Error::Parse(String::from("unclosed cycle")));
            };
            if close < open {
                return Err(Error::Parse(String::from("mismatched parentheses")));
            }
            let inner = &rest[open + 1..close];
            let mut cycle = Vec::new();
            for tok in inner.split([' ', ',']) {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(String::from("bad cycle entry")))?;
                if v == 0 {
                    return Err(Error::Parse(String::from("cycle entries are 1-based")));
                }
                cycle.push(v - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim();
        }
        let degree = cycles
            .iter()
            .flat_map(|c| c.iter())
            .max()
            .map_or(1, |&m| m + 1);
        let mut map: Vec<u8> = (0..degree as u8).collect();
        for cycle in &cycles {
            let seen: BTreeSet<usize> = cycle.iter().copied().collect();
            if seen.len() != cycle.len() {
                return Err(Error::Parse(String::from("repeated point in a cycle")));
            }
            for w in 0..cycle.len() {
                map[cycle[w]] = cycle[(w + 1) % cycle.len()] as u8;
            }
        }
        Ok(Permutation { map })
    }
}

impl core::fmt::Display for Permutation {
    /// 1-based cycle notation; `()` for the identity.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.map[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            loop {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                seen[i] = true;
                first = false;
                i = self.map[i] as usize;
                if i == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite group generated by permutations, fully enumerated by closure.
pub struct PermGroup {
    elems: Vec<Permutation>,
    inverses: Vec<usize>,
    identity: usize,
}

/// Closure budget.
pub const GENERATION_BUDGET: usize = 1_000_000;

impl PermGroup {
    /// Breadth-first closure of the generators under composition.
    pub fn generate(generators: &[Permutation]) -> Result<PermGroup, Error> {
        let degree = generators.iter().map(|g| g.degree()).max().unwrap_or(1);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.pad(degree)).collect();
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    if set.len() > GENERATION_BUDGET {
                        return Err(Error::BudgetExceeded(alloc::format!(
                            "permutation closure exceeds {GENERATION_BUDGET} elements"
                        )));
                    }
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<Permutation> = set.into_iter().collect();
        let identity = elems
            .binary_search(&Permutation::identity(degree))
            .expect("identity is in the closure");
        let inverses = elems
            .iter()
            .map(|x| {
                elems
                    .binary_search(&x.inverse())
                    .expect("closure contains inverses")
            })
            .collect();
        Ok(PermGroup {
            elems,
            inverses,
            identity,
        })
    }

    /// The cyclic group of order `n` as an n-cycle.
    pub fn cyclic(n: usize) -> Result<PermGroup, Error> {
        if n == 0 {
            return Err(Error::PreconditionViolated(String::from(
                "order must be positive",
            )));
        }
        if n == 1 {
            return PermGroup::generate(&[Permutation::identity(1)]);
        }
        let mut map: Vec<u8> = (0..n as u8).collect();
        map.rotate_left(1);
        PermGroup::generate(&[Permutation { map }])
    }

    /// The dihedral group of order `2m` (the symmetries the split torus
    /// normalizer specializes to over a finite field with `m = q - 1`).
    pub fn dihedral(m: usize) -> Result<PermGroup, Error> {
        match m {
            0 => Err(Error::PreconditionViolated(String::from(
                "m must be positive",
            ))),
            1 => PermGroup::generate(&[Permutation::parse_cycles("(1 2)")?]),
            2 => PermGroup::generate(&[
                Permutation::parse_cycles("(1 2)")?,
                Permutation::parse_cycles("(3 4)")?,
            ]),
            _ => {
                let mut rot: Vec<u8> = (0..m as u8).collect();
                rot.rotate_left(1);
                let refl: Vec<u8> = (0..m as u8).map(|i| ((m as u8) - i) % m as u8).collect();
                PermGroup::generate(&[Permutation { map: rot }, Permutation { map: refl }])
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }
}

impl FiniteGroup for PermGroup {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn id_index(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elems[a].compose(&self.elems[b]);
        self.elems.binary_search(&m).expect("group is closed")
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_conjugacy_classes, count_surface_tuples};
    use crate::Int;
    use alloc::string::ToString;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 2").is_err());
        assert!(Permutation::parse_cycles("(0 1)").is_err());
    }

    #[test]
    fn s3_structure() {
        let s3 = PermGroup::generate(&[
            Permutation::parse_cycles("(1 2)").unwrap(),
            Permutation::parse_cycles("(1 2 3)").unwrap(),
        ])
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(count_conjugacy_classes(&s3), 3);
        assert_eq!(count_surface_tuples(&s3, 1).unwrap(), Int::from(18));
        assert_eq!(count_surface_tuples(&s3, 2).unwrap(), Int::from(486));
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(PermGroup::cyclic(7).unwrap().order(), 7);
        assert_eq!(PermGroup::dihedral(1).unwrap().order(), 2);
        assert_eq!(PermGroup::dihedral(2).unwrap().order(), 4);
        assert_eq!(PermGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(PermGroup::dihedral(6).unwrap().order(), 12);
        // commuting pairs in the Klein four group: all 16
        let k4 = PermGroup::dihedral(2).unwrap();
        assert_eq!(count_surface_tuples(&k4, 1).unwrap(), Int::from(16));
        // D4: |G| * #classes = 8 * 5
        let d4 = PermGroup::dihedral(4).unwrap();
        assert_eq!(count_surface_tuples(&d4, 1).unwrap(), Int::from(40));
    }
}
