//! Enumeration of small matrix groups over prime fields and commuting-tuple
//! counting by centralizer recursion.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::FiniteGroup;
use crate::error::Error;
use crate::Int;

/// Enumeration budget on the group order.
pub const ENUMERATION_BUDGET: u64 = 1_000_000;
/// Recursion depth guard for commuting tuples.
pub const MAX_TUPLE_LENGTH: u32 = 16;

/// The matrix families the oracle knows how to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupId {
    Gl2,
    Sl2,
    U2,
    D2,
    Gl3,
}

impl GroupId {
    pub fn parse(s: &str) -> Result<GroupId, Error> {
        match s.to_ascii_lowercase().as_str() {
            "gl2" => Ok(GroupId::Gl2),
            "sl2" => Ok(GroupId::Sl2),
            "u2" => Ok(GroupId::U2),
            "d2" => Ok(GroupId::D2),
            "gl3" => Ok(GroupId::Gl3),
            other => Err(Error::UnknownGroup(String::from(other))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupId::Gl2 => "GL2",
            GroupId::Sl2 => "SL2",
            GroupId::U2 => "U2",
            GroupId::D2 => "D2",
            GroupId::Gl3 => "GL3",
        }
    }

    /// Classical order formula at `q = p`.
    pub fn order(&self, p: u64) -> u64 {
        match self {
            GroupId::Gl2 => (p * p - 1) * (p * p - p),
            GroupId::Sl2 => p * (p * p - 1),
            GroupId::U2 => (p - 1) * (p - 1) * p,
            GroupId::D2 => (p - 1) * (p - 1),
            GroupId::Gl3 => {
                let p3 = p * p * p;
                (p3 - 1) * (p3 - p) * (p3 - p * p)
            }
        }
    }

    fn dim(&self) -> usize {
        match self {
            GroupId::Gl3 => 3,
            _ => 2,
        }
    }
}

/// A square matrix over a prime field, at most 3x3, row-major entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat {
    pub n: u8,
    pub a: [u8; 9],
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = [0u8; 9];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n: n as u8, a }
    }

    pub fn mul(&self, other: &Mat, p: u64) -> Mat {
        let n = self.n as usize;
        let mut out = [0u8; 9];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.a[i * n + k] as u64 * other.a[k * n + j] as u64;
                }
                out[i * n + j] = (acc % p) as u8;
            }
        }
        Mat { n: self.n, a: out }
    }

    pub fn det(&self, p: u64) -> u64 {
        let n = self.n as usize;
        let a = |i: usize, j: usize| self.a[i * n + j] as i64;
        let d = match n {
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            3 => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                    - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
            _ => unreachable!("only 2x2 and 3x3 supported"),
        };
        d.rem_euclid(p as i64) as u64
    }

    /// Inverse by adjugate over `F_p`.
    pub fn inverse(&self, p: u64) -> Mat {
        let n = self.n as usize;
        let det_inv = mod_inv(self.det(p), p);
        let a = |i: usize, j: usize| self.a[i * n + j] as i64;
        let mut out = [0u8; 9];
        match n {
            2 => {
                let adj = [a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)];
                for (k, v) in adj.iter().enumerate() {
                    out[k / 2 * 2 + k % 2] = ((v.rem_euclid(p as i64) as u64 * det_inv) % p) as u8;
                }
            }
            3 => {
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor C_ji for the adjugate
                        let (r0, r1) = match j {
                            0 => (1, 2),
                            1 => (0, 2),
                            _ => (0, 1),
                        };
                        let (c0, c1) = match i {
                            0 => (1, 2),
                            1 => (0, 2),
                            _ => (0, 1),
                        };
                        let minor = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        let v = (sign * minor).rem_euclid(p as i64) as u64;
                        out[i * 3 + j] = ((v * det_inv) % p) as u8;
                    }
                }
            }
            _ => unreachable!(),
        }
        Mat { n: self.n, a: out }
    }

    pub fn commutes_with(&self, other: &Mat, p: u64) -> bool {
        self.mul(other, p) == other.mul(self, p)
    }
}

fn mod_inv(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2) mod p
    let mut base = x % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A fully enumerated matrix group over `F_p`; elements sorted so indices
/// from binary search are stable.
pub struct MatrixGroup {
    pub id: GroupId,
    pub p: u64,
    elems: Vec<Mat>,
    inverses: Vec<usize>,
    identity: usize,
}

/// Enumerates the full element list of the requested family over `F_p`.
/// Enforces primality, the order budget, and the GL3 restriction to
/// `p` in {2, 3}.
pub fn enumerate(id: GroupId, p: u64) -> Result<MatrixGroup, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if id == GroupId::Gl3 && !(p == 2 || p == 3) {
        return Err(Error::BudgetExceeded(String::from(
            "GL3 enumeration allowed only for p in {2, 3}",
        )));
    }
    let expected = id.order(p);
    if expected > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(alloc::format!(
            "group order {expected} exceeds {ENUMERATION_BUDGET}"
        )));
    }
    let n = id.dim();
    let mut elems = Vec::with_capacity(expected as usize);
    let cells = n * n;
    let mut counter = vec![0u8; cells];
    loop {
        let mut m = [0u8; 9];
        m[..cells].copy_from_slice(&counter);
        let mat = Mat { n: n as u8, a: m };
        let keep = match id {
            GroupId::Gl2 | GroupId::Gl3 => mat.det(p) != 0,
            GroupId::Sl2 => mat.det(p) == 1,
            GroupId::U2 => mat.a[2] == 0 && mat.a[0] != 0 && mat.a[3] != 0,
            GroupId::D2 => mat.a[1] == 0 && mat.a[2] == 0 && mat.a[0] != 0 && mat.a[3] != 0,
        };
        if keep {
            elems.push(mat);
        }
        // odometer over F_p^(n^2)
        let mut k = 0;
        loop {
            if k == cells {
                break;
            }
            counter[k] += 1;
            if (counter[k] as u64) < p {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
        if k == cells {
            break;
        }
    }
    if elems.len() as u64 != expected {
        return Err(Error::InvariantViolated(alloc::format!(
            "enumerated {} elements of {} over F_{p}, expected {expected}",
            elems.len(),
            id.name()
        )));
    }
    elems.sort_unstable();
    let identity = elems
        .binary_search(&Mat::identity(n))
        .expect("identity is in the group");
    let inverses = elems
        .iter()
        .map(|m| {
            let inv = m.inverse(p);
            elems
                .binary_search(&inv)
                .expect("group is closed under inverse")
        })
        .collect();
    Ok(MatrixGroup {
        id,
        p,
        elems,
        inverses,
        identity,
    })
}

impl MatrixGroup {
    pub fn elements(&self) -> &[Mat] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.elems.binary_search(m).ok()
    }
}

impl FiniteGroup for MatrixGroup {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn id_index(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elems[a].mul(&self.elems[b], self.p);
        self.elems
            .binary_search(&m)
            .expect("group is closed under multiplication")
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Counts commuting n-tuples by recursion over conjugacy classes: each class
/// representative contributes `|class| * C_(n-1)(centralizer)`. Abelian
/// centralizers close the recursion with `|H|^(n-1)`; repeated centralizers
/// are memoized on their exact element sets.
pub fn count_commuting_tuples(group: &MatrixGroup, n: u32) -> Result<Int, Error> {
    if n < 1 {
        return Err(Error::PreconditionViolated(String::from(
            "n must be at least 1",
        )));
    }
    if n > MAX_TUPLE_LENGTH {
        return Err(Error::BudgetExceeded(alloc::format!(
            "commuting tuple length {n} exceeds {MAX_TUPLE_LENGTH}"
        )));
    }
    let mut memo: BTreeMap<(Vec<Mat>, u32), Int> = BTreeMap::new();
    Ok(count_subset(group.p, &group.elems, n, &mut memo))
}

fn count_subset(p: u64, elems: &[Mat], n: u32, memo: &mut BTreeMap<(Vec<Mat>, u32), Int>) -> Int {
    if n == 1 {
        return Int::from(elems.len());
    }
    if is_abelian(p, elems) {
        return Int::from(elems.len()).pow(n);
    }
    let key = (elems.to_vec(), n);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut total = Int::from(0);
    for (rep, class_size) in subset_conjugacy_classes(p, elems) {
        let centralizer: Vec<Mat> = elems
            .iter()
            .filter(|g| g.commutes_with(&elems[rep], p))
            .copied()
            .collect();
        total += Int::from(class_size) * count_subset(p, &centralizer, n - 1, memo);
    }
    memo.insert(key, total.clone());
    total
}

fn is_abelian(p: u64, elems: &[Mat]) -> bool {
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if !a.commutes_with(b, p) {
                return false;
            }
        }
    }
    true
}

fn subset_conjugacy_classes(p: u64, elems: &[Mat]) -> Vec<(usize, usize)> {
    let mut seen = vec![false; elems.len()];
    let mut out = Vec::new();
    for x in 0..elems.len() {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for g in elems {
            let y = g.mul(&elems[x], p).mul(&g.inverse(p), p);
            let yi = elems
                .binary_search(&y)
                .expect("subset is closed under conjugation");
            if !seen[yi] {
                seen[yi] = true;
                size += 1;
            }
        }
        out.push((x, size));
    }
    out
}

/// Literal quadratic scan over all pairs; the independent cross-check for
/// the centralizer recursion. Guarded at order 5000.
pub fn count_commuting_pairs_exhaustive(group: &MatrixGroup) -> Result<Int, Error> {
    if group.order() > 5000 {
        return Err(Error::BudgetExceeded(alloc::format!(
            "exhaustive pair scan capped at order 5000, group has {}",
            group.order()
        )));
    }
    let mut count = Int::from(0);
    for a in group.elements() {
        for b in group.elements() {
            if a.commutes_with(b, group.p) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_conjugacy_classes, count_surface_tuples};

    #[test]
    fn enumeration_orders() {
        assert_eq!(enumerate(GroupId::Gl2, 2).unwrap().order(), 6);
        assert_eq!(enumerate(GroupId::Sl2, 3).unwrap().order(), 24);
        assert_eq!(enumerate(GroupId::U2, 3).unwrap().order(), 12);
        assert_eq!(enumerate(GroupId::D2, 5).unwrap().order(), 16);
        assert_eq!(enumerate(GroupId::Gl3, 2).unwrap().order(), 168);
        assert!(matches!(
            enumerate(GroupId::Gl2, 4),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            enumerate(GroupId::Gl3, 5),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn closure_spot_checks() {
        let g = enumerate(GroupId::Gl2, 3).unwrap();
        // a few products and inverses land back in the group
        for i in (0..g.order()).step_by(7) {
            for j in (0..g.order()).step_by(11) {
                let m = g.elements()[i].mul(&g.elements()[j], 3);
                assert!(g.index_of(&m).is_some());
            }
            let inv = g.elements()[i].inverse(3);
            assert!(g.index_of(&inv).is_some());
            assert_eq!(g.elements()[i].mul(&inv, 3), Mat::identity(2));
        }
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(
            count_conjugacy_classes(&enumerate(GroupId::Gl2, 2).unwrap()),
            3
        );
        assert_eq!(
            count_conjugacy_classes(&enumerate(GroupId::Gl2, 3).unwrap()),
            8
        );
        assert_eq!(
            count_conjugacy_classes(&enumerate(GroupId::Sl2, 5).unwrap()),
            9
        );
        assert_eq!(
            count_conjugacy_classes(&enumerate(GroupId::Sl2, 3).unwrap()),
            7
        );
        assert_eq!(
            count_conjugacy_classes(&enumerate(GroupId::Sl2, 7).unwrap()),
            11
        );
    }

    #[test]
    fn commuting_pair_counts() {
        // Burnside: commuting pairs = |G| * #classes
        let gl2_f2 = enumerate(GroupId::Gl2, 2).unwrap();
        assert_eq!(count_commuting_tuples(&gl2_f2, 2).unwrap(), Int::from(18));
        let gl2_f3 = enumerate(GroupId::Gl2, 3).unwrap();
        assert_eq!(count_commuting_tuples(&gl2_f3, 2).unwrap(), Int::from(384));
        let sl2_f3 = enumerate(GroupId::Sl2, 3).unwrap();
        assert_eq!(count_commuting_tuples(&sl2_f3, 2).unwrap(), Int::from(168));
    }

    #[test]
    fn recursion_agrees_with_exhaustive_pairs() {
        for (id, p) in [
            (GroupId::Gl2, 2),
            (GroupId::Gl2, 3),
            (GroupId::Sl2, 3),
            (GroupId::U2, 2),
            (GroupId::U2, 3),
            (GroupId::U2, 5),
            (GroupId::D2, 3),
            (GroupId::D2, 5),
            (GroupId::Gl3, 2),
            (GroupId::Gl2, 5),
            (GroupId::Sl2, 5),
        ] {
            let g = enumerate(id, p).unwrap();
            if g.order() > 500 {
                continue;
            }
            assert_eq!(
                count_commuting_tuples(&g, 2).unwrap(),
                count_commuting_pairs_exhaustive(&g).unwrap(),
                "{} over F_{p}",
                id.name()
            );
        }
    }

    #[test]
    fn surface_genus_one_is_commuting_pairs() {
        let g = enumerate(GroupId::Gl2, 2).unwrap();
        assert_eq!(count_surface_tuples(&g, 1).unwrap(), Int::from(18));
        let u2_f2 = enumerate(GroupId::U2, 2).unwrap();
        // order 2, abelian: genus 2 gives 2^4 tuples
        assert_eq!(count_surface_tuples(&u2_f2, 2).unwrap(), Int::from(16));
    }
}
