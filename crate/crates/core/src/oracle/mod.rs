//! Brute-force finite counting: matrix groups over prime fields, abstract
//! permutation groups, commuting tuples, surface-relation tuples, conjugacy
//! classes, and symmetric-power point counts via the zeta exponential
//! formula. The ground truth every symbolic specialization is checked
//! against; nothing here touches the symbolic engine.

mod matgroup;
mod perm;
mod weil;

pub use matgroup::{
    count_commuting_pairs_exhaustive, count_commuting_tuples, enumerate, GroupId, Mat, MatrixGroup,
};
pub use perm::{PermGroup, Permutation};
pub use weil::weil_sym_count;

use alloc::string::ToString;
use alloc::vec;

use crate::error::Error;
use crate::Int;

/// Tuple-enumeration budget for surface-relation counting.
pub const SURFACE_BUDGET: u64 = 10_000_000;

/// A finite group presented by indexed elements; conjugacy and surface
/// counting run generically over this.
pub trait FiniteGroup {
    fn size(&self) -> usize;
    fn id_index(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    /// `a b a^-1 b^-1`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }
}

/// Exhaustively counts `2g`-tuples satisfying the surface relation
/// `[A_1,B_1]...[A_g,B_g] = id`. Requires `|G|^(2g) <= 10^7`.
pub fn count_surface_tuples<G: FiniteGroup>(group: &G, genus: u32) -> Result<Int, Error> {
    surface_budget_check(group.size(), genus)?;
    Ok(count_surface_tuples_range(group, genus, 0, group.size()))
}

/// The same count restricted to tuples whose first coordinate index lies in
/// `[a_lo, a_hi)`; partial counts over a partition of the range sum to the
/// full count, enabling order-independent parallel workers.
pub fn count_surface_tuples_range<G: FiniteGroup>(
    group: &G,
    genus: u32,
    a_lo: usize,
    a_hi: usize,
) -> Int {
    let mut total = Int::from(0);
    for a in a_lo..a_hi.min(group.size()) {
        for b in 0..group.size() {
            let partial = group.commutator(a, b);
            total += count_surface_rest(group, genus - 1, partial);
        }
    }
    total
}

fn count_surface_rest<G: FiniteGroup>(group: &G, handles_left: u32, partial: usize) -> Int {
    if handles_left == 0 {
        return Int::from((partial == group.id_index()) as u32);
    }
    let mut total = Int::from(0);
    for a in 0..group.size() {
        for b in 0..group.size() {
            let next = group.mul(partial, group.commutator(a, b));
            total += count_surface_rest(group, handles_left - 1, next);
        }
    }
    total
}

/// Checks the `|G|^(2g) <= 10^7` budget without counting anything.
pub fn surface_budget_check(order: usize, genus: u32) -> Result<(), Error> {
    if genus == 0 {
        return Err(Error::PreconditionViolated(
            "genus must be at least 1".to_string(),
        ));
    }
    let mut tuples: u64 = 1;
    for _ in 0..2 * genus {
        tuples = tuples.saturating_mul(order as u64);
        if tuples > SURFACE_BUDGET {
            return Err(Error::BudgetExceeded(alloc::format!(
                "|G|^(2g) = {order}^{} exceeds {SURFACE_BUDGET}",
                2 * genus
            )));
        }
    }
    Ok(())
}

/// Orbit count of the conjugation action.
pub fn count_conjugacy_classes<G: FiniteGroup>(group: &G) -> usize {
    let n = group.size();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        classes += 1;
        for g in 0..n {
            let y = group.mul(group.mul(g, x), group.inv(g));
            seen[y] = true;
        }
    }
    classes
}

/// Conjugacy classes as `(representative, class size)` pairs.
pub fn conjugacy_classes<G: FiniteGroup>(group: &G) -> alloc::vec::Vec<(usize, usize)> {
    let n = group.size();
    let mut seen = vec![false; n];
    let mut out = alloc::vec::Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for g in 0..n {
            let y = group.mul(group.mul(g, x), group.inv(g));
            if !seen[y] {
                seen[y] = true;
                size += 1;
            }
        }
        out.push((x, size));
    }
    out
}
