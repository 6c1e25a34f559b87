//! Symmetric-power point counts from the zeta exponential formula:
//! `#Sym^n X(F_q)` is the `t^n` coefficient of `exp(sum_d N_d t^d / d)`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::{Int, Rat};

/// Computes `#Sym^n X(F_q)` from the point counts `N_1, ..., N_n` of `X`
/// over the extension fields. Every intermediate symmetric-power count must
/// come out an integer; a proper fraction signals inconsistent inputs.
pub fn weil_sym_count(point_counts: &[Int], n: usize) -> Result<Int, Error> {
    if point_counts.len() < n {
        return Err(Error::PreconditionViolated(alloc::format!(
            "need point counts N_1..N_{n}, got {}",
            point_counts.len()
        )));
    }
    // z_m = (1/m) sum_{d=1..m} N_d z_{m-d}, from Z'(t) = (sum N_d t^(d-1)) Z(t)
    let mut z: Vec<Rat> = Vec::with_capacity(n + 1);
    z.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        for d in 1..=m {
            acc += Rat::from_integer(point_counts[d - 1].clone()) * &z[m - d];
        }
        let zm = acc / Rat::from_integer(Int::from(m as u64));
        if !zm.is_integer() {
            return Err(Error::NonIntegerResult);
        }
        z.push(zm);
    }
    Ok(z[n].to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn affine_line_over_f3() {
        // N_d = 3^d: Sym^2(A^1) = A^2 has 9 points
        assert_eq!(weil_sym_count(&ints(&[3, 9]), 2).unwrap(), Int::from(9));
        assert_eq!(
            weil_sym_count(&ints(&[3, 9, 27]), 3).unwrap(),
            Int::from(27)
        );
    }

    #[test]
    fn gm_over_f3() {
        // N_d = 3^d - 1
        assert_eq!(weil_sym_count(&ints(&[2, 8]), 2).unwrap(), Int::from(6));
    }

    #[test]
    fn point_counts_must_cover_n() {
        assert!(matches!(
            weil_sym_count(&ints(&[3]), 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn inconsistent_counts_are_flagged() {
        assert_eq!(
            weil_sym_count(&ints(&[1, 2]), 2),
            Err(Error::NonIntegerResult)
        );
    }

    #[test]
    fn additive_over_disjoint_unions() {
        // X = A^1 ⊔ G_m over F_2: N_d = 2^d + (2^d - 1); symmetric powers
        // convolve the two factors' sequences
        let na: Vec<Int> = (1..=4).map(|d| Int::from(1i64 << d)).collect();
        let nb: Vec<Int> = (1..=4).map(|d| Int::from((1i64 << d) - 1)).collect();
        let nsum: Vec<Int> = na.iter().zip(&nb).map(|(a, b)| a + b).collect();
        for n in 0..=4usize {
            let mut conv = Int::from(0);
            for k in 0..=n {
                conv += weil_sym_count(&na, k).unwrap() * weil_sym_count(&nb, n - k).unwrap();
            }
            assert_eq!(weil_sym_count(&nsum, n).unwrap(), conv, "n = {n}");
        }
    }
}
