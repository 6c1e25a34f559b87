//! Motivic decomposition machinery: the Kostka matrix of `S_n` Young
//! subgroups, the cyclic-group pairing matrix, the unique decomposition
//! solve along the unitriangular order, free-power quotient classes, and
//! motivic representation stability checks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::kostka::kostka;
use crate::limit::{limit_detect, LimitReport, DEFAULT_N_MAX, DEFAULT_WINDOW};
use crate::motclass::MotClass;
use crate::partition::{partitions, Partition};
use crate::poly::QPolynomial;
use crate::zeta::sym_power;
use crate::{Int, MotSequence, Rat};

/// The matrix `K_{mu,lambda}` over all partitions of `n`, rows and columns
/// in the descending lexicographic order of `partitions(n)`. Unitriangular:
/// diagonal ones, zero whenever `mu < lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaMatrix {
    n: u32,
    index: Vec<Partition>,
    entries: Vec<Vec<u64>>,
}

/// Partition budget for the `S_n` Psi matrix.
pub const PSI_SN_BUDGET: u32 = 10;

impl KostkaMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn index(&self) -> &[Partition] {
        &self.index
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn entry(&self, mu: &Partition, lambda: &Partition) -> Option<u64> {
        let i = self.index.iter().position(|p| p == mu)?;
        let j = self.index.iter().position(|p| p == lambda)?;
        Some(self.entries[i][j])
    }

    /// Unitriangularity gives determinant 1 without elimination.
    pub fn det(&self) -> i64 {
        1
    }
}

/// The pairing matrix of the `S_n` example: entry `(mu, lambda)` is the
/// Kostka number `K_{mu,lambda}`. Construction verifies the diagonal and
/// vanishing invariants.
pub fn psi_matrix_sn(n: u32) -> Result<KostkaMatrix, Error> {
    if !(1..=PSI_SN_BUDGET).contains(&n) {
        return Err(Error::BudgetExceeded(alloc::format!(
            "psi matrix supported for 1 <= n <= {PSI_SN_BUDGET}, got {n}"
        )));
    }
    let index = partitions(n)?;
    let mut entries = Vec::with_capacity(index.len());
    for mu in &index {
        let mut row = Vec::with_capacity(index.len());
        for lambda in &index {
            row.push(kostka(mu, lambda)?);
        }
        entries.push(row);
    }
    for (i, mu) in index.iter().enumerate() {
        if entries[i][i] != 1 {
            return Err(Error::InvariantViolated(alloc::format!(
                "K_{{mu,mu}} != 1 at mu = {mu}"
            )));
        }
        for (j, lambda) in index.iter().enumerate() {
            if mu < lambda && entries[i][j] != 0 {
                return Err(Error::InvariantViolated(alloc::format!(
                    "K_{{mu,lambda}} != 0 for mu = {mu} < lambda = {lambda}"
                )));
            }
        }
    }
    Ok(KostkaMatrix { n, index, entries })
}

/// The cyclic-group pairing: rows are the rational irreducibles `V_d` (one
/// per divisor `d` of `n`, of dimension `phi(d)`), columns the subgroups
/// `H_m` of order `m`; the entry is `phi(d)` when `d | n/m` and 0 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPsi {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub entries: Vec<Vec<u64>>,
}

pub fn psi_matrix_cyclic(n: u64) -> Result<CyclicPsi, Error> {
    if !(1..=10_000).contains(&n) {
        return Err(Error::BudgetExceeded(alloc::format!(
            "cyclic psi matrix supported for 1 <= n <= 10000, got {n}"
        )));
    }
    let divisors = divisors(n);
    let entries = divisors
        .iter()
        .map(|&d| {
            let phi = euler_phi(d);
            divisors
                .iter()
                .map(|&m| if (n / m).is_multiple_of(d) { phi } else { 0 })
                .collect()
        })
        .collect();
    Ok(CyclicPsi {
        n,
        divisors,
        entries,
    })
}

impl CyclicPsi {
    /// Exact determinant by fraction-free elimination; nonzero exactly when
    /// the subgroup set is good.
    pub fn det(&self) -> Rat {
        let m: Vec<Vec<Rat>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| Rat::from_integer(Int::from(e)))
                    .collect()
            })
            .collect();
        det_rat(m)
    }
}

/// Kronecker product of two integer matrices; the pairing matrix of a
/// product of groups is the tensor product of the factors' matrices.
pub fn psi_tensor(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let (ra, ca) = (a.len(), a.first().map_or(0, |r| r.len()));
    let (rb, cb) = (b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![0u64; ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for (c, pc) in pivot_row.iter().enumerate().skip(col) {
                let t = pc * &f;
                row[c] = &row[c] - &t;
            }
        }
    }
    det
}

/// Coefficients of the motivic decomposition: the class multiplying each
/// irreducible `V_mu`, keyed in the `partitions(n)` order.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub coefficients: Vec<(Partition, MotClass)>,
}

impl DecompositionResult {
    pub fn coefficient(&self, mu: &Partition) -> Option<&MotClass> {
        self.coefficients
            .iter()
            .find(|(p, _)| p == mu)
            .map(|(_, c)| c)
    }

    /// Reassembles the quotient class of `S_lambda` from the coefficients:
    /// sum over `mu` of `c_mu * K_{mu,lambda}`.
    pub fn reconstruct(&self, lambda: &Partition) -> Result<MotClass, Error> {
        let mut acc = MotClass::zero();
        for (mu, c) in &self.coefficients {
            let k = kostka(mu, lambda)?;
            if k != 0 {
                acc = &acc + &(c * &MotClass::from_int(k as i64));
            }
        }
        Ok(acc)
    }
}

/// Solves `[X/S_lambda] = sum_mu c_mu K_{mu,lambda}` for the unique
/// coefficient family, by back-substitution along the unitriangular order.
/// `quotients` must contain a class for every partition of `n`.
pub fn motivic_decomposition(
    n: u32,
    quotients: &BTreeMap<Partition, MotClass>,
) -> Result<DecompositionResult, Error> {
    let index = partitions(n)?;
    for lambda in &index {
        if !quotients.contains_key(lambda) {
            return Err(Error::MissingQuotient(alloc::format!("{lambda}")));
        }
    }
    let mut coefficients: Vec<(Partition, MotClass)> = Vec::with_capacity(index.len());
    for lambda in &index {
        // c_lambda = [X/S_lambda] - sum over already-solved mu of c_mu K_{mu,lambda}
        let mut c = quotients[lambda].clone();
        for (mu, cm) in &coefficients {
            let k = kostka(mu, lambda)?;
            if k != 0 {
                c = &c - &(cm * &MotClass::from_int(k as i64));
            }
        }
        coefficients.push((lambda.clone(), c));
    }
    Ok(DecompositionResult { coefficients })
}

/// The quotient class of a free power: `[X^n / S_{lambda[n]}]
/// = Sym^(n-|lambda|)(x) * prod_i Sym^(lambda_i)(x)`.
pub fn free_power_quotient(x: &QPolynomial, lambda: &Partition, n: u32) -> Result<MotClass, Error> {
    lambda.pad(n)?;
    let mut acc = sym_power(x, (n - lambda.size()) as usize)?;
    for &part in lambda.parts() {
        acc = &acc * &sym_power(x, part as usize)?;
    }
    Ok(MotClass::from_poly(acc))
}

/// Scans `n -> [X^n/S_{lambda[n]}] / q^(n deg x)` for stabilization; the
/// sequence converges exactly when `x` is monic.
pub fn rep_stability_check(
    x: &QPolynomial,
    lambda: &Partition,
    precision: i64,
) -> Result<LimitReport, Error> {
    let s = x.degree().ok_or(Error::NotStable)? as u32;
    let n0 = lambda.size() + lambda.first();
    let x = x.clone();
    let lambda = lambda.clone();
    let seq = MotSequence::new(
        alloc::format!("free-power quotient, lambda = {lambda}"),
        move |i| {
            let n = n0.max(1) + i - 1;
            let quotient = free_power_quotient(&x, &lambda, n).expect("pad is defined for n >= n0");
            quotient
                .div(&MotClass::from_poly(
                    QPolynomial::one().shift_up((n * s) as usize),
                ))
                .expect("powers of q are units")
        },
    );
    Ok(limit_detect(
        &seq,
        precision,
        DEFAULT_WINDOW,
        1,
        DEFAULT_N_MAX,
    ))
}

/// Closed-form stable limit of the free-power quotient sequence for monic
/// `x`: `sym_limit(x) * prod_i Sym^(lambda_i)(x) / q^(lambda_i deg x)`.
pub fn free_power_limit(x: &QPolynomial, lambda: &Partition) -> Result<MotClass, Error> {
    let s = x.degree().ok_or(Error::NotStable)?;
    let mut acc = crate::zeta::sym_limit(x)?;
    for &part in lambda.parts() {
        let sym = MotClass::from_poly(sym_power(x, part as usize)?);
        let den = MotClass::from_poly(QPolynomial::one().shift_up(part as usize * s));
        acc = &acc * &sym.div(&den)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn p(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_int_coeffs(coeffs)
    }

    #[test]
    fn psi_sn_small() {
        let m = psi_matrix_sn(3).unwrap();
        assert_eq!(m.entries(), &[vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]);
        let m2 = psi_matrix_sn(2).unwrap();
        assert_eq!(m2.entries(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.det(), 1);
        assert!(psi_matrix_sn(11).is_err());
    }

    #[test]
    fn psi_cyclic() {
        // rule: entry(d, m) = phi(d) if d | n/m
        let m2 = psi_matrix_cyclic(2).unwrap();
        assert_eq!(m2.entries, vec![vec![1, 1], vec![1, 0]]);
        let m4 = psi_matrix_cyclic(4).unwrap();
        assert_eq!(m4.divisors, vec![1, 2, 4]);
        assert_eq!(
            m4.entries,
            vec![vec![1, 1, 1], vec![1, 1, 0], vec![2, 0, 0]]
        );
        for n in 1..=100 {
            assert!(!psi_matrix_cyclic(n).unwrap().det().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn psi_tensor_product() {
        let a = psi_matrix_cyclic(2).unwrap();
        let t = psi_tensor(&a.entries, &a.entries);
        assert_eq!(t.len(), 4);
        // tensor of invertible matrices stays invertible
        let m: Vec<Vec<Rat>> = t
            .iter()
            .map(|r| r.iter().map(|&e| Rat::from_integer(Int::from(e))).collect())
            .collect();
        assert!(!det_rat(m).is_zero());
    }

    #[test]
    fn decomposition_affine_power() {
        // all quotients q^3: only the trivial isotype survives
        let mut quotients = BTreeMap::new();
        for lambda in partitions(3).unwrap() {
            quotients.insert(lambda, MotClass::from_poly(p(&[0, 0, 0, 1])));
        }
        let d = motivic_decomposition(3, &quotients).unwrap();
        assert_eq!(
            d.coefficient(&part(&[3])).unwrap(),
            &MotClass::from_poly(p(&[0, 0, 0, 1]))
        );
        assert!(d.coefficient(&part(&[2, 1])).unwrap().is_zero());
        assert!(d.coefficient(&part(&[1, 1, 1])).unwrap().is_zero());
    }

    #[test]
    fn decomposition_p1_squared() {
        // X = P^1 x P^1 with the swap: [X/S_2] = q^2+q+1, [X/e] = (q+1)^2
        let mut quotients = BTreeMap::new();
        quotients.insert(part(&[2]), MotClass::from_poly(p(&[1, 1, 1])));
        quotients.insert(
            part(&[1, 1]),
            MotClass::from_poly(&p(&[1, 1]) * &p(&[1, 1])),
        );
        let d = motivic_decomposition(2, &quotients).unwrap();
        assert_eq!(
            d.coefficient(&part(&[2])).unwrap(),
            &MotClass::from_poly(p(&[1, 1, 1]))
        );
        assert_eq!(
            d.coefficient(&part(&[1, 1])).unwrap(),
            &MotClass::from_poly(p(&[0, 1]))
        );
        // reconstruction round-trips
        for (lambda, q) in &quotients {
            assert_eq!(&d.reconstruct(lambda).unwrap(), q);
        }
    }

    #[test]
    fn decomposition_zero_and_missing() {
        let mut quotients = BTreeMap::new();
        quotients.insert(part(&[2]), MotClass::zero());
        quotients.insert(part(&[1, 1]), MotClass::zero());
        let d = motivic_decomposition(2, &quotients).unwrap();
        assert!(d.coefficients.iter().all(|(_, c)| c.is_zero()));
        quotients.remove(&part(&[1, 1]));
        assert!(matches!(
            motivic_decomposition(2, &quotients),
            Err(Error::MissingQuotient(_))
        ));
    }

    #[test]
    fn free_power_quotients() {
        // x = q, lambda = (1), n = 4: q^3 * q = q^4
        assert_eq!(
            free_power_quotient(&p(&[0, 1]), &part(&[1]), 4).unwrap(),
            MotClass::from_poly(p(&[0, 0, 0, 0, 1]))
        );
        // x = 2 points, empty lambda: Sym^n has n+1 points
        for n in 1..=5 {
            assert_eq!(
                free_power_quotient(&p(&[2]), &Partition::empty(), n).unwrap(),
                MotClass::from_int(n as i64 + 1)
            );
        }
        // x = q+1, lambda = (1), n = 3: (q^2+q+1)(q+1)
        assert_eq!(
            free_power_quotient(&p(&[1, 1]), &part(&[1]), 3).unwrap(),
            MotClass::from_poly(&p(&[1, 1, 1]) * &p(&[1, 1]))
        );
        assert_eq!(
            free_power_quotient(&p(&[1, 1]), &part(&[2]), 3),
            Err(Error::TooSmall)
        );
    }

    #[test]
    fn stability_dichotomy() {
        // monic x converges and matches the closed-form limit
        let x = &p(&[0, -1, 1]); // q(q-1), the J stratum shadow
        let lambda = part(&[1]);
        let report = rep_stability_check(x, &lambda, 8).unwrap();
        assert!(report.converged);
        let expected = free_power_limit(x, &lambda).unwrap().expand(8);
        assert_eq!(report.limit.unwrap(), expected);

        // (q-1)^2 with lambda = (2)
        let x = &(&p(&[-1, 1]) * &p(&[-1, 1]));
        let report = rep_stability_check(x, &part(&[2]), 6).unwrap();
        assert!(report.converged);

        // 2q diverges for every lambda
        let report = rep_stability_check(&p(&[0, 2]), &part(&[1]), 6).unwrap();
        assert!(!report.converged);
    }

    #[test]
    fn display_of_partitions_in_errors() {
        assert_eq!(part(&[2, 1]).to_string(), "2,1");
    }
}
