//! Kostka numbers by exhaustive enumeration of semistandard Young tableaux.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::partition::Partition;

/// `K_{mu,lambda}`: the number of semistandard Young tableaux of shape `mu`
/// and content `lambda` (rows weakly increasing, columns strictly
/// increasing, entry `j` used `lambda_j` times). Requires `|mu| = |lambda|`.
pub fn kostka(mu: &Partition, lambda: &Partition) -> Result<u64, Error> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch);
    }
    if mu.size() == 0 {
        return Ok(1); // the empty tableau
    }
    let shape: Vec<usize> = mu.parts().iter().map(|&p| p as usize).collect();
    let mut remaining: Vec<u32> = lambda.parts().to_vec();
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut count = 0u64;
    fill(&shape, &mut remaining, &mut rows, 0, 0, &mut count);
    Ok(count)
}

/// Backtracking over cells in row-major order.
fn fill(
    shape: &[usize],
    remaining: &mut Vec<u32>,
    rows: &mut Vec<Vec<u32>>,
    r: usize,
    c: usize,
    count: &mut u64,
) {
    if r == shape.len() {
        *count += 1;
        return;
    }
    let (nr, nc) = if c + 1 == shape[r] {
        (r + 1, 0)
    } else {
        (r, c + 1)
    };
    // weakly increasing along the row, strictly increasing down the column
    let row_min = if c > 0 { rows[r][c - 1] } else { 1 };
    let col_min = if r > 0 && shape[r - 1] > c {
        rows[r - 1][c] + 1
    } else {
        1
    };
    let lo = row_min.max(col_min);
    for v in lo..=(remaining.len() as u32) {
        let idx = (v - 1) as usize;
        if remaining[idx] == 0 {
            continue;
        }
        remaining[idx] -= 1;
        rows[r][c] = v;
        fill(shape, remaining, rows, nr, nc, count);
        remaining[idx] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn small_values() {
        assert_eq!(kostka(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(kostka(&part(&[1, 1, 1]), &part(&[3])).unwrap(), 0);
        assert_eq!(kostka(&part(&[3]), &part(&[1, 1, 1])).unwrap(), 1);
        assert_eq!(kostka(&part(&[2, 2]), &part(&[1, 1, 1, 1])).unwrap(), 2);
        assert_eq!(kostka(&part(&[3, 2]), &part(&[2, 2, 1])).unwrap(), 2);
        assert_eq!(
            kostka(&part(&[2]), &part(&[1, 1, 1])),
            Err(Error::SizeMismatch)
        );
    }

    #[test]
    fn diagonal_is_one() {
        for n in 1..=8 {
            for mu in crate::partition::partitions(n).unwrap() {
                assert_eq!(kostka(&mu, &mu).unwrap(), 1, "mu = {mu}");
            }
        }
    }

    #[test]
    fn vanishing_below_diagonal() {
        // K_{mu,lambda} = 0 when mu < lambda lexicographically
        for n in 1..=7 {
            let ps = crate::partition::partitions(n).unwrap();
            for mu in &ps {
                for lambda in &ps {
                    if mu < lambda {
                        assert_eq!(kostka(mu, lambda).unwrap(), 0, "mu={mu} lambda={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn content_permutation_invariance() {
        // Kostka numbers do not depend on the order of the content; compare a
        // canonical content against one realized through a different partition
        // of the same multiset is trivial here, so check the classical value:
        // K_{(2,1), content (1,2)} = K_{(2,1),(2,1)} = 1 via direct tableau count.
        assert_eq!(kostka(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 1);
        assert_eq!(kostka(&part(&[4, 2]), &part(&[2, 2, 1, 1])).unwrap(), 4);
    }

    #[test]
    fn row_counts() {
        // single-row shapes admit exactly one filling for any content
        for n in 1..=6 {
            for lambda in crate::partition::partitions(n).unwrap() {
                assert_eq!(kostka(&part(&[n]), &lambda).unwrap(), 1);
            }
        }
    }
}
