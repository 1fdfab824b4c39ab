//! Exact determinant of small integer matrices.
//!
//! Fraction-free Bareiss elimination over i128. The divisions are exact,
//! so the only failure mode is overflow of an intermediate minor; callers
//! keep entries small (coordinates and heights of lattice points), where
//! the intermediates stay far below the i128 range.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Determinant of a square matrix given as rows.
pub(crate) fn determinant(rows: &[Vec<i128>]) -> Result<i128> {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or(Error::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_matrices() {
        assert_eq!(determinant(&[]), Ok(1));
        assert_eq!(determinant(&[vec![7]]), Ok(7));
        assert_eq!(determinant(&[vec![1, 2], vec![3, 4]]), Ok(-2));
        assert_eq!(
            determinant(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]),
            Ok(30)
        );
        // Singular.
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]),
            Ok(0)
        );
    }

    #[test]
    fn pivoting_and_signs() {
        // Zero pivot forces a row swap.
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), Ok(-1));
        assert_eq!(
            determinant(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]),
            Ok(-1)
        );
        // Vandermonde on 1, 2, 3: product of pairwise differences = 2.
        assert_eq!(
            determinant(&[vec![1, 1, 1], vec![1, 2, 4], vec![1, 3, 9]]),
            Ok(2)
        );
    }

    #[test]
    fn agrees_with_cofactor_expansion_on_random_entries() {
        fn cofactor(rows: &[Vec<i128>]) -> i128 {
            let n = rows.len();
            if n == 0 {
                return 1;
            }
            let mut acc = 0i128;
            for (c, &top) in rows[0].iter().enumerate() {
                let minor: Vec<Vec<i128>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = top * cofactor(&minor);
                acc += if c % 2 == 0 { term } else { -term };
            }
            acc
        }
        let mut g = crate::rng::SplitMix64::new(99);
        for n in 1..=5usize {
            for _ in 0..20 {
                let rows: Vec<Vec<i128>> = (0..n)
                    .map(|_| (0..n).map(|_| g.range_inclusive(-6, 6) as i128).collect())
                    .collect();
                assert_eq!(determinant(&rows).unwrap(), cofactor(&rows));
            }
        }
    }
}
