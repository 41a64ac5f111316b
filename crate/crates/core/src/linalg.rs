//! Exact integer linear algebra: fraction-free elimination for rank and
//! determinant over the rationals, and elimination over odd prime fields.
//! No floating point anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set_i64(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().map(BigInt::from).collect();
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn set_i64(&mut self, r: usize, c: usize, v: i64) {
        self.set(r, c, BigInt::from(v));
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Rank over the rationals by Bareiss fraction-free elimination with
/// first-nonzero pivot selection.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let pivot = (row..a.rows).find(|&r| !a.get(r, col).is_zero());
        let Some(p) = pivot else { continue };
        a.swap_rows(row, p);
        for r in row + 1..a.rows {
            for c in col + 1..a.cols {
                let num = a.get(row, col) * a.get(r, c) - a.get(r, col) * a.get(row, c);
                a.set(r, c, num / &prev);
            }
            a.set(r, col, BigInt::zero());
        }
        prev = a.get(row, col).clone();
        rank += 1;
        row += 1;
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a.get(r, col).is_zero());
        let Some(p) = pivot else { return Ok(BigInt::zero()) };
        if p != col {
            a.swap_rows(col, p);
            sign = -sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let num = a.get(col, col) * a.get(r, c) - a.get(r, col) * a.get(col, c);
                a.set(r, c, num / &prev);
            }
            a.set(r, col, BigInt::zero());
        }
        prev = a.get(col, col).clone();
    }
    Ok(a.get(n - 1, n - 1) * BigInt::from(sign))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p <= 2 || !is_prime(p) {
        return Err(Error::Invalid(format!("modulus {p} is not an odd prime")));
    }
    Ok(())
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Rank of the reduction modulo an odd prime.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    check_odd_prime(p)?;
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| {
                    let mut v = m.get(r, c) % &pb;
                    if v.is_negative() {
                        v += &pb;
                    }
                    let digits = v.to_u64_digits().1;
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let pivot = (row..m.rows).find(|&r| a[r][col] != 0);
        let Some(piv) = pivot else { continue };
        a.swap(row, piv);
        let inv = mod_pow(a[row][col], p - 2, p);
        for c in col..m.cols {
            a[row][c] = (a[row][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in row + 1..m.rows {
            if a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            for c in col..m.cols {
                let sub = (factor as u128 * a[row][c] as u128) % p as u128;
                a[r][c] = ((a[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rank += 1;
        row += 1;
    }
    Ok(rank)
}

/// Entries strictly below the diagonal vanish.
pub fn is_upper_triangular(m: &IntMatrix) -> Result<bool> {
    if m.rows != m.cols {
        return Err(Error::Dimension("triangularity needs a square selection".into()));
    }
    for r in 0..m.rows {
        for c in 0..r {
            if !m.get(r, c).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank_and_det() {
        let id = IntMatrix::identity(6);
        assert_eq!(rank_rational(&id), 6);
        assert_eq!(det_bareiss(&id).unwrap(), BigInt::one());
        for p in [3, 5, 7] {
            assert_eq!(rank_mod_p(&id, p).unwrap(), 6);
        }
        assert!(is_upper_triangular(&id).unwrap());
    }

    #[test]
    fn rank_drop_mod_p() {
        let m = IntMatrix::from_rows(vec![vec![5]]).unwrap();
        assert_eq!(rank_rational(&m), 1);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 0);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
    }

    #[test]
    fn modulus_validation() {
        let m = IntMatrix::identity(2);
        assert!(rank_mod_p(&m, 2).is_err());
        assert!(rank_mod_p(&m, 9).is_err());
        assert!(rank_mod_p(&m, 1).is_err());
    }

    #[test]
    fn dependent_rows() {
        let m = IntMatrix::from_rows(vec![
            vec![1, 2, 3],
            vec![2, 4, 6],
            vec![1, 0, 1],
        ])
        .unwrap();
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::zero());
    }

    #[test]
    fn det_with_swap() {
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(-1));
        assert!(!is_upper_triangular(&m).unwrap());
    }

    #[test]
    fn negative_entries_mod_p() {
        let m = IntMatrix::from_rows(vec![vec![-3, 3], vec![3, -3]]).unwrap();
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 0);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 1);
    }
}
