//! Weights of `GL(m|n)` and their arithmetic: the atypicality values
//! `omega_{ij}`, index shifts, contents, dominance predicates and the
//! degree statistics `l`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::MultiIndex;

/// A weight `(plus | minus)` of `GL(m|n)`: one integer tuple for each factor
/// of the even subgroup `GL(m) x GL(n)`.
///
/// No ordering is enforced at construction; dominance and polynomiality are
/// queried through predicates, never applied silently.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub m: usize,
    pub n: usize,
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl Weight {
    pub fn new(plus: Vec<i64>, minus: Vec<i64>) -> Result<Self> {
        if plus.is_empty() || minus.is_empty() {
            return Err(Error::Invalid("weight parts must be nonempty".into()));
        }
        Ok(Weight { m: plus.len(), n: minus.len(), plus, minus })
    }

    pub fn zero(m: usize, n: usize) -> Result<Self> {
        Weight::new(vec![0; m], vec![0; n])
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > self.m || j == 0 || j > self.n {
            return Err(Error::OutOfRange(format!(
                "pair ({i},{j}) outside 1..={} x 1..={}",
                self.m, self.n
            )));
        }
        Ok(())
    }

    /// The atypicality value `omega_{ij} = plus_i + minus_j + m + 1 - i - j`.
    pub fn omega(&self, i: usize, j: usize) -> Result<i64> {
        self.check_pair(i, j)?;
        Ok(self.plus[i - 1] + self.minus[j - 1] + self.m as i64 + 1 - i as i64 - j as i64)
    }

    /// The constant part of `omega_{ij}`, i.e. `m + 1 - i - j`.
    pub fn omega_offset(m: usize, i: usize, j: usize) -> i64 {
        m as i64 + 1 - i as i64 - j as i64
    }

    /// Shift by a multi-index: every occurrence of `i` in the first word
    /// lowers `plus_i` by one, every occurrence of `j` in the second word
    /// raises `minus_j` by one.
    pub fn shift(&self, ij: &MultiIndex) -> Result<Weight> {
        let mut out = self.clone();
        for t in 0..ij.len() {
            let (i, j) = (ij.i_word[t], ij.j_word[t]);
            self.check_pair(i, j)?;
            out.plus[i - 1] -= 1;
            out.minus[j - 1] += 1;
        }
        Ok(out)
    }

    /// Shift by a single pair `(i|j)`.
    pub fn shift_pair(&self, i: usize, j: usize) -> Result<Weight> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.plus[i - 1] -= 1;
        out.minus[j - 1] += 1;
        Ok(out)
    }

    /// Inverse of [`Weight::shift_pair`].
    pub fn unshift_pair(&self, i: usize, j: usize) -> Result<Weight> {
        self.check_pair(i, j)?;
        let mut out = self.clone();
        out.plus[i - 1] += 1;
        out.minus[j - 1] -= 1;
        Ok(out)
    }

    pub fn add_content(&self, c: &ContentVector) -> Result<Weight> {
        if c.xplus.len() != self.m || c.xminus.len() != self.n {
            return Err(Error::Dimension("content does not match weight shape".into()));
        }
        let plus = self.plus.iter().zip(&c.xplus).map(|(a, b)| a + b).collect();
        let minus = self.minus.iter().zip(&c.xminus).map(|(a, b)| a + b).collect();
        Weight::new(plus, minus)
    }

    /// Both parts weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.plus.windows(2).all(|w| w[0] >= w[1]) && self.minus.windows(2).all(|w| w[0] >= w[1])
    }

    /// Dominant with all entries nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.is_dominant()
            && self.plus.iter().all(|&x| x >= 0)
            && self.minus.iter().all(|&x| x >= 0)
    }

    /// Polynomial and compatible with an `(m|n)`-hook partition:
    /// `plus_m` bounds the number of positive `minus` entries.
    pub fn is_hook_pair(&self) -> bool {
        if !self.is_polynomial() {
            return false;
        }
        let legs = self.minus.iter().filter(|&&x| x > 0).count() as i64;
        self.plus[self.m - 1] >= legs
    }

    /// Component sums `(l(plus), l(minus), l(total))`.
    pub fn ell_stats(&self) -> (i64, i64, i64) {
        let p: i64 = self.plus.iter().sum();
        let q: i64 = self.minus.iter().sum();
        (p, q, p + q)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plus: Vec<String> = self.plus.iter().map(|x| x.to_string()).collect();
        let minus: Vec<String> = self.minus.iter().map(|x| x.to_string()).collect();
        write!(f, "{}|{}", plus.join(","), minus.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses the CLI form `"5,4,3|3,2,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("weight `{s}` lacks a `|` separator")))?;
        let parse_part = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Invalid(format!("bad weight entry `{tok}`")))
                })
                .collect()
        };
        Weight::new(parse_part(p)?, parse_part(q)?)
    }
}

/// The content of a multi-index: `xplus_s` is minus the multiplicity of `s`
/// in the first word, `xminus_t` the multiplicity of `t` in the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContentVector {
    pub xplus: Vec<i64>,
    pub xminus: Vec<i64>,
}

impl ContentVector {
    /// Common length `k` of the indexing words.
    pub fn k(&self) -> usize {
        self.xminus.iter().sum::<i64>() as usize
    }

    /// The weakly increasing word carrying the first-part multiplicities.
    pub fn i_multiset(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (s, &x) in self.xplus.iter().enumerate() {
            for _ in 0..(-x) {
                out.push(s + 1);
            }
        }
        out
    }

    /// The weakly increasing word carrying the second-part multiplicities.
    pub fn j_multiset(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (t, &x) in self.xminus.iter().enumerate() {
            for _ in 0..x {
                out.push(t + 1);
            }
        }
        out
    }
}

/// Content of `(I|J)` inside `GL(m|n)`.
pub fn content(ij: &MultiIndex, m: usize, n: usize) -> Result<ContentVector> {
    let mut xplus = vec![0i64; m];
    let mut xminus = vec![0i64; n];
    for t in 0..ij.len() {
        let (i, j) = (ij.i_word[t], ij.j_word[t]);
        if i == 0 || i > m || j == 0 || j > n {
            return Err(Error::OutOfRange(format!("pair ({i},{j}) outside 1..={m} x 1..={n}")));
        }
        xplus[i - 1] -= 1;
        xminus[j - 1] += 1;
    }
    Ok(ContentVector { xplus, xminus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w543() -> Weight {
        Weight::new(vec![5, 4, 3], vec![3, 2, 1]).unwrap()
    }

    #[test]
    fn omega_values() {
        assert_eq!(w543().omega(3, 3).unwrap(), 3 + 1 - 2);
        assert_eq!(w543().omega(2, 1).unwrap(), 4 + 3 + 1);
        let triv = Weight::new(vec![0], vec![0]).unwrap();
        assert_eq!(triv.omega(1, 1).unwrap(), 0);
        assert!(w543().omega(4, 1).is_err());
    }

    #[test]
    fn shift_matches_content() {
        let ij: MultiIndex = "113|123".parse().unwrap();
        let shifted = w543().shift(&ij).unwrap();
        assert_eq!(shifted, Weight::new(vec![3, 4, 2], vec![4, 3, 2]).unwrap());
        let c = content(&ij, 3, 3).unwrap();
        assert_eq!(c.xplus, vec![-2, 0, -1]);
        assert_eq!(c.xminus, vec![1, 1, 1]);
        assert_eq!(w543().add_content(&c).unwrap(), shifted);
        let empty = MultiIndex::empty();
        assert_eq!(w543().shift(&empty).unwrap(), w543());
    }

    #[test]
    fn content_of_repeated_j() {
        let ij: MultiIndex = "123|111".parse().unwrap();
        let c = content(&ij, 3, 3).unwrap();
        assert_eq!(c.xplus, vec![-1, -1, -1]);
        assert_eq!(c.xminus, vec![3, 0, 0]);
    }

    #[test]
    fn predicates() {
        assert!(w543().is_dominant());
        assert!(w543().is_polynomial());
        assert!(w543().is_hook_pair());
        let z = Weight::zero(3, 3).unwrap();
        assert!(z.is_dominant() && z.is_polynomial() && z.is_hook_pair());
        let mixed = Weight::new(vec![2, 1, 0], vec![0, -1, -2]).unwrap();
        assert!(mixed.is_dominant());
        assert!(!mixed.is_polynomial());
    }

    #[test]
    fn ell_stats_and_shift() {
        assert_eq!(w543().ell_stats(), (12, 6, 18));
        assert_eq!(Weight::zero(2, 2).unwrap().ell_stats(), (0, 0, 0));
        let ij: MultiIndex = "113|123".parse().unwrap();
        let shifted = w543().shift(&ij).unwrap();
        let (p0, q0, _) = w543().ell_stats();
        let (p1, q1, _) = shifted.ell_stats();
        assert_eq!(q1 - q0, ij.len() as i64);
        assert_eq!(p1 - p0, -(ij.len() as i64));
    }

    #[test]
    fn omega_invariant_under_own_shift() {
        let w = w543();
        for i in 1..=3 {
            for j in 1..=3 {
                let shifted = w.shift_pair(i, j).unwrap();
                assert_eq!(shifted.omega(i, j).unwrap(), w.omega(i, j).unwrap());
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        let w: Weight = "5,4,3|3,2,1".parse().unwrap();
        assert_eq!(w, w543());
        assert_eq!(w.to_string(), "5,4,3|3,2,1");
        let neg: Weight = "2,1,0|0,-1,-2".parse().unwrap();
        assert_eq!(neg.minus, vec![0, -1, -2]);
        assert!("5,4,3".parse::<Weight>().is_err());
    }
}
