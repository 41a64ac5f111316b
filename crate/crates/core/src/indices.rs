//! Multi-indices `(I|J)`: admissibility and robustness, enumeration of the
//! basis labels, permutation actions and the `a`/`b` counting statistics.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orders::rev_semitic_cmp;
use crate::weights::{ContentVector, Weight};

/// A pair of equal-length index words `(I|J)` with `I` over `1..=m` and `J`
/// over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    #[serde(rename = "I")]
    pub i_word: Vec<usize>,
    #[serde(rename = "J")]
    pub j_word: Vec<usize>,
}

impl MultiIndex {
    pub fn new(i_word: Vec<usize>, j_word: Vec<usize>) -> Result<Self> {
        if i_word.len() != j_word.len() {
            return Err(Error::Dimension(format!(
                "index words have lengths {} and {}",
                i_word.len(),
                j_word.len()
            )));
        }
        if i_word.iter().chain(&j_word).any(|&x| x == 0) {
            return Err(Error::OutOfRange("index entries are 1-based".into()));
        }
        Ok(MultiIndex { i_word, j_word })
    }

    pub fn empty() -> Self {
        MultiIndex { i_word: Vec::new(), j_word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.i_word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i_word.is_empty()
    }

    /// The sequence of pairs `(i_t, j_t)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.i_word.iter().copied().zip(self.j_word.iter().copied()).collect()
    }

    /// `I` weakly increasing, and positions with equal `i` carry strictly
    /// increasing `j`.
    pub fn is_admissible(&self) -> bool {
        let k = self.len();
        for t in 1..k {
            if self.i_word[t - 1] > self.i_word[t] {
                return false;
            }
            if self.i_word[t - 1] == self.i_word[t] && self.j_word[t - 1] >= self.j_word[t] {
                return false;
            }
        }
        true
    }

    /// A repeated identical pair makes the wedge-side vector vanish.
    pub fn has_repeated_pair(&self) -> bool {
        let mut pairs = self.pairs();
        pairs.sort_unstable();
        pairs.windows(2).any(|w| w[0] == w[1])
    }

    pub fn check_range(&self, m: usize, n: usize) -> Result<()> {
        for t in 0..self.len() {
            if self.i_word[t] > m || self.j_word[t] > n {
                return Err(Error::OutOfRange(format!(
                    "pair ({},{}) outside 1..={m} x 1..={n}",
                    self.i_word[t], self.j_word[t]
                )));
            }
        }
        Ok(())
    }
}

fn word_to_string(word: &[usize]) -> String {
    if word.iter().all(|&x| x <= 9) {
        word.iter().map(|x| x.to_string()).collect()
    } else {
        word.iter().map(|x| x.to_string()).join(",")
    }
}

fn word_from_str(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad index entry `{tok}`")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Invalid(format!("bad index digit `{c}`")))
            })
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", word_to_string(&self.i_word), word_to_string(&self.j_word))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"113|123"` or `"1,1,3|1,2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let (i, j) = s
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("pair `{s}` lacks a `|` separator")))?;
        MultiIndex::new(word_from_str(i)?, word_from_str(j)?)
    }
}

/// Whether `w` is `(I|J)`-robust: each symbol `i < m` occurs at most
/// `plus_i - plus_{i+1}` times in `I`, the symbol `m` at most `plus_m` times,
/// and each symbol `j > 1` at most `minus_{j-1} - minus_j` times in `J`.
pub fn is_robust(w: &Weight, ij: &MultiIndex) -> Result<bool> {
    if !ij.is_admissible() {
        return Err(Error::Precondition(format!("({ij}) is not admissible")));
    }
    ij.check_range(w.m, w.n)?;
    let mut icount = vec![0i64; w.m];
    for &i in &ij.i_word {
        icount[i - 1] += 1;
    }
    for i in 1..=w.m {
        let bound = if i < w.m { w.plus[i - 1] - w.plus[i] } else { w.plus[w.m - 1] };
        if icount[i - 1] > bound {
            return Ok(false);
        }
    }
    let mut jcount = vec![0i64; w.n];
    for &j in &ij.j_word {
        jcount[j - 1] += 1;
    }
    for j in 2..=w.n {
        if jcount[j - 1] > w.minus[j - 2] - w.minus[j - 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A permutation of `{1..k}` stored by its images `eta(1), ..., eta(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || seen[x - 1] {
                return Err(Error::Invalid(format!("images {images:?} are not a bijection")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `eta(t)` for 1-based `t`.
    pub fn apply(&self, t: usize) -> usize {
        self.images[t - 1]
    }

    /// Sign `(-1)^eta` computed from the inversion count.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for a in 0..self.images.len() {
            for b in a + 1..self.images.len() {
                if self.images[a] > self.images[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.k()];
        for (t, &x) in self.images.iter().enumerate() {
            images[x - 1] = t + 1;
        }
        Permutation { images }
    }

    /// Composition chosen so that
    /// `compose(a, b).permute(word) == a.permute(&b.permute(word))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.k() != other.k() {
            return Err(Error::Dimension("permutation sizes differ".into()));
        }
        let images = (1..=self.k()).map(|t| other.apply(self.apply(t))).collect();
        Ok(Permutation { images })
    }

    /// The word `(w_{eta(1)}, ..., w_{eta(k)})`.
    pub fn permute(&self, word: &[usize]) -> Result<Vec<usize>> {
        if word.len() != self.k() {
            return Err(Error::Dimension(format!(
                "word of length {} under a permutation of {}",
                word.len(),
                self.k()
            )));
        }
        Ok(self.images.iter().map(|&t| word[t - 1]).collect())
    }

    /// All permutations of `{1..k}` in lexicographic order of image words.
    pub fn all(k: usize) -> Vec<Permutation> {
        (1..=k)
            .permutations(k)
            .map(|images| Permutation { images })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(","))
    }
}

/// The counting statistics attached to `(I, L)` and `eta`:
/// `a` counts positions `t` with `i_{eta(t)} = i_{eta(k)}` and
/// `l_{eta(t)} < l_{eta(k)}`; `b` counts `t` with `l_{eta(t)} = l_{eta(k)}`
/// and `i_{eta(t)} > i_{eta(k)}`.
pub fn ab_counts(i_word: &[usize], l_word: &[usize], eta: &Permutation) -> Result<(usize, usize)> {
    let k = eta.k();
    if i_word.len() != k || l_word.len() != k {
        return Err(Error::Dimension("ab_counts arguments must share one length".into()));
    }
    if k == 0 {
        return Ok((0, 0));
    }
    let last = eta.apply(k);
    let (i_last, l_last) = (i_word[last - 1], l_word[last - 1]);
    let mut a = 0;
    let mut b = 0;
    for t in 1..=k {
        let p = eta.apply(t);
        if i_word[p - 1] == i_last && l_word[p - 1] < l_last {
            a += 1;
        }
        if l_word[p - 1] == l_last && i_word[p - 1] > i_last {
            b += 1;
        }
    }
    Ok((a, b))
}

/// All distinct arrangements of the multiset `word`, in no particular order.
pub fn distinct_arrangements(word: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(word.len());
    let mut used = vec![false; word.len()];
    fn rec(
        sorted: &[usize],
        used: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == sorted.len() {
            out.push(current.clone());
            return;
        }
        for p in 0..sorted.len() {
            if used[p] || (p > 0 && sorted[p] == sorted[p - 1] && !used[p - 1]) {
                continue;
            }
            used[p] = true;
            current.push(sorted[p]);
            rec(sorted, used, current, out);
            current.pop();
            used[p] = false;
        }
    }
    rec(&sorted, &mut used, &mut current, &mut out);
    out
}

/// The lexicographically smallest permutation carrying the sorted word `i0`
/// onto the arrangement `w`, or `None` if `w` is not an arrangement of `i0`.
pub fn canonical_eta(i0: &[usize], w: &[usize]) -> Option<Permutation> {
    let k = i0.len();
    if w.len() != k {
        return None;
    }
    let mut used = vec![false; k];
    let mut images = Vec::with_capacity(k);
    for t in 0..k {
        let p = (0..k).find(|&p| !used[p] && i0[p] == w[t])?;
        used[p] = true;
        images.push(p + 1);
    }
    Some(Permutation { images })
}

/// All admissible labels `(I0|L)` of the given content, with `L` in reverse
/// Semitic order. These index the wedge-side basis.
pub fn enumerate_admissible(c: &ContentVector) -> Vec<MultiIndex> {
    let i0 = c.i_multiset();
    let j0 = c.j_multiset();
    if i0.is_empty() {
        return vec![MultiIndex::empty()];
    }
    let mut out: Vec<MultiIndex> = distinct_arrangements(&j0)
        .into_iter()
        .map(|l| MultiIndex { i_word: i0.clone(), j_word: l })
        .filter(MultiIndex::is_admissible)
        .collect();
    out.sort_by(|a, b| rev_semitic_cmp(&a.j_word, &b.j_word));
    out
}

/// All source labels of the given content: distinct arrangements of the
/// `I`-multiset (reverse Semitic, outer) times distinct arrangements of the
/// `J`-multiset, the inner block for `W` sorted by the reverse Semitic order
/// of the un-permuted word under the canonical permutation of `W`.
///
/// Labels with a repeated pair are kept; callers that assemble matrices
/// filter them through [`MultiIndex::has_repeated_pair`].
pub fn enumerate_all_with_content(c: &ContentVector) -> Vec<MultiIndex> {
    let i0 = c.i_multiset();
    let j0 = c.j_multiset();
    if i0.is_empty() {
        return vec![MultiIndex::empty()];
    }
    let mut i_arrs = distinct_arrangements(&i0);
    i_arrs.sort_by(|a, b| rev_semitic_cmp(a, b));
    let j_arrs = distinct_arrangements(&j0);
    let mut out = Vec::new();
    for w in &i_arrs {
        let eta = canonical_eta(&i0, w).expect("w is an arrangement of i0");
        let inv = eta.inverse();
        let mut xs = j_arrs.clone();
        xs.sort_by(|a, b| {
            rev_semitic_cmp(&inv.permute(a).unwrap(), &inv.permute(b).unwrap())
        });
        for x in xs {
            out.push(MultiIndex { i_word: w.clone(), j_word: x });
        }
    }
    out
}

/// The non-degenerate source labels, i.e. [`enumerate_all_with_content`]
/// without repeated-pair labels. These are the columns of the full matrix.
pub fn enumerate_sources(c: &ContentVector) -> Vec<MultiIndex> {
    enumerate_all_with_content(c)
        .into_iter()
        .filter(|ij| !ij.has_repeated_pair())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::content;

    #[test]
    fn admissibility() {
        let a: MultiIndex = "123|123".parse().unwrap();
        assert!(a.is_admissible());
        let b: MultiIndex = "11|21".parse().unwrap();
        assert!(!b.is_admissible());
        let c: MultiIndex = "113|231".parse().unwrap();
        assert!(c.is_admissible());
    }

    #[test]
    fn robustness() {
        let w = Weight::new(vec![5, 4, 3], vec![3, 2, 1]).unwrap();
        assert!(is_robust(&w, &"123|123".parse().unwrap()).unwrap());
        let w2 = Weight::new(vec![6, 4, 3], vec![3, 2, 1]).unwrap();
        assert!(is_robust(&w2, &"113|123".parse().unwrap()).unwrap());
        let w3 = Weight::new(vec![1, 1, 0], vec![3, 2, 1]).unwrap();
        assert!(!is_robust(&w3, &"113|123".parse().unwrap()).unwrap());
        assert!(is_robust(&w, &"11|21".parse().unwrap()).is_err());
    }

    #[test]
    fn admissible_basis_labels() {
        let c = content(&"113|123".parse().unwrap(), 3, 3).unwrap();
        let labels: Vec<String> =
            enumerate_admissible(&c).iter().map(|x| x.to_string()).collect();
        assert_eq!(labels, vec!["113|123", "113|132", "113|231"]);

        let c = content(&"123|111".parse().unwrap(), 3, 3).unwrap();
        let labels: Vec<String> =
            enumerate_admissible(&c).iter().map(|x| x.to_string()).collect();
        assert_eq!(labels, vec!["123|111"]);

        let c = content(&"123|123".parse().unwrap(), 3, 3).unwrap();
        let labels: Vec<String> =
            enumerate_admissible(&c).iter().map(|x| x.to_string()).collect();
        assert_eq!(
            labels,
            vec!["123|123", "123|213", "123|132", "123|312", "123|231", "123|321"]
        );
    }

    #[test]
    fn empty_content_has_one_label() {
        let c = content(&MultiIndex::empty(), 2, 2).unwrap();
        assert_eq!(enumerate_all_with_content(&c), vec![MultiIndex::empty()]);
        assert_eq!(enumerate_admissible(&c), vec![MultiIndex::empty()]);
    }

    #[test]
    fn permutation_basics() {
        let id = Permutation::identity(3);
        assert_eq!(id.permute(&[1, 2, 3]).unwrap(), vec![1, 2, 3]);
        assert_eq!(id.sign(), 1);
        let swap = Permutation::from_images(vec![2, 1, 3]).unwrap();
        assert_eq!(swap.permute(&[1, 2, 3]).unwrap(), vec![2, 1, 3]);
        assert_eq!(swap.sign(), -1);
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(swap.permute(&[1, 2]).is_err());
    }

    #[test]
    fn composition_law() {
        let words = [[3, 1, 4], [2, 2, 5], [1, 2, 3]];
        for eta in Permutation::all(3) {
            for gamma in Permutation::all(3) {
                let comp = eta.compose(&gamma).unwrap();
                for w in &words {
                    assert_eq!(
                        comp.permute(w).unwrap(),
                        eta.permute(&gamma.permute(w).unwrap()).unwrap()
                    );
                }
                assert_eq!(comp.sign(), eta.sign() * gamma.sign());
            }
        }
    }

    #[test]
    fn ab_counts_distinct_words_vanish() {
        for eta in Permutation::all(3) {
            assert_eq!(ab_counts(&[1, 2, 3], &[3, 1, 2], &eta).unwrap(), (0, 0));
        }
    }

    #[test]
    fn ab_counts_with_repeats() {
        // last-read position determines the counts
        let i0 = [1, 1, 3];
        let l = [1, 2, 1];
        let eta = Permutation::from_images(vec![1, 3, 2]).unwrap(); // eta(k)=2: pair (1,2)
        assert_eq!(ab_counts(&i0, &l, &eta).unwrap(), (1, 0));
        let eta = Permutation::from_images(vec![2, 3, 1]).unwrap(); // eta(k)=1: pair (1,1)
        assert_eq!(ab_counts(&i0, &l, &eta).unwrap(), (0, 1));
    }

    #[test]
    fn full_enumeration_counts() {
        // distinct entries: (k!)^2 labels, k! admissible
        for k in 1..=4usize {
            let ij = MultiIndex::new((1..=k).collect(), (1..=k).collect()).unwrap();
            let c = content(&ij, k, k).unwrap();
            let all = enumerate_all_with_content(&c);
            let fact: usize = (1..=k).product();
            assert_eq!(all.len(), fact * fact);
            assert_eq!(enumerate_admissible(&c).len(), fact);
            let adm = enumerate_admissible(&c);
            assert!(adm.iter().all(|x| all.contains(x)));
        }
    }
}
