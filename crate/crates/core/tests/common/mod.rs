//! Shared random-instance generators for the property and acceptance suites.

use odd_linkage::*;
use rand::Rng;

/// A random admissible `(I0|J)` with `1 <= k <= kmax`, block sizes capped by
/// `n` so strictly increasing `j`-blocks always exist.
pub fn random_admissible<R: Rng>(rng: &mut R, m: usize, n: usize, kmax: usize) -> MultiIndex {
    loop {
        let k = rng.gen_range(1..=kmax);
        let mut i_word: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=m)).collect();
        i_word.sort_unstable();
        let mut ok = true;
        let mut j_word = Vec::with_capacity(k);
        let mut t = 0;
        while t < k {
            let mut len = 1;
            while t + len < k && i_word[t + len] == i_word[t] {
                len += 1;
            }
            if len > n {
                ok = false;
                break;
            }
            let mut js: Vec<usize> = (1..=n).collect();
            for pick in 0..len {
                let idx = rng.gen_range(0..js.len() - (len - pick - 1));
                j_word.push(js.remove(idx));
                js.retain(|&x| x > *j_word.last().unwrap());
            }
            t += len;
        }
        if ok {
            return MultiIndex::new(i_word, j_word).unwrap();
        }
    }
}

/// A dominant weight that is robust for `ij`, with small random slack.
pub fn random_robust_weight<R: Rng>(rng: &mut R, m: usize, n: usize, ij: &MultiIndex) -> Weight {
    let mut icount = vec![0i64; m];
    for &i in &ij.i_word {
        icount[i - 1] += 1;
    }
    let mut jcount = vec![0i64; n];
    for &j in &ij.j_word {
        jcount[j - 1] += 1;
    }
    let mut plus = vec![0i64; m];
    plus[m - 1] = icount[m - 1] + rng.gen_range(0..=3);
    for i in (0..m - 1).rev() {
        plus[i] = plus[i + 1] + icount[i] + rng.gen_range(0..=2);
    }
    let mut minus = vec![0i64; n];
    minus[n - 1] = rng.gen_range(-3..=3);
    for j in (0..n - 1).rev() {
        minus[j] = minus[j + 1] + jcount[j + 1] + rng.gen_range(0..=2);
    }
    let w = Weight::new(plus, minus).unwrap();
    debug_assert!(is_robust(&w, ij).unwrap());
    w
}

/// A uniformly random weight with entries in `lo..=hi`.
pub fn random_weight<R: Rng>(rng: &mut R, m: usize, n: usize, lo: i64, hi: i64) -> Weight {
    Weight::new(
        (0..m).map(|_| rng.gen_range(lo..=hi)).collect(),
        (0..n).map(|_| rng.gen_range(lo..=hi)).collect(),
    )
    .unwrap()
}

/// The full symbolic matrix of a content: admissible rows, all
/// non-degenerate source columns.
pub fn full_matrix_for(ij: &MultiIndex, m: usize, n: usize) -> PsiMatrix {
    let c = content(ij, m, n).unwrap();
    let rows = enumerate_admissible(&c);
    let cols: Vec<PsiColumn> = enumerate_sources(&c).into_iter().map(PsiColumn::Source).collect();
    psi_matrix(&PsiRows::Admissible(rows), &cols, None).unwrap()
}

/// The square block of columns `pi_{eta I0 | eta L}` over the admissible
/// `L`s, against the admissible rows.
pub fn eta_block(ij: &MultiIndex, m: usize, n: usize, eta: &Permutation) -> PsiMatrix {
    let c = content(ij, m, n).unwrap();
    let i0 = c.i_multiset();
    let rows = enumerate_admissible(&c);
    let cols: Vec<PsiColumn> = rows
        .iter()
        .map(|label| {
            PsiColumn::Source(
                MultiIndex::new(
                    eta.permute(&i0).unwrap(),
                    eta.permute(&label.j_word).unwrap(),
                )
                .unwrap(),
            )
        })
        .collect();
    psi_matrix(&PsiRows::Admissible(rows), &cols, None).unwrap()
}
