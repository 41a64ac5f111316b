//! Simple odd links and their transitive closures, collections with their
//! O-sets, chain construction, and composition-factor candidacy decisions.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::{
    enumerate_admissible, enumerate_sources, is_robust, MultiIndex, Permutation,
};
use crate::linalg::{is_prime, rank_mod_p, rank_rational};
use crate::omega::OmegaExpr;
use crate::psi::{diagonal_alpha, psi_matrix, PsiColumn, PsiRows};
use crate::tableaux::{enumerate_marked, reading_word, skew_shapes_from, ReadingMode};
use crate::weights::{content, Weight};

fn check_modulus(modulus: Option<u64>) -> Result<()> {
    if let Some(p) = modulus {
        if p <= 2 || !is_prime(p) {
            return Err(Error::Invalid(format!("modulus {p} is not an odd prime")));
        }
    }
    Ok(())
}

fn vanishes(value: i64, modulus: Option<u64>) -> bool {
    match modulus {
        None => value == 0,
        Some(p) => value.rem_euclid(p as i64) == 0,
    }
}

/// One step of a chain: the weight reached, and the move that reached it
/// (`None` for the start).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub weight: Weight,
    #[serde(rename = "move")]
    pub mv: Option<(usize, usize)>,
}

/// A witness sequence of simply-odd-linked weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkChain {
    pub steps: Vec<ChainStep>,
    pub polynomial_only: bool,
    pub modulus: Option<u64>,
}

impl LinkChain {
    pub fn start(&self) -> &Weight {
        &self.steps[0].weight
    }

    pub fn end(&self) -> &Weight {
        &self.steps[self.steps.len() - 1].weight
    }

    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.steps.len() <= 1
    }

    /// Independent re-verification: each consecutive pair must be related by
    /// a one-pair shift in either direction whose omega value vanishes at
    /// the stated modulus, and the polynomial flag must hold on every step.
    pub fn verify(&self) -> Result<()> {
        check_modulus(self.modulus)?;
        if self.steps.is_empty() {
            return Err(Error::Invalid("a chain has at least its start".into()));
        }
        if self.steps[0].mv.is_some() {
            return Err(Error::Invalid("the start of a chain carries no move".into()));
        }
        for t in 1..self.steps.len() {
            let prev = &self.steps[t - 1].weight;
            let next = &self.steps[t].weight;
            let (i, j) = self.steps[t]
                .mv
                .ok_or_else(|| Error::Invalid(format!("step {t} lacks a move")))?;
            let forward = prev.shift_pair(i, j)? == *next;
            let backward = next.shift_pair(i, j)? == *prev;
            if !forward && !backward {
                return Err(Error::Invalid(format!(
                    "step {t}: weights are not related by the ({i}|{j}) shift"
                )));
            }
            if !vanishes(prev.omega(i, j)?, self.modulus) {
                return Err(Error::Invalid(format!(
                    "step {t}: omega_({i},{j}) does not vanish"
                )));
            }
        }
        if self.polynomial_only
            && !self.steps.iter().all(|s| s.weight.is_polynomial())
        {
            return Err(Error::Invalid(
                "chain is flagged polynomial but leaves the polynomial cone".into(),
            ));
        }
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let mut parts = vec![self.steps[0].weight.to_string()];
        for step in &self.steps[1..] {
            let (i, j) = step.mv.expect("non-initial step has a move");
            parts.push(format!("~({i},{j})~> {}", step.weight));
        }
        parts.join("  ")
    }
}

/// The witnessing pair when two weights differ by one shift whose omega
/// value vanishes, if any.
pub fn simply_odd_linked(w1: &Weight, w2: &Weight) -> Result<Option<(usize, usize)>> {
    if w1.m != w2.m || w1.n != w2.n {
        return Err(Error::Dimension("weights live in different groups".into()));
    }
    for i in 1..=w1.m {
        for j in 1..=w1.n {
            let down = w1.shift_pair(i, j)?;
            if down == *w2 && vanishes(w1.omega(i, j)?, None) {
                return Ok(Some((i, j)));
            }
            let up = w1.unshift_pair(i, j)?;
            if up == *w2 && vanishes(w2.omega(i, j)?, None) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Breadth-first search for a chain of simple odd moves from `w1` to `w2`.
///
/// Intermediate weights are confined to the componentwise interval hull of
/// the endpoints, and the search depth is capped (by `m * n` unless a cap
/// is supplied). With `polynomial_only` every visited weight must be
/// dominant polynomial. With a modulus the vanishing test is modular.
pub fn odd_linked(
    w1: &Weight,
    w2: &Weight,
    polynomial_only: bool,
    modulus: Option<u64>,
    max_depth: Option<usize>,
) -> Result<Option<LinkChain>> {
    if w1.m != w2.m || w1.n != w2.n {
        return Err(Error::Dimension("weights live in different groups".into()));
    }
    check_modulus(modulus)?;
    let admit = |w: &Weight| -> bool {
        if polynomial_only && !w.is_polynomial() {
            return false;
        }
        let in_hull = |a: &[i64], b: &[i64], x: &[i64]| {
            x.iter()
                .zip(a.iter().zip(b))
                .all(|(&v, (&p, &q))| v >= p.min(q) && v <= p.max(q))
        };
        in_hull(&w1.plus, &w2.plus, &w.plus) && in_hull(&w1.minus, &w2.minus, &w.minus)
    };
    if polynomial_only && (!w1.is_polynomial() || !w2.is_polynomial()) {
        return Ok(None);
    }
    let depth_cap = max_depth.unwrap_or(w1.m * w1.n);
    if w1 == w2 {
        return Ok(Some(LinkChain {
            steps: vec![ChainStep { weight: w1.clone(), mv: None }],
            polynomial_only,
            modulus,
        }));
    }

    type Key = (Vec<i64>, Vec<i64>);
    let key = |w: &Weight| -> Key { (w.plus.clone(), w.minus.clone()) };
    let mut parent: HashMap<Key, (Key, (usize, usize))> = HashMap::new();
    let mut depth: HashMap<Key, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(key(w1), 0);
    queue.push_back(w1.clone());

    while let Some(current) = queue.pop_front() {
        let d = depth[&key(&current)];
        if d == depth_cap {
            continue;
        }
        for i in 1..=w1.m {
            for j in 1..=w1.n {
                if !vanishes(current.omega(i, j)?, modulus) {
                    continue;
                }
                for next in [current.shift_pair(i, j)?, current.unshift_pair(i, j)?] {
                    if !admit(&next) || depth.contains_key(&key(&next)) {
                        continue;
                    }
                    parent.insert(key(&next), (key(&current), (i, j)));
                    depth.insert(key(&next), d + 1);
                    if next == *w2 {
                        let mut trail: Vec<(Key, (usize, usize))> = Vec::new();
                        let mut cursor = key(&next);
                        while let Some((prev, mv)) = parent.get(&cursor) {
                            trail.push((cursor.clone(), *mv));
                            cursor = prev.clone();
                        }
                        trail.reverse();
                        let mut steps = vec![ChainStep { weight: w1.clone(), mv: None }];
                        for ((plus, minus), mv) in trail {
                            let weight = Weight { m: w1.m, n: w1.n, plus, minus };
                            steps.push(ChainStep { weight, mv: Some(mv) });
                        }
                        let chain = LinkChain { steps, polynomial_only, modulus };
                        chain.verify()?;
                        return Ok(Some(chain));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

/// Where a collection came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OSetLabel {
    /// Indexed by an admissible word of the `J`-content.
    Word(Vec<usize>),
    /// Indexed by a tableau, 1-based in row order.
    TableauIndex(usize),
}

impl std::fmt::Display for OSetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OSetLabel::Word(word) => {
                if word.iter().all(|&x| x <= 9) {
                    for x in word {
                        write!(f, "{x}")?;
                    }
                    Ok(())
                } else {
                    write!(
                        f,
                        "{}",
                        word.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    )
                }
            }
            OSetLabel::TableauIndex(s) => write!(f, "T{s}"),
        }
    }
}

/// The deduplicated diagonal coefficients of one collection, stored
/// sign-normalized as `omega - a + b`, together with the word pair whose
/// forward prefixes realize the chain when every entry vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OSet {
    pub label: OSetLabel,
    pub entries: Vec<OmegaExpr>,
    pub chain_i: Vec<usize>,
    pub chain_j: Vec<usize>,
}

impl OSet {
    /// All entries vanish at `w` (exactly, or modulo the given prime).
    pub fn vanishes_at(&self, w: &Weight, modulus: Option<u64>) -> Result<bool> {
        check_modulus(modulus)?;
        for e in &self.entries {
            if !vanishes(e.evaluate(w)?, modulus) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sign-normalized alpha entries of the collection on `(i0, l)`, one per
/// position read last, deduplicated. Positions are scanned from the end so
/// the entry of the last pair is listed first.
fn position_alphas(i0: &[usize], l: &[usize]) -> Vec<OmegaExpr> {
    let k = i0.len();
    let mut out: Vec<OmegaExpr> = Vec::new();
    for q in (1..=k).rev() {
        let mut images: Vec<usize> = (1..=k).filter(|&t| t != q).collect();
        images.push(q);
        let eta = Permutation::from_images(images).expect("valid images");
        let alpha = diagonal_alpha(i0, l, &eta).expect("matching lengths");
        let entry = alpha.scale(eta.sign());
        if !out.contains(&entry) {
            out.push(entry);
        }
    }
    out
}

/// Order the pairs of `(i0, l)` so that, whenever all alpha entries vanish,
/// every forward prefix step has vanishing omega: same-`i` pairs keep their
/// `j`-ascending order, same-`j` pairs go `i`-descending, and remaining ties
/// break lexicographically. The constraint graph is acyclic because along
/// any directed cycle `j` never decreases and strictly increases somewhere.
fn chain_order(i0: &[usize], l: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = i0.len();
    let pairs: Vec<(usize, usize)> = i0.iter().copied().zip(l.iter().copied()).collect();
    let before = |p: (usize, usize), q: (usize, usize)| {
        (p.0 == q.0 && p.1 < q.1) || (p.1 == q.1 && p.0 > q.0)
    };
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<usize> = None;
        for t in 0..k {
            if placed[t] {
                continue;
            }
            let blocked = (0..k).any(|s| !placed[s] && s != t && before(pairs[s], pairs[t]));
            if blocked {
                continue;
            }
            best = match best {
                None => Some(t),
                Some(b) if pairs[t] < pairs[b] => Some(t),
                keep => keep,
            };
        }
        let t = best.expect("acyclic constraint graph");
        placed[t] = true;
        order.push(t);
    }
    (
        order.iter().map(|&t| pairs[t].0).collect(),
        order.iter().map(|&t| pairs[t].1).collect(),
    )
}

/// Collections and their O-sets for an admissible `(I|J)` at `w`.
///
/// Robust weights use one collection per admissible word of the content;
/// otherwise the collections are indexed by the semistandard tableaux of
/// the attached shape. When the tableau data does not exist (the shift
/// leaves the polynomial range) the word-indexed sets are used as a
/// necessary-condition fallback.
pub fn collections_and_osets(w: &Weight, ij: &MultiIndex) -> Result<Vec<OSet>> {
    if !ij.is_admissible() {
        return Err(Error::Precondition(format!("({ij}) is not admissible")));
    }
    ij.check_range(w.m, w.n)?;
    if is_robust(w, ij)? {
        return word_indexed_osets(w, ij);
    }
    match tableau_indexed_osets(w, ij) {
        Ok(osets) => Ok(osets),
        Err(_) => word_indexed_osets(w, ij),
    }
}

/// The word-indexed (robust-path) collections.
pub fn word_indexed_osets(w: &Weight, ij: &MultiIndex) -> Result<Vec<OSet>> {
    let c = content(ij, w.m, w.n)?;
    let i0 = c.i_multiset();
    let mut out = Vec::new();
    for label in enumerate_admissible(&c) {
        if label.is_empty() {
            continue;
        }
        let n_word = label.j_word.clone();
        let entries = position_alphas(&i0, &n_word);
        let (chain_i, chain_j) = chain_order(&i0, &n_word);
        out.push(OSet { label: OSetLabel::Word(n_word), entries, chain_i, chain_j });
    }
    Ok(out)
}

/// The tableau-indexed (general-path) collections, read top-down and right
/// to left.
pub fn tableau_indexed_osets(w: &Weight, ij: &MultiIndex) -> Result<Vec<OSet>> {
    let c = content(ij, w.m, w.n)?;
    let (dplus, _) = skew_shapes_from(w, ij)?;
    let jcontent = c.j_multiset();
    let tableaux = enumerate_marked(&dplus, &jcontent, w, false)?;
    let mut out = Vec::new();
    for (s, t) in tableaux.iter().enumerate() {
        let (i0, jword) = reading_word(t, ReadingMode::RowsTopDownRightToLeft);
        let entries = position_alphas(&i0, &jword);
        out.push(OSet {
            label: OSetLabel::TableauIndex(s + 1),
            entries,
            chain_i: i0,
            chain_j: jword,
        });
    }
    Ok(out)
}

/// The forward-prefix chain attached to a collection whose O-set vanishes:
/// step `t` shifts by `(i0_t | jword_t)` and is verified simply odd linked
/// before it is taken.
pub fn chain_from_collection(
    w: &Weight,
    i0: &[usize],
    jword: &[usize],
    modulus: Option<u64>,
) -> Result<LinkChain> {
    if i0.len() != jword.len() {
        return Err(Error::Dimension("chain words must share one length".into()));
    }
    check_modulus(modulus)?;
    let mut steps = vec![ChainStep { weight: w.clone(), mv: None }];
    let mut current = w.clone();
    for t in 0..i0.len() {
        let (i, j) = (i0[t], jword[t]);
        let value = current.omega(i, j)?;
        if !vanishes(value, modulus) {
            return Err(Error::Precondition(format!(
                "omega_({i},{j}) = {value} does not vanish at step {}; the O-set is not all zero",
                t + 1
            )));
        }
        current = current.shift_pair(i, j)?;
        steps.push(ChainStep { weight: current.clone(), mv: Some((i, j)) });
    }
    let polynomial_only = steps.iter().all(|s| s.weight.is_polynomial());
    let chain = LinkChain { steps, polynomial_only, modulus };
    chain.verify()?;
    Ok(chain)
}

/// Outcome of a composition-factor candidacy query.
#[derive(Debug, Clone, Serialize)]
pub enum FactorVerdict {
    /// Every O-set has an entry that survives: the floor map is surjective
    /// by triangularity and the weight is ruled out.
    NotCandidate,
    /// Some O-set vanishes; the witnessing chain is attached. Outside the
    /// robust case this is a necessary condition only.
    CandidateWithChain(LinkChain),
    /// Robust concrete case: surjectivity decided exactly by rank.
    RobustDecided {
        factor_possible: bool,
        rank: usize,
        target_dim: usize,
        chain: Option<LinkChain>,
    },
}

/// Decide candidacy of the shifted weight as a composition factor label.
///
/// All O-sets are computed first; a surviving entry in every O-set rules
/// the weight out, a vanishing O-set yields a chain. For robust `w` with
/// `concrete` set, surjectivity is additionally decided exactly by the rank
/// of the full evaluated matrix.
pub fn factor_candidate(
    w: &Weight,
    ij: &MultiIndex,
    concrete: bool,
    modulus: Option<u64>,
) -> Result<FactorVerdict> {
    check_modulus(modulus)?;
    let shifted = w.shift(ij)?;
    if !shifted.is_dominant() {
        return Err(Error::Precondition(format!(
            "shifted weight {shifted} is not dominant"
        )));
    }
    let osets = collections_and_osets(w, ij)?;
    let mut witness: Option<LinkChain> = None;
    for oset in &osets {
        if oset.vanishes_at(w, modulus)? {
            witness = Some(chain_from_collection(w, &oset.chain_i, &oset.chain_j, modulus)?);
            break;
        }
    }
    if concrete && is_robust(w, ij)? {
        let c = content(ij, w.m, w.n)?;
        let rows = enumerate_admissible(&c);
        let target_dim = rows.len();
        let cols: Vec<PsiColumn> =
            enumerate_sources(&c).into_iter().map(PsiColumn::Source).collect();
        let matrix = psi_matrix(&PsiRows::Admissible(rows), &cols, None)?;
        let evaluated = matrix.evaluate(w)?;
        let rank = match modulus {
            None => rank_rational(&evaluated),
            Some(p) => rank_mod_p(&evaluated, p)?,
        };
        return Ok(FactorVerdict::RobustDecided {
            factor_possible: rank < target_dim,
            rank,
            target_dim,
            chain: witness,
        });
    }
    Ok(match witness {
        Some(chain) => FactorVerdict::CandidateWithChain(chain),
        None => FactorVerdict::NotCandidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(plus: &[i64], minus: &[i64]) -> Weight {
        Weight::new(plus.to_vec(), minus.to_vec()).unwrap()
    }

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn exprs(entries: &[&str]) -> Vec<OmegaExpr> {
        entries.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn simple_link_detection() {
        // omega_{31}(w) = plus_3 + minus_1 + 0 = 0
        let lam = w(&[5, 4, 2], &[-2, -3, -4]);
        assert_eq!(lam.omega(3, 1).unwrap(), 0);
        let mu = lam.shift_pair(3, 1).unwrap();
        assert_eq!(simply_odd_linked(&lam, &mu).unwrap(), Some((3, 1)));
        assert_eq!(simply_odd_linked(&mu, &lam).unwrap(), Some((3, 1)));
        assert_eq!(simply_odd_linked(&lam, &lam).unwrap(), None);
        let far = w(&[9, 9, 9], &[9, 9, 9]);
        assert_eq!(simply_odd_linked(&lam, &far).unwrap(), None);
        assert!(simply_odd_linked(&lam, &w(&[1], &[1])).is_err());
    }

    #[test]
    fn bfs_reflexive_and_invalid_modulus() {
        let lam = w(&[2, 1], &[1, 0]);
        let chain = odd_linked(&lam, &lam, false, None, None).unwrap().unwrap();
        assert!(chain.is_empty());
        assert!(odd_linked(&lam, &lam, false, Some(2), None).is_err());
        assert!(odd_linked(&lam, &lam, false, Some(9), None).is_err());
    }

    #[test]
    fn bfs_finds_two_step_chain() {
        // omega_{13} = 0 and omega_{22} = 0 at this weight
        let lam = w(&[2, 1, 0], &[0, -1, -2]);
        let target = lam.shift_pair(1, 3).unwrap().shift_pair(2, 2).unwrap();
        let chain = odd_linked(&lam, &target, false, None, None).unwrap().unwrap();
        assert_eq!(chain.len(), 2);
        chain.verify().unwrap();
        assert_eq!(chain.end(), &target);
    }

    #[test]
    fn word_indexed_osets_match_position_data() {
        let lam = w(&[5, 4, 3], &[5, 2, 1]);
        let ij = mi("123|111");
        let osets = collections_and_osets(&lam, &ij).unwrap();
        assert_eq!(osets.len(), 1);
        assert_eq!(osets[0].entries, exprs(&["w31", "w21+1", "w11+2"]));
        assert_eq!(osets[0].chain_i, vec![3, 2, 1]);
        assert_eq!(osets[0].chain_j, vec![1, 1, 1]);
    }

    #[test]
    fn k1_oset_is_single_symbol() {
        let lam = w(&[3, 2], &[1, 0]);
        let osets = collections_and_osets(&lam, &mi("2|1")).unwrap();
        assert_eq!(osets.len(), 1);
        assert_eq!(osets[0].entries, exprs(&["w21"]));
    }

    #[test]
    fn chain_requires_vanishing() {
        let lam = w(&[5, 4, 3], &[3, 2, 1]);
        assert!(chain_from_collection(&lam, &[3], &[3], None).is_err());
        // omega_{33} = 0 here
        let lam0 = w(&[5, 4, 3], &[3, 2, -1]);
        let chain = chain_from_collection(&lam0, &[3], &[3], None).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.steps[1].mv, Some((3, 3)));
    }

    #[test]
    fn chain_order_respects_constraints() {
        let (ci, cj) = chain_order(&[1, 1, 3], &[1, 2, 1]);
        assert_eq!(ci, vec![3, 1, 1]);
        assert_eq!(cj, vec![1, 1, 2]);
        let (ci, cj) = chain_order(&[1, 1, 3], &[1, 2, 3]);
        assert_eq!(ci, vec![1, 1, 3]);
        assert_eq!(cj, vec![1, 2, 3]);
        let (ci, cj) = chain_order(&[1, 2, 3], &[1, 1, 1]);
        assert_eq!(ci, vec![3, 2, 1]);
        assert_eq!(cj, vec![1, 1, 1]);
    }

    #[test]
    fn factor_candidate_trivial_k1() {
        let lam = w(&[3, 2], &[1, 0]);
        assert!(lam.omega(2, 1).unwrap() != 0);
        match factor_candidate(&lam, &mi("2|1"), false, None).unwrap() {
            FactorVerdict::NotCandidate => {}
            other => panic!("expected NotCandidate, got {other:?}"),
        }
    }

    #[test]
    fn factor_candidate_rejects_non_dominant_shift() {
        let lam = w(&[1, 1], &[1, 1]);
        // shifting (1|2) gives plus (0,1): not dominant
        assert!(factor_candidate(&lam, &mi("1|2"), false, None).is_err());
    }
}
