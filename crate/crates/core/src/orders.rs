//! The reverse Semitic lexicographic order on index words, the induced
//! orders attached to a permutation, and the row order used to triangularize
//! tableau-indexed matrices.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::indices::Permutation;
use crate::tableaux::Tableau;

/// Compare words by reading from right to left with the reverse order on
/// individual symbols: at the rightmost differing position, the word with
/// the larger symbol is the smaller word.
///
/// Total on words of one content; words of different lengths compare by
/// length first so the function is total everywhere.
pub fn rev_semitic_cmp(a: &[usize], b: &[usize]) -> Ordering {
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn same_content(a: &[usize], b: &[usize]) -> bool {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    sa == sb
}

/// Strict reverse Semitic comparison, checked to be on one content class.
pub fn rev_semitic_less(a: &[usize], b: &[usize]) -> Result<bool> {
    if !same_content(a, b) {
        return Err(Error::Dimension(format!("words {a:?} and {b:?} differ in content")));
    }
    Ok(rev_semitic_cmp(a, b) == Ordering::Less)
}

/// The order induced by `eta`: permuted labels compare the way their
/// un-permuted words compare in the base order.
pub fn induced_eta_cmp(
    eta: &Permutation,
    a: &[usize],
    b: &[usize],
    base: impl Fn(&[usize], &[usize]) -> Ordering,
) -> Result<Ordering> {
    let inv = eta.inverse();
    Ok(base(&inv.permute(a)?, &inv.permute(b)?))
}

pub fn induced_eta_less(eta: &Permutation, a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(induced_eta_cmp(eta, a, b, rev_semitic_cmp)? == Ordering::Less)
}

/// A total order tag on index words.
#[derive(Debug, Clone)]
pub enum OrderKind {
    ReverseSemitic,
    ClausenRow,
    InducedEta { eta: Permutation, base: Box<OrderKind> },
}

impl OrderKind {
    pub fn word_cmp(&self, a: &[usize], b: &[usize]) -> Result<Ordering> {
        match self {
            OrderKind::ReverseSemitic => Ok(rev_semitic_cmp(a, b)),
            OrderKind::ClausenRow => {
                Err(Error::Invalid("the row order compares tableaux, not words".into()))
            }
            OrderKind::InducedEta { eta, base } => {
                let inv = eta.inverse();
                base.word_cmp(&inv.permute(a)?, &inv.permute(b)?)
            }
        }
    }
}

/// Row order on same-shape tableaux: compare the per-row symbol-count
/// vectors top to bottom, lexicographically. Transporting a larger symbol
/// into a strictly higher row lowers that row's count vector, so the word
/// strictly decreases; that descent is the only property consumed here.
///
/// Identical row contents compare equal, so this is a total preorder; on
/// semistandard fillings of one shape it is a total order.
pub fn clausen_row_cmp(t1: &Tableau, t2: &Tableau) -> Result<Ordering> {
    if t1.shape() != t2.shape() {
        return Err(Error::Dimension("row order is defined on one shape".into()));
    }
    let max_symbol = t1
        .symbols()
        .chain(t2.symbols())
        .max()
        .unwrap_or(0);
    for row in t1.shape().row_indices() {
        let c1 = t1.row_count_vector(row, max_symbol);
        let c2 = t2.row_count_vector(row, max_symbol);
        match c1.cmp(&c2) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

pub fn clausen_row_less(t1: &Tableau, t2: &Tableau) -> Result<bool> {
    Ok(clausen_row_cmp(t1, t2)? == Ordering::Less)
}
