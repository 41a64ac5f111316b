//! Skew diagrams attached to a weight and a multi-index, their semistandard
//! fillings, and the reading conventions that turn a filling into the word
//! pair feeding the linkage machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::MultiIndex;
use crate::weights::{content, Weight};

/// A finite set of 1-based `(row, column)` cells.
///
/// The diagrams arising from dominant data are genuine skew shapes
/// (differences of partition diagrams); [`SkewDiagram::is_skew_shape`]
/// checks that, but it is not enforced at construction because the cell
/// description below stays meaningful for non-dominant shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewDiagram {
    pub cells: BTreeSet<(usize, usize)>,
}

impl SkewDiagram {
    pub fn new(cells: BTreeSet<(usize, usize)>) -> Self {
        SkewDiagram { cells }
    }

    pub fn empty() -> Self {
        SkewDiagram { cells: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Row indices present, ascending (top to bottom).
    pub fn row_indices(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.cells.iter().map(|&(r, _)| r).collect();
        rows.dedup();
        rows
    }

    /// Cells of one row, ascending column.
    pub fn row_cells(&self, row: usize) -> Vec<(usize, usize)> {
        self.cells.iter().copied().filter(|&(r, _)| r == row).collect()
    }

    /// True when the cells are a difference of two left-justified partition
    /// diagrams: every occupied row is contiguous, and both the row starts
    /// and the row ends weakly decrease going down over occupied rows.
    pub fn is_skew_shape(&self) -> bool {
        let rows = self.row_indices();
        let mut spans = Vec::new();
        for &r in &rows {
            let cells = self.row_cells(r);
            let lo = cells.first().unwrap().1;
            let hi = cells.last().unwrap().1;
            if cells.len() != hi - lo + 1 {
                return false;
            }
            spans.push((lo, hi));
        }
        spans.windows(2).all(|w| w[1].0 <= w[0].0 && w[1].1 <= w[0].1)
    }
}

/// A filling of a skew diagram by symbols `1..=n` (rendered as `m+j`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tableau {
    shape: SkewDiagram,
    filling: BTreeMap<(usize, usize), usize>,
}

impl Tableau {
    pub fn new(shape: SkewDiagram, filling: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        if filling.len() != shape.len() || !filling.keys().all(|c| shape.cells.contains(c)) {
            return Err(Error::Invalid("filling does not cover the shape exactly".into()));
        }
        Ok(Tableau { shape, filling })
    }

    pub fn shape(&self) -> &SkewDiagram {
        &self.shape
    }

    pub fn symbol_at(&self, cell: (usize, usize)) -> Option<usize> {
        self.filling.get(&cell).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.filling.values().copied()
    }

    /// Counts of each symbol `1..=max_symbol` in the given row.
    pub fn row_count_vector(&self, row: usize, max_symbol: usize) -> Vec<usize> {
        let mut counts = vec![0; max_symbol];
        for (&(r, _), &s) in &self.filling {
            if r == row {
                counts[s - 1] += 1;
            }
        }
        counts
    }

    /// Rows weakly increase left to right, columns strictly increase top to
    /// bottom, each over the cells actually present.
    pub fn is_semistandard(&self) -> bool {
        for (&(r, c), &s) in &self.filling {
            let left = self
                .filling
                .iter()
                .filter(|(&(r2, c2), _)| r2 == r && c2 < c)
                .max_by_key(|(&(_, c2), _)| c2);
            if let Some((_, &ls)) = left {
                if ls > s {
                    return false;
                }
            }
            let up = self
                .filling
                .iter()
                .filter(|(&(r2, c2), _)| c2 == c && r2 < r)
                .max_by_key(|(&(r2, _), _)| r2);
            if let Some((_, &us)) = up {
                if us >= s {
                    return false;
                }
            }
        }
        true
    }

    /// Grid rendering with each symbol `j` shown as `offset + j`, the form
    /// used when symbols name the second block of `GL(m|n)`.
    pub fn render_with_offset(&self, offset: usize) -> String {
        if self.shape.is_empty() {
            return "(empty)".into();
        }
        let rows = self.shape.row_indices();
        let (min_row, max_row) = (*rows.first().unwrap(), *rows.last().unwrap());
        let max_col = self.shape.cells.iter().map(|&(_, c)| c).max().unwrap();
        let width = (offset + self.symbols().max().unwrap_or(1)).to_string().len();
        let mut out = String::new();
        for r in min_row..=max_row {
            let mut line = Vec::new();
            for c in 1..=max_col {
                match self.filling.get(&(r, c)) {
                    Some(s) => line.push(format!("{:>width$}", offset + s)),
                    None => line.push(format!("{:>width$}", ".")),
                }
            }
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Rows strictly increasing (the extra condition of the distinct case).
    pub fn has_strict_rows(&self) -> bool {
        for (&(r, c), &s) in &self.filling {
            for (&(r2, c2), &s2) in &self.filling {
                if r2 == r && c2 < c && s2 >= s {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.is_empty() {
            return write!(f, "(empty)");
        }
        let min_row = *self.shape.row_indices().first().unwrap();
        let max_row = *self.shape.row_indices().last().unwrap();
        let max_col = self.shape.cells.iter().map(|&(_, c)| c).max().unwrap();
        let width = self
            .filling
            .values()
            .map(|s| s.to_string().len())
            .max()
            .unwrap_or(1);
        for r in min_row..=max_row {
            let mut line = Vec::new();
            for c in 1..=max_col {
                match self.filling.get(&(r, c)) {
                    Some(s) => line.push(format!("{s:>width$}")),
                    None => line.push(format!("{:>width$}", ".")),
                }
            }
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Reading conventions for turning a tableau into words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadingMode {
    /// Rows top to bottom, within a row right to left.
    RowsTopDownRightToLeft,
    /// Rows bottom to top, within a row left to right.
    RowsBottomUpLeftToRight,
}

/// The diagram pair attached to `(w, (I|J))` via the cell description:
/// the first diagram has, for each symbol `i` of multiplicity `c` in `I`,
/// the cells in column `i` at rows `plus_i - c + 1 ..= plus_i`; the second
/// has, for each `j` of multiplicity `d` in `J`, the cells in row `j` at
/// columns `minus_j + 1 ..= minus_j + d`.
pub fn skew_shapes_from(w: &Weight, ij: &MultiIndex) -> Result<(SkewDiagram, SkewDiagram)> {
    ij.check_range(w.m, w.n)?;
    let c = content(ij, w.m, w.n)?;
    let mut dplus = BTreeSet::new();
    for i in 1..=w.m {
        let mult = -c.xplus[i - 1];
        for offset in 0..mult {
            let row = w.plus[i - 1] - offset;
            if row <= 0 {
                return Err(Error::Precondition(format!(
                    "column {i} of the plus diagram underflows (plus_{i} = {}, multiplicity {mult})",
                    w.plus[i - 1]
                )));
            }
            dplus.insert((row as usize, i));
        }
    }
    let mut dminus = BTreeSet::new();
    for j in 1..=w.n {
        let mult = c.xminus[j - 1];
        for s in 1..=mult {
            let col = w.minus[j - 1] + s;
            if col <= 0 {
                return Err(Error::Precondition(format!(
                    "row {j} of the minus diagram underflows (minus_{j} = {})",
                    w.minus[j - 1]
                )));
            }
            dminus.insert((j, col as usize));
        }
    }
    Ok((SkewDiagram::new(dplus), SkewDiagram::new(dminus)))
}

/// All semistandard fillings of `dplus` with the symbols of `jcontent`
/// (a weakly increasing word of `j`-values), in row order.
///
/// `distinct_filter` additionally imposes the distinct-case conditions:
/// strictly increasing rows and, for symbols on equal `minus` levels, the
/// companion column condition. It requires distinct entries in both words.
pub fn enumerate_marked(
    dplus: &SkewDiagram,
    jcontent: &[usize],
    w: &Weight,
    distinct_filter: bool,
) -> Result<Vec<Tableau>> {
    if dplus.len() != jcontent.len() {
        return Err(Error::Dimension(format!(
            "{} cells cannot carry {} symbols",
            dplus.len(),
            jcontent.len()
        )));
    }
    if jcontent.iter().any(|&j| j == 0 || j > w.n) {
        return Err(Error::OutOfRange("symbol outside 1..=n".into()));
    }
    let cells: Vec<(usize, usize)> = dplus.cells.iter().copied().collect();
    let mut remaining = vec![0usize; w.n];
    for &j in jcontent {
        remaining[j - 1] += 1;
    }
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Vec::new();
    fill(&cells, 0, &mut remaining, &mut filling, &mut out);

    let mut tableaux: Vec<Tableau> = out
        .into_iter()
        .map(|f| Tableau { shape: dplus.clone(), filling: f })
        .collect();
    if distinct_filter {
        let distinct_j = {
            let mut s = jcontent.to_vec();
            s.sort_unstable();
            s.windows(2).all(|p| p[0] != p[1])
        };
        let columns: BTreeSet<usize> = cells.iter().map(|&(_, c)| c).collect();
        if !distinct_j || columns.len() != cells.len() {
            return Err(Error::Precondition(
                "the distinct-case filter needs distinct entries in both words".into(),
            ));
        }
        tableaux.retain(|t| t.has_strict_rows() && companion_columns_decrease(t, w));
    }
    tableaux.sort_by(|a, b| crate::orders::clausen_row_cmp(a, b).expect("one shape"));
    Ok(tableaux)
}

fn fill(
    cells: &[(usize, usize)],
    pos: usize,
    remaining: &mut Vec<usize>,
    filling: &mut BTreeMap<(usize, usize), usize>,
    out: &mut Vec<BTreeMap<(usize, usize), usize>>,
) {
    if pos == cells.len() {
        out.push(filling.clone());
        return;
    }
    let (r, c) = cells[pos];
    let row_min = filling
        .iter()
        .filter(|(&(r2, c2), _)| r2 == r && c2 < c)
        .max_by_key(|(&(_, c2), _)| c2)
        .map(|(_, &s)| s)
        .unwrap_or(0);
    let col_min = filling
        .iter()
        .filter(|(&(r2, c2), _)| c2 == c && r2 < r)
        .max_by_key(|(&(r2, _), _)| r2)
        .map(|(_, &s)| s + 1)
        .unwrap_or(0);
    let lo = row_min.max(col_min).max(1);
    for s in lo..=remaining.len() {
        if remaining[s - 1] == 0 {
            continue;
        }
        remaining[s - 1] -= 1;
        filling.insert((r, c), s);
        fill(cells, pos + 1, remaining, filling, out);
        filling.remove(&(r, c));
        remaining[s - 1] += 1;
    }
}

/// Companion condition of the distinct case: symbols `j1 < j2` sitting on
/// the same `minus` level must occupy columns with `i(j1) > i(j2)`.
fn companion_columns_decrease(t: &Tableau, w: &Weight) -> bool {
    let mut col_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (&(_, c), &s) in &t.filling {
        col_of.insert(s, c);
    }
    let js: Vec<usize> = col_of.keys().copied().collect();
    for a in 0..js.len() {
        for b in a + 1..js.len() {
            let (j1, j2) = (js[a], js[b]);
            if w.minus[j1 - 1] == w.minus[j2 - 1] && col_of[&j1] <= col_of[&j2] {
                return false;
            }
        }
    }
    true
}

/// Read a tableau into the pair `(I0, Jword)`: the `t`-th cell read sits at
/// `(row, i_t)` and carries the symbol `j_t`.
pub fn reading_word(t: &Tableau, mode: ReadingMode) -> (Vec<usize>, Vec<usize>) {
    let mut cells: Vec<(usize, usize)> = t.shape.cells.iter().copied().collect();
    match mode {
        ReadingMode::RowsTopDownRightToLeft => {
            cells.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        }
        ReadingMode::RowsBottomUpLeftToRight => {
            cells.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        }
    }
    let i0 = cells.iter().map(|&(_, c)| c).collect();
    let jword = cells.iter().map(|&cell| t.filling[&cell]).collect();
    (i0, jword)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(plus: &[i64], minus: &[i64]) -> Weight {
        Weight::new(plus.to_vec(), minus.to_vec()).unwrap()
    }

    #[test]
    fn shapes_from_cell_description() {
        let lam = w(&[5, 4, 3], &[3, 2, 1]);
        let ij: MultiIndex = "113|123".parse().unwrap();
        let (dplus, dminus) = skew_shapes_from(&lam, &ij).unwrap();
        let expected: BTreeSet<(usize, usize)> = [(5, 1), (4, 1), (3, 3)].into_iter().collect();
        assert_eq!(dplus.cells, expected);
        let expected_minus: BTreeSet<(usize, usize)> =
            [(1, 4), (2, 3), (3, 2)].into_iter().collect();
        assert_eq!(dminus.cells, expected_minus);

        let empty = skew_shapes_from(&lam, &MultiIndex::empty()).unwrap();
        assert!(empty.0.is_empty() && empty.1.is_empty());
    }

    #[test]
    fn distinct_entries_make_a_strip() {
        let lam = w(&[5, 4, 3], &[3, 2, 1]);
        let ij: MultiIndex = "123|123".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let expected: BTreeSet<(usize, usize)> = [(5, 1), (4, 2), (3, 3)].into_iter().collect();
        assert_eq!(dplus.cells, expected);
        assert!(dplus.is_skew_shape());
    }

    #[test]
    fn underflow_is_an_error() {
        let lam = w(&[1, 1, 0], &[0, 0, 0]);
        let ij: MultiIndex = "33|11".parse().unwrap();
        assert!(skew_shapes_from(&lam, &ij).is_err());
    }

    #[test]
    fn single_cell_single_symbol() {
        let lam = w(&[2, 1, 1], &[1, 1, 0]);
        let shape = SkewDiagram::new([(2, 1)].into_iter().collect());
        let tabs = enumerate_marked(&shape, &[2], &lam, false).unwrap();
        assert_eq!(tabs.len(), 1);
        assert_eq!(tabs[0].symbol_at((2, 1)), Some(2));
    }

    #[test]
    fn golden_counts() {
        // one admissible filling when the column is forced
        let lam = w(&[6, 4, 3], &[4, 2, 1]);
        let ij: MultiIndex = "113|112".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 1, 2], &lam, false).unwrap();
        assert_eq!(tabs.len(), 1);

        // three fillings of the two-cell column plus a free cell
        let lam = w(&[6, 4, 3], &[3, 2, 1]);
        let ij: MultiIndex = "113|123".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 2, 3], &lam, false).unwrap();
        assert_eq!(tabs.len(), 3);

        // the single row pair of equal plus-parts gives three as well
        let lam = w(&[5, 5, 3], &[3, 2, 1]);
        let ij: MultiIndex = "123|123".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 2, 3], &lam, false).unwrap();
        assert_eq!(tabs.len(), 3);

        // all distinct: one cell per row and column, six fillings
        let lam = w(&[5, 4, 3], &[3, 2, 1]);
        let ij: MultiIndex = "123|123".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 2, 3], &lam, false).unwrap();
        assert_eq!(tabs.len(), 6);

        // repeated j forced into distinct rows: exactly one filling
        let lam = w(&[5, 4, 3], &[5, 2, 1]);
        let ij: MultiIndex = "123|111".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 1, 1], &lam, false).unwrap();
        assert_eq!(tabs.len(), 1);
    }

    #[test]
    fn reading_conventions() {
        let lam = w(&[5, 4, 3], &[5, 2, 1]);
        let ij: MultiIndex = "123|111".parse().unwrap();
        let (dplus, _) = skew_shapes_from(&lam, &ij).unwrap();
        let tabs = enumerate_marked(&dplus, &[1, 1, 1], &lam, false).unwrap();
        let (i0, jw) = reading_word(&tabs[0], ReadingMode::RowsTopDownRightToLeft);
        assert_eq!(i0, vec![3, 2, 1]);
        assert_eq!(jw, vec![1, 1, 1]);
        let (i0, jw) = reading_word(&tabs[0], ReadingMode::RowsBottomUpLeftToRight);
        assert_eq!(i0, vec![1, 2, 3]);
        assert_eq!(jw, vec![1, 1, 1]);
    }

    #[test]
    fn single_row_readings_reverse_each_other() {
        let lam = w(&[3, 1, 1], &[2, 1, 0]);
        let shape = SkewDiagram::new([(1, 1), (1, 2), (1, 3)].into_iter().collect());
        let tabs = enumerate_marked(&shape, &[1, 2, 3], &lam, false).unwrap();
        assert_eq!(tabs.len(), 1);
        let (_, fwd) = reading_word(&tabs[0], ReadingMode::RowsBottomUpLeftToRight);
        let (_, bwd) = reading_word(&tabs[0], ReadingMode::RowsTopDownRightToLeft);
        let mut rev = fwd.clone();
        rev.reverse();
        assert_eq!(rev, bwd);
    }
}
