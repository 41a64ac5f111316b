//! The closed-form action of the floor maps on labeled primitive vectors:
//! normalization of wedge-side labels to the admissible basis, the image
//! formula, symbolic matrix assembly and the alpha diagonal.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::{ab_counts, MultiIndex, Permutation};
use crate::linalg::IntMatrix;
use crate::omega::{OmegaExpr, OmegaRelations};
use crate::orders::rev_semitic_cmp;
use crate::weights::Weight;

/// Which space a labeled vector lives in: tensor-side sources or
/// wedge-side targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorKind {
    Source,
    Target,
}

/// A labeled primitive vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiVector {
    pub label: MultiIndex,
    pub kind: VectorKind,
}

/// Sort the pair sequence of a wedge-side label into admissible order
/// (`i` ascending, ties by `j` ascending) and return the sign of the sorting
/// permutation, or `None` when two pairs coincide and the vector vanishes.
pub fn normalize_target(label: &MultiIndex) -> Option<(i64, MultiIndex)> {
    let pairs = label.pairs();
    let k = pairs.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&t| pairs[t]);
    let sorted: Vec<(usize, usize)> = order.iter().map(|&t| pairs[t]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut inversions = 0usize;
    for a in 0..k {
        for b in a + 1..k {
            if order[a] > order[b] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    let i_word = sorted.iter().map(|&(i, _)| i).collect();
    let j_word = sorted.iter().map(|&(_, j)| j).collect();
    Some((sign, MultiIndex { i_word, j_word }))
}

/// A linear combination of labeled vectors with affine omega coefficients.
/// Terms are kept in canonical label order with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiCombination {
    terms: BTreeMap<MultiIndex, OmegaExpr>,
}

impl PiCombination {
    pub fn zero() -> Self {
        PiCombination::default()
    }

    pub fn singleton(label: MultiIndex, coeff: OmegaExpr) -> Self {
        let mut out = PiCombination::zero();
        out.accumulate(label, coeff);
        out
    }

    /// Build from integer terms, e.g. user-supplied source combinations.
    pub fn from_integer_terms(terms: &[(MultiIndex, i64)]) -> Self {
        let mut out = PiCombination::zero();
        for (label, c) in terms {
            out.accumulate(label.clone(), OmegaExpr::constant(*c));
        }
        out
    }

    pub fn accumulate(&mut self, label: MultiIndex, coeff: OmegaExpr) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(label.clone()).or_insert_with(OmegaExpr::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }

    /// Accumulate a wedge-side term after normalizing its label.
    pub fn accumulate_target(&mut self, label: &MultiIndex, coeff: OmegaExpr) {
        if let Some((sign, normal)) = normalize_target(label) {
            self.accumulate(normal, coeff.scale(sign));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &MultiIndex) -> OmegaExpr {
        self.terms.get(label).cloned().unwrap_or_else(OmegaExpr::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &OmegaExpr)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    pub fn add(&self, other: &PiCombination) -> PiCombination {
        let mut out = self.clone();
        for (label, coeff) in &other.terms {
            out.accumulate(label.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &PiCombination) -> PiCombination {
        let mut out = self.clone();
        for (label, coeff) in &other.terms {
            out.accumulate(label.clone(), coeff.negate());
        }
        out
    }

    pub fn scale_expr(&self, factor: &OmegaExpr) -> Result<PiCombination> {
        let mut out = PiCombination::zero();
        for (label, coeff) in &self.terms {
            out.accumulate(label.clone(), coeff.try_mul(factor)?);
        }
        Ok(out)
    }

    /// The term whose second word is reverse-Semitic maximal.
    pub fn leading_label(&self) -> Option<&MultiIndex> {
        self.terms
            .keys()
            .max_by(|a, b| rev_semitic_cmp(&a.j_word, &b.j_word))
    }

    fn check_uniform(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut labels = self.terms.keys();
        let first = labels
            .next()
            .ok_or_else(|| Error::Invalid("empty combination has no content".into()))?;
        let mut i_sorted = first.i_word.clone();
        let mut j_sorted = first.j_word.clone();
        i_sorted.sort_unstable();
        j_sorted.sort_unstable();
        for label in labels {
            let mut a = label.i_word.clone();
            let mut b = label.j_word.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != i_sorted || b != j_sorted {
                return Err(Error::Dimension(format!(
                    "label ({label}) breaks the common content of the combination"
                )));
            }
        }
        Ok((i_sorted, j_sorted))
    }
}

impl fmt::Display for PiCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(label, coeff)| format!("({coeff})[{label}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of a single source under the floor map: the symbol coefficient on
/// the source's own label plus, for each earlier position `t`, the factor
/// `1 - [i_k > i_t] - [j_k < j_t]` on the label with `j_t` and `j_k`
/// swapped; every target is then normalized into the admissible basis.
///
/// The formula is applied verbatim to permuted (non-admissible) sources,
/// using the source's own last pair.
pub fn psi_image(source: &MultiIndex) -> Result<PiCombination> {
    let k = source.len();
    if k == 0 {
        return Err(Error::Precondition("the floor map needs length at least one".into()));
    }
    let i = &source.i_word;
    let j = &source.j_word;
    let mut out = PiCombination::zero();
    out.accumulate_target(source, OmegaExpr::symbol(i[k - 1], j[k - 1]));
    for t in 0..k - 1 {
        let mut coeff = 1i64;
        if i[k - 1] > i[t] {
            coeff -= 1;
        }
        if j[k - 1] < j[t] {
            coeff -= 1;
        }
        if coeff == 0 {
            continue;
        }
        let mut swapped = j.clone();
        swapped.swap(t, k - 1);
        let target = MultiIndex { i_word: i.clone(), j_word: swapped };
        out.accumulate_target(&target, OmegaExpr::constant(coeff));
    }
    Ok(out)
}

/// Linear extension of [`psi_image`] to a combination of sources of one
/// content.
pub fn psi_on_combination(c: &PiCombination) -> Result<PiCombination> {
    if c.is_zero() {
        return Ok(PiCombination::zero());
    }
    c.check_uniform()?;
    let mut out = PiCombination::zero();
    for (label, coeff) in c.terms() {
        let image = psi_image(label)?;
        out = out.add(&image.scale_expr(coeff)?);
    }
    Ok(out)
}

/// The diagonal coefficient attached to `(I0, L)` and `eta`:
/// `(-1)^eta (omega_{i_{eta(k)}, l_{eta(k)}} - a + b)`.
pub fn diagonal_alpha(i0: &[usize], l: &[usize], eta: &Permutation) -> Result<OmegaExpr> {
    let k = eta.k();
    if i0.len() != k || l.len() != k || k == 0 {
        return Err(Error::Dimension("diagonal_alpha needs matching nonzero lengths".into()));
    }
    let (a, b) = ab_counts(i0, l, eta)?;
    let q = eta.apply(k);
    let core = OmegaExpr::symbol(i0[q - 1], l[q - 1]).add_constant(b as i64 - a as i64);
    Ok(core.scale(eta.sign()))
}

/// Row family of a symbolic matrix: either admissible target labels or
/// named integral combinations of targets with triangular leading terms.
#[derive(Debug, Clone)]
pub enum PsiRows {
    Admissible(Vec<MultiIndex>),
    Combinations(Vec<(String, PiCombination)>),
}

/// Column family: plain sources or named combinations of sources.
#[derive(Debug, Clone)]
pub enum PsiColumn {
    Source(MultiIndex),
    Combination(String, PiCombination),
}

impl PsiColumn {
    pub fn label(&self) -> String {
        match self {
            PsiColumn::Source(ij) => ij.to_string(),
            PsiColumn::Combination(name, _) => name.clone(),
        }
    }
}

/// A symbolic matrix of the floor map over labeled row and column families.
#[derive(Debug, Clone)]
pub struct PsiMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// entries[r][c]
    pub entries: Vec<Vec<OmegaExpr>>,
    /// Per-column remainder that could not be expressed in the row family,
    /// reduced by the relations handed to [`psi_matrix`]. Nonzero residuals
    /// are reported, never dropped.
    pub residuals: Vec<Option<PiCombination>>,
}

impl PsiMatrix {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn has_residuals(&self) -> bool {
        self.residuals.iter().any(Option::is_some)
    }

    /// Evaluate every entry at a concrete weight.
    pub fn evaluate(&self, w: &Weight) -> Result<IntMatrix> {
        let mut out = IntMatrix::zero(self.rows(), self.cols());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set_i64(r, c, self.entries[r][c].evaluate(w)?);
            }
        }
        Ok(out)
    }

    /// Entries strictly below the diagonal vanish identically.
    pub fn is_upper_triangular_symbolic(&self) -> Result<bool> {
        if self.rows() != self.cols() {
            return Err(Error::Dimension("triangularity needs a square selection".into()));
        }
        for r in 0..self.rows() {
            for c in 0..r {
                if !self.entries[r][c].is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn diagonal(&self) -> Result<Vec<OmegaExpr>> {
        if self.rows() != self.cols() {
            return Err(Error::Dimension("diagonal needs a square selection".into()));
        }
        Ok((0..self.rows()).map(|r| self.entries[r][r].clone()).collect())
    }

    /// Plain text rendering, one row per line with tab-separated entries.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rows: {}\n", self.row_labels.join("  ")));
        out.push_str(&format!("cols: {}\n", self.col_labels.join("  ")));
        for r in 0..self.rows() {
            let line: Vec<String> =
                (0..self.cols()).map(|c| self.entries[r][c].to_string()).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        for (c, residual) in self.residuals.iter().enumerate() {
            if let Some(res) = residual {
                out.push_str(&format!(
                    "residual in column {} ({}): {res}\n",
                    c + 1,
                    self.col_labels[c]
                ));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PsiMatrixJson {
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<OmegaExpr>>,
}

impl Serialize for PsiMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PsiMatrixJson {
            rows: self.row_labels.clone(),
            cols: self.col_labels.clone(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

/// The coefficient grid expressing each column image in the row family.
///
/// With admissible rows the expansion is a direct coefficient lookup; any
/// image term outside the listed rows lands in the column residual. With
/// combination rows the coordinates are extracted through the linearly
/// ordered leading terms, and the final remainder (reduced by `relations`,
/// when given) is the residual.
pub fn psi_matrix(
    rows: &PsiRows,
    cols: &[PsiColumn],
    relations: Option<&OmegaRelations>,
) -> Result<PsiMatrix> {
    let (row_labels, extractor) = match rows {
        PsiRows::Admissible(labels) => {
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            (names, Extractor::Admissible(labels.clone()))
        }
        PsiRows::Combinations(combos) => {
            let mut order: Vec<usize> = (0..combos.len()).collect();
            let leadings: Vec<MultiIndex> = combos
                .iter()
                .map(|(name, c)| {
                    c.leading_label().cloned().ok_or_else(|| {
                        Error::Invalid(format!("row combination `{name}` is zero"))
                    })
                })
                .collect::<Result<_>>()?;
            for a in 0..leadings.len() {
                for b in a + 1..leadings.len() {
                    if leadings[a].j_word == leadings[b].j_word {
                        return Err(Error::Precondition(
                            "row combinations need linearly ordered leading terms".into(),
                        ));
                    }
                }
            }
            // extract from the largest leading term downward
            order.sort_by(|&a, &b| {
                rev_semitic_cmp(&leadings[b].j_word, &leadings[a].j_word)
            });
            let names: Vec<String> = combos.iter().map(|(name, _)| name.clone()).collect();
            (names, Extractor::Combinations { combos: combos.clone(), leadings, order })
        }
    };

    let mut entries = vec![Vec::with_capacity(cols.len()); row_labels.len()];
    let mut residuals = Vec::with_capacity(cols.len());
    for col in cols {
        let image = match col {
            PsiColumn::Source(ij) => psi_image(ij)?,
            PsiColumn::Combination(_, c) => psi_on_combination(c)?,
        };
        let (coeffs, residual) = extractor.extract(image, relations)?;
        for (r, coeff) in coeffs.into_iter().enumerate() {
            entries[r].push(coeff);
        }
        residuals.push(residual);
    }

    Ok(PsiMatrix {
        row_labels,
        col_labels: cols.iter().map(PsiColumn::label).collect(),
        entries,
        residuals,
    })
}

enum Extractor {
    Admissible(Vec<MultiIndex>),
    Combinations {
        combos: Vec<(String, PiCombination)>,
        leadings: Vec<MultiIndex>,
        order: Vec<usize>,
    },
}

impl Extractor {
    fn extract(
        &self,
        image: PiCombination,
        relations: Option<&OmegaRelations>,
    ) -> Result<(Vec<OmegaExpr>, Option<PiCombination>)> {
        match self {
            Extractor::Admissible(labels) => {
                let mut residual = image;
                let mut coeffs = Vec::with_capacity(labels.len());
                for label in labels {
                    let c = residual.coeff(label);
                    if !c.is_zero() {
                        residual.accumulate(label.clone(), c.negate());
                    }
                    coeffs.push(c);
                }
                Ok((coeffs, reduce_residual(residual, relations)))
            }
            Extractor::Combinations { combos, leadings, order } => {
                let mut residual = image;
                let mut coeffs = vec![OmegaExpr::zero(); combos.len()];
                for &r in order {
                    let lead = &leadings[r];
                    let c = residual.coeff(lead);
                    if c.is_zero() {
                        continue;
                    }
                    let lead_coeff = combos[r].1.coeff(lead);
                    let factor = c.div_exact(&lead_coeff)?;
                    residual = residual.sub(&combos[r].1.scale_expr(&factor)?);
                    coeffs[r] = factor;
                }
                Ok((coeffs, reduce_residual(residual, relations)))
            }
        }
    }
}

fn reduce_residual(
    residual: PiCombination,
    relations: Option<&OmegaRelations>,
) -> Option<PiCombination> {
    let reduced = match relations {
        None => residual,
        Some(rel) => {
            let mut out = PiCombination::zero();
            for (label, coeff) in residual.terms() {
                out.accumulate(label.clone(), coeff.substitute(rel));
            }
            out
        }
    };
    if reduced.is_zero() {
        None
    } else {
        Some(reduced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn expr(s: &str) -> OmegaExpr {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        let (sign, normal) = normalize_target(&mi("213|213")).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(normal, mi("123|123"));
        let (sign, normal) = normalize_target(&mi("113|123")).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(normal, mi("113|123"));
        assert!(normalize_target(&mi("113|221")).is_none());
    }

    #[test]
    fn normalization_sign_is_multiplicative() {
        let base = mi("123|231");
        for eta in Permutation::all(3) {
            let permuted = MultiIndex {
                i_word: eta.permute(&base.i_word).unwrap(),
                j_word: eta.permute(&base.j_word).unwrap(),
            };
            let (sign, normal) = normalize_target(&permuted).unwrap();
            assert_eq!(normal, base);
            assert_eq!(sign, eta.sign());
        }
    }

    #[test]
    fn image_of_length_one() {
        let img = psi_image(&mi("2|3")).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img.coeff(&mi("2|3")), expr("w23"));
        assert!(psi_image(&MultiIndex::empty()).is_err());
    }

    #[test]
    fn image_of_strictly_increasing_source() {
        let img = psi_image(&mi("123|123")).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img.coeff(&mi("123|123")), expr("w33"));
        let img = psi_image(&mi("113|123")).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img.coeff(&mi("113|123")), expr("w33"));
    }

    #[test]
    fn image_with_cross_terms() {
        // swap of the two last symbols picks up the unit coefficient
        let img = psi_image(&mi("123|132")).unwrap();
        assert_eq!(img.coeff(&mi("123|132")), expr("w32"));
        assert_eq!(img.coeff(&mi("123|123")), expr("-1"));
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn image_on_permuted_source() {
        let img = psi_image(&mi("131|132")).unwrap();
        assert_eq!(img.coeff(&mi("113|123")), expr("-w12+1"));
        assert_eq!(img.len(), 1);
    }

    #[test]
    fn combination_linearity_and_content_check() {
        let c = PiCombination::from_integer_terms(&[(mi("123|123"), 1), (mi("213|123"), -1)]);
        let img = psi_on_combination(&c).unwrap();
        assert_eq!(img.coeff(&mi("123|123")), expr("w33"));
        assert_eq!(img.coeff(&mi("123|213")), expr("w33"));
        assert!(psi_on_combination(&PiCombination::zero()).unwrap().is_zero());
        let mixed = PiCombination::from_integer_terms(&[(mi("1|1"), 1), (mi("2|1"), 1)]);
        assert!(psi_on_combination(&mixed).is_err());
    }

    #[test]
    fn alpha_matches_image_coefficient() {
        // oracle: the coefficient of the normalized source inside its image
        let i0 = [1usize, 1, 3];
        for l in [[1usize, 2, 3], [1, 3, 2], [2, 3, 1]] {
            for eta in Permutation::all(3) {
                let source = MultiIndex {
                    i_word: eta.permute(&i0).unwrap(),
                    j_word: eta.permute(&l).unwrap(),
                };
                let image = psi_image(&source).unwrap();
                let normal = MultiIndex { i_word: i0.to_vec(), j_word: l.to_vec() };
                let alpha = diagonal_alpha(&i0, &l, &eta).unwrap();
                assert_eq!(image.coeff(&normal), alpha, "eta={eta} l={l:?}");
            }
        }
    }

    #[test]
    fn alpha_identity_for_distinct_words() {
        let eta = Permutation::identity(3);
        let alpha = diagonal_alpha(&[1, 2, 3], &[2, 1, 3], &eta).unwrap();
        assert_eq!(alpha, expr("w33"));
    }

    #[test]
    fn admissible_rows_have_no_residual() {
        let c = crate::weights::content(&mi("123|123"), 3, 3).unwrap();
        let rows = PsiRows::Admissible(crate::indices::enumerate_admissible(&c));
        let cols: Vec<PsiColumn> = crate::indices::enumerate_sources(&c)
            .into_iter()
            .map(PsiColumn::Source)
            .collect();
        let m = psi_matrix(&rows, &cols, None).unwrap();
        assert_eq!(m.rows(), 6);
        assert_eq!(m.cols(), 36);
        assert!(!m.has_residuals());
    }

    #[test]
    fn missing_row_reports_residual() {
        let rows = PsiRows::Admissible(vec![mi("123|123")]);
        let cols = vec![PsiColumn::Source(mi("123|231"))];
        let m = psi_matrix(&rows, &cols, None).unwrap();
        assert!(m.has_residuals());
        let residual = m.residuals[0].as_ref().unwrap();
        assert_eq!(residual.coeff(&mi("123|231")), expr("w31"));
    }
}
