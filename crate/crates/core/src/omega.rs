//! Integer-affine expressions in the symbols `omega_{ij}`, the coefficient
//! ring of every symbolic matrix in the crate. Degree one in the symbols is
//! all that ever occurs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::Weight;

/// Substitutions `omega_{ij} -> expression`, used to impose weight relations
/// such as equal adjacent rows of the plus part.
pub type OmegaRelations = BTreeMap<(usize, usize), OmegaExpr>;

/// `constant + sum c_{ij} omega_{ij}` with no zero coefficients stored and
/// keys held in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "OmegaExprJson", try_from = "OmegaExprJson")]
pub struct OmegaExpr {
    constant: i64,
    terms: BTreeMap<(usize, usize), i64>,
}

impl OmegaExpr {
    pub fn zero() -> Self {
        OmegaExpr { constant: 0, terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        OmegaExpr { constant: c, terms: BTreeMap::new() }
    }

    pub fn symbol(i: usize, j: usize) -> Self {
        Self::symbol_scaled(i, j, 1)
    }

    pub fn symbol_scaled(i: usize, j: usize, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((i, j), c);
        }
        OmegaExpr { constant: 0, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_part(&self) -> i64 {
        self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, other: &OmegaExpr) -> OmegaExpr {
        let mut out = self.clone();
        out.constant += other.constant;
        for (&key, &c) in &other.terms {
            let entry = out.terms.entry(key).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.terms.remove(&key);
            }
        }
        out
    }

    pub fn negate(&self) -> OmegaExpr {
        self.scale(-1)
    }

    pub fn sub(&self, other: &OmegaExpr) -> OmegaExpr {
        self.add(&other.negate())
    }

    pub fn scale(&self, c: i64) -> OmegaExpr {
        if c == 0 {
            return OmegaExpr::zero();
        }
        OmegaExpr {
            constant: self.constant * c,
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    pub fn add_constant(&self, c: i64) -> OmegaExpr {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// Product, defined only when one factor is constant.
    pub fn try_mul(&self, other: &OmegaExpr) -> Result<OmegaExpr> {
        if self.is_constant() {
            Ok(other.scale(self.constant))
        } else if other.is_constant() {
            Ok(self.scale(other.constant))
        } else {
            Err(Error::Invalid("product of two non-constant omega expressions".into()))
        }
    }

    /// Exact division by a constant expression.
    pub fn div_exact(&self, divisor: &OmegaExpr) -> Result<OmegaExpr> {
        if !divisor.is_constant() || divisor.constant == 0 {
            return Err(Error::Invalid(format!("cannot divide by `{divisor}`")));
        }
        let d = divisor.constant;
        if self.constant % d != 0 || self.terms.values().any(|&c| c % d != 0) {
            return Err(Error::Invalid(format!("`{self}` is not divisible by {d}")));
        }
        Ok(OmegaExpr {
            constant: self.constant / d,
            terms: self.terms.iter().map(|(&k, &c)| (k, c / d)).collect(),
        })
    }

    /// Substitute each mapped symbol by its replacement expression.
    pub fn substitute(&self, relations: &OmegaRelations) -> OmegaExpr {
        let mut out = OmegaExpr::constant(self.constant);
        for (&key, &c) in &self.terms {
            match relations.get(&key) {
                Some(replacement) => out = out.add(&replacement.scale(c)),
                None => out = out.add(&OmegaExpr::symbol_scaled(key.0, key.1, c)),
            }
        }
        out
    }

    /// Substitute `omega(w, i, j)` for every symbol and sum.
    pub fn evaluate(&self, w: &Weight) -> Result<i64> {
        let mut total = self.constant;
        for (&(i, j), &c) in &self.terms {
            total += c * w.omega(i, j)?;
        }
        Ok(total)
    }

    pub fn evaluate_mod(&self, w: &Weight, p: u64) -> Result<u64> {
        Ok(self.evaluate(w)?.rem_euclid(p as i64) as u64)
    }
}

fn symbol_name(i: usize, j: usize) -> String {
    if i <= 9 && j <= 9 {
        format!("\u{03c9}{i}{j}")
    } else {
        format!("\u{03c9}{i},{j}")
    }
}

impl fmt::Display for OmegaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in &self.terms {
            if first {
                match c {
                    1 => write!(f, "{}", symbol_name(i, j))?,
                    -1 => write!(f, "-{}", symbol_name(i, j))?,
                    _ => write!(f, "{}{}", c, symbol_name(i, j))?,
                }
                first = false;
            } else {
                let sign = if c >= 0 { "+" } else { "-" };
                match c.abs() {
                    1 => write!(f, "{}{}", sign, symbol_name(i, j))?,
                    a => write!(f, "{}{}{}", sign, a, symbol_name(i, j))?,
                }
            }
        }
        if self.constant != 0 || first {
            if first {
                write!(f, "{}", self.constant)?;
            } else if self.constant >= 0 {
                write!(f, "+{}", self.constant)?;
            } else {
                write!(f, "{}", self.constant)?;
            }
        }
        Ok(())
    }
}

impl FromStr for OmegaExpr {
    type Err = Error;

    /// Parses forms such as `"w33"`, `"-w12+1"`, `"2w11-3"`, `"0"`. Both
    /// `w` and the Greek letter are accepted, as is the typographic minus.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(Error::Invalid("empty omega expression".into()));
        }
        let mut out = OmegaExpr::zero();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut pos = 0usize;
        while pos < chars.len() {
            let mut sign = 1i64;
            while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut digits = String::new();
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                digits.push(chars[pos]);
                pos += 1;
            }
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
            if pos < chars.len() && (chars[pos] == 'w' || chars[pos] == '\u{03c9}') {
                pos += 1;
                let mut sub = String::new();
                while pos < chars.len()
                    && (chars[pos].is_ascii_digit() || chars[pos] == ',')
                {
                    sub.push(chars[pos]);
                    pos += 1;
                }
                let (i, j) = if let Some((a, b)) = sub.split_once(',') {
                    (
                        a.parse().map_err(|_| Error::Invalid(format!("bad symbol in `{s}`")))?,
                        b.parse().map_err(|_| Error::Invalid(format!("bad symbol in `{s}`")))?,
                    )
                } else {
                    if sub.len() != 2 {
                        return Err(Error::Invalid(format!("bad symbol subscript in `{s}`")));
                    }
                    let mut it = sub.chars();
                    (
                        it.next().unwrap().to_digit(10).unwrap() as usize,
                        it.next().unwrap().to_digit(10).unwrap() as usize,
                    )
                };
                out = out.add(&OmegaExpr::symbol_scaled(i, j, sign * coeff));
            } else {
                if digits.is_empty() {
                    return Err(Error::Invalid(format!("dangling sign in `{s}`")));
                }
                out = out.add(&OmegaExpr::constant(sign * coeff));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: usize,
    j: usize,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct OmegaExprJson {
    #[serde(rename = "const")]
    constant: i64,
    terms: Vec<TermJson>,
}

impl From<OmegaExpr> for OmegaExprJson {
    fn from(e: OmegaExpr) -> Self {
        OmegaExprJson {
            constant: e.constant,
            terms: e
                .terms
                .into_iter()
                .map(|((i, j), c)| TermJson { i, j, c })
                .collect(),
        }
    }
}

impl TryFrom<OmegaExprJson> for OmegaExpr {
    type Error = Error;

    fn try_from(raw: OmegaExprJson) -> Result<Self> {
        let mut out = OmegaExpr::constant(raw.constant);
        for t in raw.terms {
            if t.i == 0 || t.j == 0 {
                return Err(Error::OutOfRange("omega symbols are 1-based".into()));
            }
            out = out.add(&OmegaExpr::symbol_scaled(t.i, t.j, t.c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops_canonicalize() {
        let w33 = OmegaExpr::symbol(3, 3);
        assert!(w33.add(&w33.negate()).is_zero());
        let e: OmegaExpr = "w12-1".parse().unwrap();
        assert_eq!(e.negate().to_string(), "-\u{3c9}12+1");
        let scaled = "w11+1".parse::<OmegaExpr>().unwrap().scale(2);
        assert_eq!(scaled, "2w11+2".parse().unwrap());
    }

    #[test]
    fn evaluation() {
        let w = Weight::new(vec![5, 4, 3], vec![3, 2, 1]).unwrap();
        assert_eq!(OmegaExpr::symbol(3, 3).evaluate(&w).unwrap(), 2);
        assert_eq!(OmegaExpr::constant(7).evaluate(&w).unwrap(), 7);
        let mixed = Weight::new(vec![2, 1, 0], vec![0, -1, -2]).unwrap();
        let e = OmegaExpr::symbol(3, 1)
            .add(&OmegaExpr::symbol(2, 2))
            .add(&OmegaExpr::symbol(1, 3));
        assert_eq!(e.evaluate(&mixed).unwrap(), 0);
        let bad = OmegaExpr::symbol(4, 1);
        assert!(bad.evaluate(&w).is_err());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for s in ["w32", "-w12+1", "w11+2", "0", "-w11-1", "2w21-3", "w13-1"] {
            let e: OmegaExpr = s.parse().unwrap();
            let back: OmegaExpr = e.to_string().parse().unwrap();
            assert_eq!(e, back, "roundtrip of {s}");
        }
        assert_eq!("w33".parse::<OmegaExpr>().unwrap().to_string(), "\u{3c9}33");
    }

    #[test]
    fn substitution() {
        // impose plus_1 = plus_2, i.e. omega_{1j} = omega_{2j} + 1
        let mut rel = OmegaRelations::new();
        for j in 1..=3 {
            rel.insert((1, j), OmegaExpr::symbol(2, j).add_constant(1));
        }
        let e: OmegaExpr = "w12-w22-1".parse().unwrap();
        assert!(e.substitute(&rel).is_zero());
        let f: OmegaExpr = "w33".parse().unwrap();
        assert_eq!(f.substitute(&rel), f);
    }

    #[test]
    fn json_shape() {
        let e: OmegaExpr = "-w12+1".parse().unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"const":1,"terms":[{"i":1,"j":2,"c":-1}]}"#);
        let back: OmegaExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(e, back);
    }
}
