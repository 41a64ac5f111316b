//! Batch command-line front end: every computation of the library behind
//! one subcommand, with plain text or JSON output.
//!
//! Exit codes: 0 on success, 2 on domain errors (message on stderr), 64 on
//! flag or value parse errors.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use odd_linkage::*;

#[derive(Parser)]
#[command(name = "odd-linkage", version, about = "Odd-linkage combinatorics for GL(m|n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug)]
enum WeightArg {
    Symbolic,
    Concrete(Weight),
}

impl FromStr for WeightArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "sym" {
            return Ok(WeightArg::Symbolic);
        }
        s.parse::<Weight>().map(WeightArg::Concrete).map_err(|e| e.to_string())
    }
}

#[derive(Args, Clone)]
struct PairArg {
    /// Multi-index pair, e.g. "113|123" or "1,1,3|1,2,3"
    #[arg(long)]
    pair: String,
}

impl PairArg {
    fn get(&self) -> Result<MultiIndex> {
        self.pair.parse()
    }
}

#[derive(Subcommand)]
enum Command {
    /// The atypicality value omega_{ij} at a weight
    Omega {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        json: bool,
    },
    /// Shift a weight by a multi-index pair
    Shift {
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        json: bool,
    },
    /// Admissibility, degeneracy and content of a pair
    Admissible {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Robustness of a weight for an admissible pair
    Robust {
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        json: bool,
    },
    /// Basis labels of the pair's content: admissible targets and sources
    Basis {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The symbolic matrix of the floor map (weight "sym" keeps symbols)
    PsiMatrix {
        /// "sym" or a concrete weight "a,b,..|c,d,.."
        #[arg(long)]
        weight: WeightArg,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// JSON file with combination columns (and optional rows)
        #[arg(long)]
        combinations: Option<std::path::PathBuf>,
        /// Impose equal plus-rows "a=b" (repeatable); turns omega_{aj} into
        /// omega_{bj} + (b - a) when reducing residuals
        #[arg(long = "equal-plus")]
        equal_plus: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Semistandard tableaux of the attached shape with reading words
    Tableaux {
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        pair: PairArg,
        /// Reading convention: "general" (top-down, right-to-left) or
        /// "distinct" (bottom-up, left-to-right with the strict filter)
        #[arg(long, default_value = "general")]
        reading: String,
        #[arg(long)]
        json: bool,
    },
    /// Collections and O-sets, with values when the weight is concrete
    Osets {
        #[arg(long)]
        weight: WeightArg,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// The chain of the first vanishing O-set, or of explicit words
    Chain {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        pair: Option<String>,
        /// Explicit first chain word, used together with --jword
        #[arg(long)]
        i0: Option<String>,
        #[arg(long)]
        jword: Option<String>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Breadth-first search for an odd-linkage chain between two weights
    Link {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Restrict every chain weight to dominant polynomial ones
        #[arg(long)]
        poly: Option<bool>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long = "max-depth")]
        max_depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Composition-factor candidacy verdict for a shifted weight
    Factor {
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        pair: PairArg,
        /// Decide surjectivity exactly by rank in the robust case
        #[arg(long)]
        concrete: bool,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Rank of the fully evaluated matrix of the pair's content
    Rank {
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version are successful exits
            use clap::error::ErrorKind;
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(64)
            };
        }
    };
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(64)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Parse(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(msg) if msg.starts_with("bad") => CliError::Parse(msg),
            other => CliError::Domain(other.to_string()),
        }
    }
}

type CliResult = std::result::Result<String, CliError>;

fn parse_weight(s: &str) -> std::result::Result<Weight, CliError> {
    s.parse::<Weight>().map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_pair(s: &str) -> std::result::Result<MultiIndex, CliError> {
    s.parse::<MultiIndex>().map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_word(s: &str) -> std::result::Result<Vec<usize>, CliError> {
    let padded = format!("{s}|{s}");
    Ok(parse_pair(&padded)?.i_word)
}

/// Dimensions for a pair-only command: explicit flags win, otherwise the
/// smallest group containing the words.
fn infer_dims(ij: &MultiIndex, m: Option<usize>, n: Option<usize>) -> (usize, usize) {
    let m = m.unwrap_or_else(|| ij.i_word.iter().copied().max().unwrap_or(1));
    let n = n.unwrap_or_else(|| ij.j_word.iter().copied().max().unwrap_or(1));
    (m, n)
}

fn emit_json(value: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string(value).expect("serializable"))
}

#[derive(Deserialize)]
struct ComboTermFile {
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    c: i64,
}

#[derive(Deserialize)]
struct ComboFile {
    name: String,
    terms: Vec<ComboTermFile>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CombinationsFile {
    Columns(Vec<ComboFile>),
    Full {
        #[serde(default)]
        rows: Vec<ComboFile>,
        columns: Vec<ComboFile>,
    },
}

fn combo_to_picombination(c: &ComboFile) -> std::result::Result<PiCombination, CliError> {
    let mut terms = Vec::new();
    for t in &c.terms {
        let label = MultiIndex::new(t.i.clone(), t.j.clone())?;
        terms.push((label, t.c));
    }
    Ok(PiCombination::from_integer_terms(&terms))
}

fn equal_plus_relations(
    specs: &[String],
    n: usize,
) -> std::result::Result<OmegaRelations, CliError> {
    let mut relations = OmegaRelations::new();
    for spec in specs {
        let (a, b) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("bad --equal-plus `{spec}`")))?;
        let a: usize =
            a.trim().parse().map_err(|_| CliError::Parse(format!("bad row `{a}`")))?;
        let b: usize =
            b.trim().parse().map_err(|_| CliError::Parse(format!("bad row `{b}`")))?;
        if a == b || a == 0 || b == 0 {
            return Err(CliError::Parse(format!("bad --equal-plus `{spec}`")));
        }
        // plus_a = plus_b makes omega_{aj} = omega_{bj} + (b - a)
        let (from, to) = if a < b { (a, b) } else { (b, a) };
        for j in 1..=n {
            relations.insert(
                (from, j),
                OmegaExpr::symbol(to, j).add_constant(to as i64 - from as i64),
            );
        }
    }
    Ok(relations)
}

fn omega_legend(m: usize, matrix: &PsiMatrix) -> Vec<String> {
    let mut symbols = std::collections::BTreeSet::new();
    for row in &matrix.entries {
        for entry in row {
            for (key, _) in entry.terms() {
                symbols.insert(key);
            }
        }
    }
    symbols
        .into_iter()
        .map(|(i, j)| {
            let offset = Weight::omega_offset(m, i, j);
            let tail = match offset {
                0 => String::new(),
                o if o > 0 => format!("+{o}"),
                o => o.to_string(),
            };
            format!("\u{3c9}{i}{j} = \u{3bb}\u{207a}{i}+\u{3bb}\u{207b}{j}{tail}")
        })
        .collect()
}

fn chain_steps_json(chain: &LinkChain) -> serde_json::Value {
    json!(chain
        .steps
        .iter()
        .map(|s| json!({
            "weight": s.weight,
            "move": s.mv.map(|(i, j)| vec![i, j]),
        }))
        .collect::<Vec<_>>())
}

fn oset_json(oset: &OSet, w: Option<&Weight>, modulus: Option<u64>) -> CliResult {
    let mut value = json!({
        "label": oset.label.to_string(),
        "entries": oset.entries,
        "rendered": oset.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "i0": oset.chain_i,
        "jword": oset.chain_j,
    });
    if let Some(w) = w {
        let values: Vec<i64> = oset
            .entries
            .iter()
            .map(|e| e.evaluate(w))
            .collect::<Result<_>>()?;
        value["values"] = json!(values);
        value["all_zero"] = json!(oset.vanishes_at(w, modulus)?);
    }
    Ok(emit_json(&value).trim_end().to_string())
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Omega { weight, i, j, json } => {
            let w = parse_weight(&weight)?;
            let value = w.omega(i, j)?;
            if json {
                Ok(emit_json(&json!({"i": i, "j": j, "value": value})))
            } else {
                Ok(format!("{value}\n"))
            }
        }
        Command::Shift { weight, pair, json } => {
            let w = parse_weight(&weight)?;
            let ij = pair.get()?;
            let shifted = w.shift(&ij)?;
            if json {
                Ok(emit_json(&serde_json::to_value(&shifted).unwrap()))
            } else {
                Ok(format!("{shifted}\n"))
            }
        }
        Command::Admissible { pair, m, n, json } => {
            let ij = pair.get()?;
            let (m, n) = infer_dims(&ij, m, n);
            let c = content(&ij, m, n)?;
            if json {
                Ok(emit_json(&json!({
                    "pair": ij,
                    "admissible": ij.is_admissible(),
                    "degenerate": ij.has_repeated_pair(),
                    "content": {"xplus": c.xplus, "xminus": c.xminus},
                })))
            } else {
                Ok(format!("{}\n", ij.is_admissible()))
            }
        }
        Command::Robust { weight, pair, json } => {
            let w = parse_weight(&weight)?;
            let ij = pair.get()?;
            let robust = is_robust(&w, &ij)?;
            if json {
                Ok(emit_json(&json!({"weight": w, "pair": ij, "robust": robust})))
            } else {
                Ok(format!("{robust}\n"))
            }
        }
        Command::Basis { pair, m, n, json } => {
            let ij = pair.get()?;
            let (m, n) = infer_dims(&ij, m, n);
            let c = content(&ij, m, n)?;
            let admissible: Vec<String> =
                enumerate_admissible(&c).iter().map(|x| x.to_string()).collect();
            let sources: Vec<String> =
                enumerate_sources(&c).iter().map(|x| x.to_string()).collect();
            if json {
                Ok(emit_json(&json!({"admissible": admissible, "sources": sources})))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "admissible ({}):", admissible.len());
                for label in &admissible {
                    let _ = writeln!(out, "  {label}");
                }
                let _ = writeln!(out, "sources ({}):", sources.len());
                for label in &sources {
                    let _ = writeln!(out, "  {label}");
                }
                Ok(out)
            }
        }
        Command::PsiMatrix { weight, pair, m, n, combinations, equal_plus, json } => {
            let ij = pair.get()?;
            let (m, n) = match &weight {
                WeightArg::Concrete(w) => (w.m, w.n),
                WeightArg::Symbolic => infer_dims(&ij, m, n),
            };
            ij.check_range(m, n)?;
            let c = content(&ij, m, n)?;
            let relations = equal_plus_relations(&equal_plus, n)?;
            let relations = if relations.is_empty() { None } else { Some(relations) };

            let mut rows = PsiRows::Admissible(enumerate_admissible(&c));
            let mut cols: Vec<PsiColumn> =
                enumerate_sources(&c).into_iter().map(PsiColumn::Source).collect();
            if let Some(path) = combinations {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
                let file: CombinationsFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                let (row_combos, col_combos) = match file {
                    CombinationsFile::Columns(cols) => (Vec::new(), cols),
                    CombinationsFile::Full { rows, columns } => (rows, columns),
                };
                if !row_combos.is_empty() {
                    let mut named = Vec::new();
                    for combo in &row_combos {
                        named.push((combo.name.clone(), combo_to_picombination(combo)?));
                    }
                    rows = PsiRows::Combinations(named);
                }
                if !col_combos.is_empty() {
                    cols = Vec::new();
                    for combo in &col_combos {
                        cols.push(PsiColumn::Combination(
                            combo.name.clone(),
                            combo_to_picombination(combo)?,
                        ));
                    }
                }
            }
            let matrix = psi_matrix(&rows, &cols, relations.as_ref())?;
            match weight {
                WeightArg::Symbolic => {
                    if json {
                        let mut value = serde_json::to_value(&matrix).unwrap();
                        value["legend"] = json!(omega_legend(m, &matrix));
                        Ok(emit_json(&value))
                    } else {
                        let mut out = matrix.render_text();
                        for line in omega_legend(m, &matrix) {
                            let _ = writeln!(out, "{line}");
                        }
                        Ok(out)
                    }
                }
                WeightArg::Concrete(w) => {
                    let evaluated = matrix.evaluate(&w)?;
                    let values: Vec<Vec<String>> = (0..evaluated.rows)
                        .map(|r| {
                            (0..evaluated.cols)
                                .map(|c| evaluated.get(r, c).to_string())
                                .collect()
                        })
                        .collect();
                    // a residual only obstructs if it survives evaluation
                    let mut live_residuals = Vec::new();
                    for (cidx, residual) in matrix.residuals.iter().enumerate() {
                        let Some(res) = residual else { continue };
                        let mut nonzero = Vec::new();
                        for (label, coeff) in res.terms() {
                            let v = coeff.evaluate(&w)?;
                            if v != 0 {
                                nonzero.push(json!({"label": label.to_string(), "value": v}));
                            }
                        }
                        if !nonzero.is_empty() {
                            live_residuals.push(json!({
                                "column": matrix.col_labels[cidx].clone(),
                                "terms": nonzero,
                            }));
                        }
                    }
                    if json {
                        let mut value = serde_json::to_value(&matrix).unwrap();
                        value["values"] = json!(values);
                        value["residuals"] = json!(live_residuals);
                        Ok(emit_json(&value))
                    } else {
                        let mut out = String::new();
                        let _ = writeln!(out, "rows: {}", matrix.row_labels.join("  "));
                        let _ = writeln!(out, "cols: {}", matrix.col_labels.join("  "));
                        for row in &values {
                            let _ = writeln!(out, "{}", row.join("\t"));
                        }
                        for res in &live_residuals {
                            let _ = writeln!(
                                out,
                                "residual in column {}: {}",
                                res["column"].as_str().unwrap(),
                                res["terms"]
                            );
                        }
                        Ok(out)
                    }
                }
            }
        }
        Command::Tableaux { weight, pair, reading, json } => {
            let w = parse_weight(&weight)?;
            let ij = pair.get()?;
            let (mode, filter) = match reading.as_str() {
                "general" => (ReadingMode::RowsTopDownRightToLeft, false),
                "distinct" => (ReadingMode::RowsBottomUpLeftToRight, true),
                other => {
                    return Err(CliError::Parse(format!("bad --reading `{other}`")));
                }
            };
            let (dplus, dminus) = skew_shapes_from(&w, &ij)?;
            let c = content(&ij, w.m, w.n)?;
            let tabs = enumerate_marked(&dplus, &c.j_multiset(), &w, filter)?;
            if json {
                let items: Vec<serde_json::Value> = tabs
                    .iter()
                    .map(|t| {
                        let (i0, jword) = reading_word(t, mode);
                        json!({
                            "cells": t.shape().cells.iter().map(|&(r, col)| json!({
                                "row": r, "col": col, "symbol": t.symbol_at((r, col)),
                            })).collect::<Vec<_>>(),
                            "i0": i0,
                            "jword": jword,
                        })
                    })
                    .collect();
                Ok(emit_json(&json!({
                    "dplus": dplus.cells.iter().collect::<Vec<_>>(),
                    "dminus": dminus.cells.iter().collect::<Vec<_>>(),
                    "tableaux": items,
                })))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "{} tableaux", tabs.len());
                for (s, t) in tabs.iter().enumerate() {
                    let (i0, jword) = reading_word(t, mode);
                    let _ = writeln!(out, "T{}:", s + 1);
                    out.push_str(&t.render_with_offset(w.m));
                    let i0s: Vec<String> = i0.iter().map(|x| x.to_string()).collect();
                    let js: Vec<String> = jword.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "reading: I0=({}) J=({})", i0s.join(""), js.join(""));
                }
                Ok(out)
            }
        }
        Command::Osets { weight, pair, modulus, json } => {
            let ij = pair.get()?;
            let (w, concrete) = match &weight {
                WeightArg::Concrete(w) => (w.clone(), true),
                WeightArg::Symbolic => {
                    let (m, n) = infer_dims(&ij, None, None);
                    (Weight::zero(m, n)?, false)
                }
            };
            let osets = if concrete {
                collections_and_osets(&w, &ij)?
            } else {
                if !ij.is_admissible() {
                    return Err(CliError::Domain(format!("({ij}) is not admissible")));
                }
                word_indexed_osets(&w, &ij)?
            };
            if json {
                let mut items = Vec::new();
                for oset in &osets {
                    let rendered =
                        oset_json(oset, concrete.then_some(&w), modulus)?;
                    items.push(serde_json::from_str::<serde_json::Value>(&rendered).unwrap());
                }
                Ok(emit_json(&json!({"osets": items})))
            } else {
                let mut out = String::new();
                for oset in &osets {
                    let entries: Vec<String> =
                        oset.entries.iter().map(|e| e.to_string()).collect();
                    let _ = write!(out, "O_{} = {{{}}}", oset.label, entries.join(", "));
                    if concrete {
                        let values: Vec<String> = oset
                            .entries
                            .iter()
                            .map(|e| e.evaluate(&w).map(|v| v.to_string()))
                            .collect::<Result<_>>()?;
                        let _ = write!(out, " = {{{}}}", values.join(", "));
                        if oset.vanishes_at(&w, modulus)? {
                            let _ = write!(out, "  [all zero]");
                        }
                    }
                    out.push('\n');
                }
                Ok(out)
            }
        }
        Command::Chain { weight, pair, i0, jword, modulus, json } => {
            let w = parse_weight(&weight)?;
            let chain = match (pair, i0, jword) {
                (Some(pair), None, None) => {
                    let ij = parse_pair(&pair)?;
                    let osets = collections_and_osets(&w, &ij)?;
                    let vanishing = osets
                        .iter()
                        .find(|o| o.vanishes_at(&w, modulus).unwrap_or(false))
                        .ok_or_else(|| {
                            CliError::Domain("no O-set vanishes at this weight".into())
                        })?;
                    chain_from_collection(&w, &vanishing.chain_i, &vanishing.chain_j, modulus)?
                }
                (None, Some(i0), Some(jword)) => {
                    let i0 = parse_word(&i0)?;
                    let jw = parse_word(&jword)?;
                    chain_from_collection(&w, &i0, &jw, modulus)?
                }
                _ => {
                    return Err(CliError::Parse(
                        "give either --pair or both --i0 and --jword".into(),
                    ));
                }
            };
            if json {
                Ok(emit_json(&json!({
                    "chain": chain_steps_json(&chain),
                    "polynomial_only": chain.polynomial_only,
                    "modulus": chain.modulus,
                })))
            } else {
                Ok(format!("{}\n", chain.render_text()))
            }
        }
        Command::Link { from, to, poly, modulus, max_depth, json } => {
            let w1 = parse_weight(&from)?;
            let w2 = parse_weight(&to)?;
            let found = odd_linked(&w1, &w2, poly.unwrap_or(false), modulus, max_depth)?;
            if json {
                Ok(emit_json(&json!({
                    "linked": found.is_some(),
                    "chain": found.as_ref().map(chain_steps_json),
                    "polynomial_only": found.as_ref().map(|c| c.polynomial_only),
                    "modulus": found.as_ref().and_then(|c| c.modulus),
                })))
            } else {
                match found {
                    Some(chain) => Ok(format!("{}\n", chain.render_text())),
                    None => Ok("not linked\n".into()),
                }
            }
        }
        Command::Factor { weight, pair, concrete, modulus, json } => {
            let w = parse_weight(&weight)?;
            let ij = pair.get()?;
            let verdict = factor_candidate(&w, &ij, concrete, modulus)?;
            let osets = collections_and_osets(&w, &ij)?;
            let mut oset_values = Vec::new();
            for oset in &osets {
                let rendered = oset_json(oset, Some(&w), modulus)?;
                oset_values.push(serde_json::from_str::<serde_json::Value>(&rendered).unwrap());
            }
            let value = match &verdict {
                FactorVerdict::NotCandidate => json!({
                    "verdict": "not-candidate",
                    "osets": oset_values,
                }),
                FactorVerdict::CandidateWithChain(chain) => json!({
                    "verdict": "candidate-with-chain",
                    "chain": chain_steps_json(chain),
                    "osets": oset_values,
                }),
                FactorVerdict::RobustDecided { factor_possible, rank, target_dim, chain } => {
                    json!({
                        "verdict": "robust-decided",
                        "factor_possible": factor_possible,
                        "rank": rank,
                        "target_dim": target_dim,
                        "chain": chain.as_ref().map(chain_steps_json),
                        "osets": oset_values,
                    })
                }
            };
            if json {
                Ok(emit_json(&value))
            } else {
                match &verdict {
                    FactorVerdict::NotCandidate => Ok("not a candidate\n".into()),
                    FactorVerdict::CandidateWithChain(chain) => {
                        Ok(format!("candidate; chain: {}\n", chain.render_text()))
                    }
                    FactorVerdict::RobustDecided {
                        factor_possible, rank, target_dim, ..
                    } => Ok(format!(
                        "robust decision: factor {} (rank {rank} of {target_dim})\n",
                        if *factor_possible { "possible" } else { "ruled out" }
                    )),
                }
            }
        }
        Command::Rank { weight, pair, modulus, json } => {
            let w = parse_weight(&weight)?;
            let ij = pair.get()?;
            ij.check_range(w.m, w.n)?;
            let c = content(&ij, w.m, w.n)?;
            let rows = enumerate_admissible(&c);
            let cols: Vec<PsiColumn> =
                enumerate_sources(&c).into_iter().map(PsiColumn::Source).collect();
            let matrix = psi_matrix(&PsiRows::Admissible(rows), &cols, None)?;
            let evaluated = matrix.evaluate(&w)?;
            let rank = match modulus {
                None => rank_rational(&evaluated),
                Some(p) => rank_mod_p(&evaluated, p)?,
            };
            if json {
                Ok(emit_json(&json!({
                    "rank": rank,
                    "rows": matrix.rows(),
                    "cols": matrix.cols(),
                    "modulus": modulus,
                })))
            } else {
                Ok(format!("{rank}\n"))
            }
        }
    }
}
