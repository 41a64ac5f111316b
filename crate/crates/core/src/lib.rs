//! Exact combinatorics of odd linkage for the general linear supergroup
//! `GL(m|n)`.
//!
//! The crate mechanizes, in exact integer arithmetic, the bookkeeping that
//! decides when two weights of `GL(m|n)` are linked through odd reflections
//! and when a shifted weight can label a composition factor of a costandard
//! supermodule:
//!
//! - [`weights`]: weights `(plus|minus)`, the atypicality values
//!   `omega_{ij}`, shifts by multi-indices, contents, dominance predicates;
//! - [`indices`]: multi-indices `(I|J)`, admissibility, robustness, basis
//!   label enumeration, permutation actions and counting statistics;
//! - [`omega`]: integer-affine expressions in the symbols `omega_{ij}`;
//! - [`orders`]: the reverse Semitic order, its permutation-induced
//!   variants, and the row order on tableaux;
//! - [`psi`]: the closed-form floor-map action on labeled primitive
//!   vectors and symbolic matrix assembly;
//! - [`tableaux`]: skew diagrams, semistandard fillings and reading words;
//! - [`linkage`]: simple odd links, chain search, collections with O-sets,
//!   and composition-factor candidacy verdicts;
//! - [`linalg`]: fraction-free rank and determinant, and rank over odd
//!   prime fields.
//!
//! ```
//! use odd_linkage::*;
//!
//! let lam: Weight = "2,1,0|0,-1,-2".parse().unwrap();
//! let ij: MultiIndex = "123|123".parse().unwrap();
//! match factor_candidate(&lam, &ij, false, None).unwrap() {
//!     FactorVerdict::CandidateWithChain(chain) => {
//!         chain.verify().unwrap();
//!         assert_eq!(chain.end(), &lam.shift(&ij).unwrap());
//!     }
//!     verdict => panic!("expected a candidate, got {verdict:?}"),
//! }
//! ```

pub mod error;
pub mod indices;
pub mod linalg;
pub mod linkage;
pub mod omega;
pub mod orders;
pub mod psi;
pub mod tableaux;
pub mod weights;

pub use error::{Error, Result};
pub use indices::{
    ab_counts, enumerate_admissible, enumerate_all_with_content, enumerate_sources, is_robust,
    MultiIndex, Permutation,
};
pub use linalg::{det_bareiss, is_prime, is_upper_triangular, rank_mod_p, rank_rational, IntMatrix};
pub use linkage::{
    chain_from_collection, collections_and_osets, factor_candidate, odd_linked,
    simply_odd_linked, tableau_indexed_osets, word_indexed_osets, ChainStep, FactorVerdict,
    LinkChain, OSet, OSetLabel,
};
pub use omega::{OmegaExpr, OmegaRelations};
pub use orders::{
    clausen_row_cmp, clausen_row_less, induced_eta_cmp, induced_eta_less, rev_semitic_cmp,
    rev_semitic_less, OrderKind,
};
pub use psi::{
    diagonal_alpha, normalize_target, psi_image, psi_matrix, psi_on_combination, PiCombination,
    PiVector, PsiColumn, PsiMatrix, PsiRows, VectorKind,
};
pub use tableaux::{enumerate_marked, reading_word, skew_shapes_from, ReadingMode, SkewDiagram, Tableau};
pub use weights::{content, ContentVector, Weight};
