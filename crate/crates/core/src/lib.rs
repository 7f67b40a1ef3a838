//! Collocation translation with lexical functions as interlingua.
//!
//! Source phrases are analyzed against an ECD-style lexicon into semantic
//! indices such as `{smoker(x), Magn(x)}`; base predicates are transferred
//! through bilingual signs while LF predicates pass through unchanged; the
//! target index is realized as a collocation, a merged lexeme or a literal
//! phrase.

pub mod analysis;
pub mod avm;
pub mod generation;
pub mod grammar;
pub mod lexicon;
pub mod pipeline;
pub mod semantics;
pub mod transfer;

pub use analysis::{analyze, compose_sem, license, AnalysisError, Construction, Reading};
pub use avm::{struct_equal, subsumes, unify, FeatureStructure, Path, SortHierarchy, UnifyError};
pub use generation::{generate, realize_surface, GenerationError, Realization, Strategy};
pub use grammar::{Grammar, HeadSide, PhraseRule, Position, RuleKind};
pub use lexicon::{
    default_overwrite, load_lexicon, load_sources, BilingualSign, Category, CollocateSubentry,
    Diagnostic, EntryId, LexEntry, Lexicon, ResolvedCollocate, Source,
};
pub use pipeline::{translate, translate_reading, Error, Translation};
pub use semantics::{
    alpha_equiv, render_lf, sem_union, LexicalFunction, LfRegistry, PredKind, Predication,
    QualiaRole, SemIndex, Variable,
};
pub use transfer::{paraphrase_candidates, transfer, unmerge, MergedRealization, TransferError};
