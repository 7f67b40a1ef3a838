//! Source-to-target mapping of semantic indices. Base predicates go through
//! bilingual signs; LF predicates are interlingual and pass unchanged.

use thiserror::Error;

use crate::lexicon::{EntryId, LexEntry, Lexicon};
use crate::semantics::{LexicalFunction, PredKind, SemIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("no {src}->{tgt} sign for `{pred}`")]
    MissingSign {
        pred: String,
        src: String,
        tgt: String,
    },
}

pub fn transfer(
    sem: &SemIndex,
    src: &str,
    tgt: &str,
    lex: &Lexicon,
) -> Result<SemIndex, TransferError> {
    if src == tgt {
        return Ok(sem.clone());
    }
    let mut kinds = Vec::with_capacity(sem.rest().len());
    for k in sem.kinds() {
        kinds.push(match k {
            PredKind::Base(p) => PredKind::Base(
                lex.sign_target(src, tgt, p)
                    .ok_or_else(|| TransferError::MissingSign {
                        pred: p.clone(),
                        src: src.to_string(),
                        tgt: tgt.to_string(),
                    })?
                    .to_string(),
            ),
            PredKind::Lf(lf) => PredKind::Lf(lf.clone()),
        });
    }
    Ok(SemIndex::from_kinds(sem.var(), kinds))
}

/// A single lexeme realizing a base predicate together with an LF on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MergedRealization {
    pub entry: EntryId,
    pub base: String,
    /// The LF predication consumed, as it appears in the query.
    pub lf: LexicalFunction,
}

/// `W + F(W) => //F(W)`: merged entries covering a base/LF pair of `sem`.
pub fn paraphrase_candidates(sem: &SemIndex, lang: &str, lex: &Lexicon) -> Vec<MergedRealization> {
    let mut out = Vec::new();
    for base in sem.base_preds() {
        for query in sem.lfs() {
            for e in lex.merged_entries(lang, base) {
                let Some((lf, _)) = &e.merged_sig else {
                    continue;
                };
                if lf.unmerged().satisfies(query) {
                    out.push(MergedRealization {
                        entry: e.id.clone(),
                        base: base.to_string(),
                        lf: query.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `//F(W) => W + F(W)`: the pair a merged entry stands for.
pub fn unmerge(entry: &LexEntry) -> Option<SemIndex> {
    let (lf, base) = entry.merged_sig.as_ref()?;
    Some(SemIndex::from_kinds(
        entry.sem.var(),
        [PredKind::Base(base.clone()), PredKind::Lf(lf.unmerged())],
    ))
}
