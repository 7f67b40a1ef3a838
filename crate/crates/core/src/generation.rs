//! Realizing a target semantic index as surface phrases.

use std::fmt;

use thiserror::Error;

use crate::grammar::{PhraseRule, Position};
use crate::lexicon::{Category, EntryId, LexEntry, Lexicon, ResolvedCollocate};
use crate::semantics::{LexicalFunction, QualiaRole, SemIndex};
use crate::transfer::paraphrase_candidates;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("no {lang} entry for `{pred}`")]
    NoBaseEntry { pred: String, lang: String },
    #[error("no {lang} realization of `{sem}`")]
    RealizationGap { sem: SemIndex, lang: String },
    #[error("cannot realize `{sem}`: {reason}")]
    Shape { sem: SemIndex, reason: &'static str },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("position {position} does not combine by the {rule} rule")]
    InconsistentPosition { position: Position, rule: String },
    #[error("`{0}` is not a function word of the rule")]
    BadLink(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    Merged,
    Collocational,
    Literal,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Merged => "merged",
            Strategy::Collocational => "collocational",
            Strategy::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub surface: String,
    pub strategy: Strategy,
    /// LFs realized, as lexicalized (merged ones with `//`).
    pub lfs: Vec<LexicalFunction>,
    /// Base entry first, then collocates outside-in.
    pub entries: Vec<EntryId>,
}

/// `"grand fumeur" [collocational Magn fr:fumeur fr:grand]`
impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\" [{}", self.surface, self.strategy.as_str())?;
        if self.lfs.is_empty() {
            write!(f, " -")?;
        } else {
            let lfs: Vec<String> = self.lfs.iter().map(ToString::to_string).collect();
            write!(f, " {}", lfs.join("+"))?;
        }
        for e in &self.entries {
            write!(f, " {e}")?;
        }
        write!(f, "]")
    }
}

/// Linearizes a collocate with the phrase it attaches to.
pub fn realize_surface(
    base: &str,
    collocate: &str,
    position: Position,
    link: Option<&str>,
    rule: &PhraseRule,
) -> Result<String, SurfaceError> {
    if position.rule() != (rule.kind, rule.head_side) {
        return Err(SurfaceError::InconsistentPosition {
            position,
            rule: format!("{} {}", rule.kind.as_str(), rule.head_side.as_str()),
        });
    }
    if let Some(l) = link {
        if !rule.skip.contains(l) {
            return Err(SurfaceError::BadLink(l.to_string()));
        }
    }
    let words: Vec<&str> = match position {
        Position::PreHeadAdjunct => vec![collocate, base],
        Position::PostHeadAdjunct => vec![base, collocate],
        Position::SupportVerbHead | Position::QuantityHead => {
            let mut w = vec![collocate];
            w.extend(link);
            w.push(base);
            w
        }
    };
    Ok(words.join(" "))
}

/// All realizations of `sem` in `lang`: merged lexemes, then collocations,
/// then (for LF-free indices) literal phrases.
pub fn generate(
    sem: &SemIndex,
    lang: &str,
    lex: &Lexicon,
) -> Result<Vec<Realization>, GenerationError> {
    let bases: Vec<&str> = sem.base_preds().collect();
    let mut lfs: Vec<&LexicalFunction> = sem.lfs().collect();
    lfs.sort_by_key(|lf| (lex.registry().rank(&lf.name), (*lf).clone()));
    let shape = |reason| GenerationError::Shape {
        sem: sem.clone(),
        reason,
    };
    let base = match bases.as_slice() {
        [] => return Err(shape("no base predicate")),
        [b] => *b,
        _ if lfs.is_empty() => return literal_multi(sem, &bases, lang, lex),
        _ => return Err(shape("LFs over more than one base predicate")),
    };
    let base_entries = lex.base_entries(lang, base);

    if lfs.is_empty() {
        if base_entries.is_empty() {
            return Err(GenerationError::NoBaseEntry {
                pred: base.to_string(),
                lang: lang.to_string(),
            });
        }
        let mut out: Vec<Realization> = base_entries
            .iter()
            .map(|e| Realization {
                surface: e.phon.clone(),
                strategy: Strategy::Literal,
                lfs: Vec::new(),
                entries: vec![e.id.clone()],
            })
            .collect();
        out.sort_by(|a, b| {
            a.surface
                .cmp(&b.surface)
                .then_with(|| a.entries.cmp(&b.entries))
        });
        return Ok(out);
    }

    let mut merged = Vec::new();
    for cand in paraphrase_candidates(sem, lang, lex) {
        let Some(e) = lex.entry(&cand.entry) else {
            continue;
        };
        let rest: Vec<&LexicalFunction> = lfs.iter().copied().filter(|l| **l != cand.lf).collect();
        let lf = e
            .merged_sig
            .as_ref()
            .map(|(lf, _)| lf.clone())
            .expect("merged entry");
        merged.extend(stack(e, &rest, Strategy::Merged, Some(lf), lex)?);
    }
    let mut colloc = Vec::new();
    for e in &base_entries {
        colloc.extend(stack(e, &lfs, Strategy::Collocational, None, lex)?);
    }
    if merged.is_empty() && colloc.is_empty() {
        if base_entries.is_empty() && lex.merged_entries(lang, base).is_empty() {
            return Err(GenerationError::NoBaseEntry {
                pred: base.to_string(),
                lang: lang.to_string(),
            });
        }
        return Err(GenerationError::RealizationGap {
            sem: sem.clone(),
            lang: lang.to_string(),
        });
    }
    for group in [&mut merged, &mut colloc] {
        group.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.surface.cmp(&b.1.surface)));
    }
    Ok(merged.into_iter().chain(colloc).map(|(_, r)| r).collect())
}

type RankKey = Vec<(bool, Option<QualiaRole>)>;

/// Realizations of `base` with one collocate per LF, the first LF
/// outermost.
fn stack(
    base: &LexEntry,
    lfs: &[&LexicalFunction],
    strategy: Strategy,
    merged: Option<LexicalFunction>,
    lex: &Lexicon,
) -> Result<Vec<(RankKey, Realization)>, GenerationError> {
    let mut choices: Vec<Vec<ResolvedCollocate>> = Vec::new();
    for lf in lfs {
        let cands = lex.apply_lf(lf, base);
        if cands.is_empty() {
            return Ok(Vec::new());
        }
        choices.push(cands);
    }
    let mut out = Vec::new();
    let mut picks = vec![0usize; choices.len()];
    loop {
        let chosen: Vec<&ResolvedCollocate> =
            picks.iter().zip(&choices).map(|(i, c)| &c[*i]).collect();
        let base_word = chosen
            .iter()
            .find_map(|c| c.base_form.as_deref())
            .unwrap_or(&base.phon);
        let mut surface = base_word.to_string();
        for c in chosen.iter().rev() {
            let rule =
                lex.grammar()
                    .rule_for(c.position)
                    .ok_or(SurfaceError::InconsistentPosition {
                        position: c.position,
                        rule: "undeclared".into(),
                    })?;
            surface =
                realize_surface(&surface, &c.entry.phon, c.position, c.link.as_deref(), rule)?;
        }
        let key: RankKey = lfs
            .iter()
            .zip(&chosen)
            .map(|(q, c)| (c.lf.subscript != q.subscript, c.lf.subscript))
            .collect();
        let mut entries = vec![base.id.clone()];
        entries.extend(chosen.iter().map(|c| c.entry.id.clone()));
        let mut used: Vec<LexicalFunction> = merged.iter().cloned().collect();
        used.extend(chosen.iter().map(|c| c.lf.clone()));
        out.push((
            key,
            Realization {
                surface,
                strategy,
                lfs: used,
                entries,
            },
        ));
        // odometer over the candidate lists
        let mut i = picks.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < choices[i].len() {
                break;
            }
            picks[i] = 0;
        }
    }
}

/// Literal phrase for an LF-free index with several base predicates: one
/// nominal or verbal head, the rest free modifiers in their own positions.
fn literal_multi(
    sem: &SemIndex,
    bases: &[&str],
    lang: &str,
    lex: &Lexicon,
) -> Result<Vec<Realization>, GenerationError> {
    let is_head = |e: &&LexEntry| matches!(e.cat, Category::N | Category::V);
    let heads: Vec<&str> = bases
        .iter()
        .copied()
        .filter(|p| lex.base_entries(lang, p).iter().any(is_head))
        .collect();
    let [head] = heads.as_slice() else {
        if let Some(p) = bases.iter().find(|p| lex.base_entries(lang, p).is_empty()) {
            return Err(GenerationError::NoBaseEntry {
                pred: p.to_string(),
                lang: lang.to_string(),
            });
        }
        return Err(GenerationError::Shape {
            sem: sem.clone(),
            reason: "literal phrase needs exactly one nominal or verbal head",
        });
    };
    let mut choices: Vec<Vec<&LexEntry>> = vec![lex
        .base_entries(lang, head)
        .into_iter()
        .filter(is_head)
        .collect()];
    for p in bases.iter().filter(|p| *p != head) {
        let mods: Vec<&LexEntry> = lex
            .base_entries(lang, p)
            .into_iter()
            .filter(|e| e.cat.is_modifier())
            .collect();
        if mods.is_empty() {
            return Err(GenerationError::NoBaseEntry {
                pred: p.to_string(),
                lang: lang.to_string(),
            });
        }
        choices.push(mods);
    }
    let mut out = Vec::new();
    let mut picks = vec![0usize; choices.len()];
    loop {
        let head = choices[0][picks[0]];
        let mut pre = Vec::new();
        let mut post = Vec::new();
        for (i, c) in choices.iter().enumerate().skip(1) {
            let m = c[picks[i]];
            match m.adjunct_position() {
                Position::PostHeadAdjunct => post.push(m),
                _ => pre.push(m),
            }
        }
        pre.sort_by(|a, b| a.adjunct_surface().cmp(b.adjunct_surface()));
        post.sort_by(|a, b| a.adjunct_surface().cmp(b.adjunct_surface()));
        let mut words: Vec<&str> = pre.iter().map(|m| m.adjunct_surface()).collect();
        words.push(&head.phon);
        words.extend(post.iter().map(|m| m.adjunct_surface()));
        let mut entries = vec![head.id.clone()];
        entries.extend(pre.iter().chain(&post).map(|m| m.id.clone()));
        out.push(Realization {
            surface: words.join(" "),
            strategy: Strategy::Literal,
            lfs: Vec::new(),
            entries,
        });
        let mut i = picks.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| {
                    a.surface
                        .cmp(&b.surface)
                        .then_with(|| a.entries.cmp(&b.entries))
                });
                return Ok(out);
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < choices[i].len() {
                break;
            }
            picks[i] = 0;
        }
    }
}
