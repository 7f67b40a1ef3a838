//! Parsing short source phrases into semantic readings.
//!
//! A phrase has one or two content words; function words declared as
//! skippable by a rule may stand between them. Every rule is tried; a
//! collocational reading is emitted when the collocation principle licenses
//! the pair, a literal one when the dependent has a free use in that
//! position.

use std::fmt;

use thiserror::Error;

use crate::avm::unify;
use crate::grammar::{HeadSide, RuleKind};
use crate::lexicon::{Category, EntryId, LexEntry, Lexicon, ResolvedCollocate};
use crate::semantics::{sem_union, LexicalFunction, SemError, SemIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown token `{0}`")]
    TokenUnknown(String),
    #[error("no rule covers `{0}`")]
    NoParse(String),
    #[error("cannot compose semantics: {0}")]
    Composition(#[from] SemError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    Collocational(LexicalFunction),
    Literal,
}

impl Construction {
    pub fn is_collocational(&self) -> bool {
        matches!(self, Construction::Collocational(_))
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Collocational(lf) => write!(f, "collocational {lf}"),
            Construction::Literal => f.write_str("literal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokenRole {
    Head,
    Dependent,
    Skipped,
    /// The only content word of the phrase.
    Word,
}

/// Which entry a token was taken as.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TokenSpan {
    pub token: String,
    pub role: TokenRole,
    pub entry: Option<EntryId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub sem: SemIndex,
    pub construction: Construction,
    pub rule: Option<(RuleKind, HeadSide)>,
    pub spans: Vec<TokenSpan>,
}

impl Reading {
    /// The input tokens, skipped words included.
    pub fn tokens(&self) -> Vec<&str> {
        self.spans.iter().map(|s| s.token.as_str()).collect()
    }

    /// `[collocational Magn]` or `[literal]`.
    pub fn label(&self) -> String {
        format!("[{}]", self.construction)
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label(), self.sem)
    }
}

/// Semantics of a head combined with its dependent: the union over the
/// head's variable.
pub fn compose_sem(head: &SemIndex, dep: &SemIndex) -> Result<SemIndex, SemError> {
    sem_union(head, dep)
}

/// The LF under which `head` and `dependent` form a collocation of the
/// given rule kind, trying both head sides.
pub fn license(
    lex: &Lexicon,
    head: &LexEntry,
    dependent: &LexEntry,
    kind: RuleKind,
) -> Option<LexicalFunction> {
    [HeadSide::Left, HeadSide::Right]
        .into_iter()
        .find_map(|side| {
            let (base, collocate) = match kind {
                RuleKind::HeadAdjunct => (head, dependent),
                RuleKind::HeadComplement => (dependent, head),
            };
            licensing_collocate(lex, base, collocate, (kind, side))
        })
        .map(|c| c.lf)
}

/// Head-adjunct: a collocate of the head compatible with the adjunct.
/// Head-complement: the head compatible with a collocate of the complement.
fn licensing_collocate(
    lex: &Lexicon,
    base: &LexEntry,
    collocate: &LexEntry,
    rule: (RuleKind, HeadSide),
) -> Option<ResolvedCollocate> {
    let target = collocate.to_fs().without_feature("COLLS");
    lex.collocates(base)
        .into_iter()
        .filter(|c| c.position.rule() == rule)
        .find(|c| unify(&c.entry.to_fs(), &target, lex.sorts()).is_ok())
}

/// Readings of a phrase, collocational first, then by semantics.
pub fn analyze<S: AsRef<str>>(
    tokens: &[S],
    lang: &str,
    lex: &Lexicon,
) -> Result<Vec<Reading>, AnalysisError> {
    let tokens: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let phrase = tokens.join(" ");
    let mut content = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if !lex.lookup_surface(lang, t).is_empty() {
            content.push(i);
        } else if !lex.grammar().is_skippable(t) {
            return Err(AnalysisError::TokenUnknown(t.to_string()));
        }
    }
    let mut readings = match content.as_slice() {
        [i] if tokens.len() == 1 => single(tokens[*i], lang, lex),
        [l, r] if *l == 0 && *r == tokens.len() - 1 => pair(&tokens, lang, lex)?,
        _ => Vec::new(),
    };
    if readings.is_empty() {
        return Err(AnalysisError::NoParse(phrase));
    }
    readings.sort_by(|a, b| {
        (
            !a.construction.is_collocational(),
            a.sem.to_string(),
            &a.construction,
            &a.spans,
        )
            .cmp(&(
                !b.construction.is_collocational(),
                b.sem.to_string(),
                &b.construction,
                &b.spans,
            ))
    });
    readings.dedup_by(|b, a| a.construction == b.construction && a.sem == b.sem);
    Ok(readings)
}

fn single(token: &str, lang: &str, lex: &Lexicon) -> Vec<Reading> {
    let mut out = Vec::new();
    for e in lex.lookup_surface(lang, token) {
        let construction = match &e.merged_sig {
            Some((lf, _)) => Construction::Collocational(lf.unmerged()),
            None if e.pred().is_some() => Construction::Literal,
            None => continue,
        };
        out.push(Reading {
            sem: e.sem.clone(),
            construction,
            rule: None,
            spans: vec![TokenSpan {
                token: token.to_string(),
                role: TokenRole::Word,
                entry: Some(e.id.clone()),
            }],
        });
    }
    out
}

fn pair(tokens: &[&str], lang: &str, lex: &Lexicon) -> Result<Vec<Reading>, AnalysisError> {
    let (left, right) = (tokens[0], tokens[tokens.len() - 1]);
    let skipped = &tokens[1..tokens.len() - 1];
    let mut out = Vec::new();
    for rule in lex.grammar().rules() {
        if !skipped.iter().all(|w| rule.skip.contains(*w)) {
            continue;
        }
        let (head_tok, dep_tok) = match rule.head_side {
            HeadSide::Left => (left, right),
            HeadSide::Right => (right, left),
        };
        let key = (rule.kind, rule.head_side);
        for head in lex.lookup_surface(lang, head_tok) {
            for dep in lex.lookup_surface(lang, dep_tok) {
                let spans = |h: &LexEntry, d: &LexEntry| {
                    let mut s: Vec<TokenSpan> = Vec::with_capacity(tokens.len());
                    let (l, r) = match rule.head_side {
                        HeadSide::Left => ((h, TokenRole::Head), (d, TokenRole::Dependent)),
                        HeadSide::Right => ((d, TokenRole::Dependent), (h, TokenRole::Head)),
                    };
                    s.push(TokenSpan {
                        token: left.to_string(),
                        role: l.1,
                        entry: Some(l.0.id.clone()),
                    });
                    s.extend(skipped.iter().map(|w| TokenSpan {
                        token: w.to_string(),
                        role: TokenRole::Skipped,
                        entry: None,
                    }));
                    s.push(TokenSpan {
                        token: right.to_string(),
                        role: r.1,
                        entry: Some(r.0.id.clone()),
                    });
                    s
                };
                let (base, base_tok, collocate) = match rule.kind {
                    RuleKind::HeadAdjunct => (head, head_tok, as_token(dep, dep_tok)),
                    RuleKind::HeadComplement => (dep, dep_tok, as_token(head, head_tok)),
                };
                if let Some(c) = licensing_collocate(lex, base, &collocate, key) {
                    if base_tok == base.phon || c.base_form.as_deref() == Some(base_tok) {
                        out.push(Reading {
                            sem: compose_sem(&base.sem, &c.entry.sem)?,
                            construction: Construction::Collocational(c.lf),
                            rule: Some(key),
                            spans: spans(head, dep),
                        });
                    }
                }
                if literal_fits(head, head_tok, dep, dep_tok, key) {
                    out.push(Reading {
                        sem: compose_sem(&head.sem, &dep.sem)?,
                        construction: Construction::Literal,
                        rule: Some(key),
                        spans: spans(head, dep),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The entry as it occurs under a given surface form.
fn as_token(e: &LexEntry, token: &str) -> LexEntry {
    let mut e = e.clone();
    e.phon = token.to_string();
    e.colls.clear();
    e
}

/// Free combination: a modifier in its own adjunct position, or a noun
/// complement of a verb or noun in a form the lexicon records for it.
fn literal_fits(
    head: &LexEntry,
    head_tok: &str,
    dep: &LexEntry,
    dep_tok: &str,
    rule: (RuleKind, HeadSide),
) -> bool {
    let free = |e: &LexEntry| e.merged_sig.is_none() && e.pred().is_some();
    if !free(head) || !free(dep) || head_tok != head.phon {
        return false;
    }
    let nominal_or_verbal = matches!(head.cat, Category::N | Category::V);
    match rule.0 {
        RuleKind::HeadAdjunct => {
            nominal_or_verbal
                && dep.cat.is_modifier()
                && dep.adjunct_position().rule() == rule
                && (dep_tok == dep.phon || dep_tok == dep.adjunct_surface())
        }
        RuleKind::HeadComplement => {
            let known_form = dep_tok == dep.phon
                || dep
                    .colls
                    .iter()
                    .any(|c| c.base_form.as_deref() == Some(dep_tok));
            nominal_or_verbal && dep.cat == Category::N && known_form
        }
    }
}
