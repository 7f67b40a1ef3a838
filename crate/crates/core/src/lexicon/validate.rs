//! Cross-reference checks over an assembled lexicon.

use std::collections::BTreeMap;

use crate::grammar::Position;
use crate::semantics::LexicalFunction;

use super::diag::{Code, Diagnostic};
use super::entry::{Category, CollocateSubentry, LexEntry};
use super::Lexicon;

impl Lexicon {
    /// Every problem with references, categories, LFs and signs. Empty iff
    /// the lexicon is consistent.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for e in self.entries.values() {
            self.check_entry(e, &mut out);
            for c in &e.colls {
                self.check_coll(e, c, &mut out);
            }
        }
        self.check_signs(&mut out);
        out
    }

    fn check_lf(
        &self,
        lf: &LexicalFunction,
        span: &super::Span,
        out: &mut Vec<Diagnostic>,
    ) -> bool {
        if self.registry.contains(&lf.name) {
            return true;
        }
        out.push(Diagnostic::error(
            Code::UnknownLf,
            span,
            format!("lexical function `{}` is not declared", lf.name),
        ));
        false
    }

    fn check_entry(&self, e: &LexEntry, out: &mut Vec<Diagnostic>) {
        let Some((lf, base)) = &e.merged_sig else {
            return;
        };
        self.check_lf(lf, &e.span, out);
        if self.base_entries(e.lang(), base).is_empty() {
            out.push(Diagnostic::error(
                Code::MergedBaseMissing,
                &e.span,
                format!(
                    "merged entry `{}` names base `{base}`, which has no {} entry",
                    e.id,
                    e.lang()
                ),
            ));
        }
    }

    fn check_coll(&self, base: &LexEntry, c: &CollocateSubentry, out: &mut Vec<Diagnostic>) {
        let lfs: Vec<&LexicalFunction> = c.sem.lfs().collect();
        if lfs.len() != 1 {
            out.push(Diagnostic::error(
                Code::CollLfCount,
                &c.span,
                format!(
                    "collocate subentry has {} lexical functions, expected 1",
                    lfs.len()
                ),
            ));
        }
        for lf in lfs {
            self.check_lf(lf, &c.span, out);
        }
        if !c.colls.is_empty() {
            out.push(Diagnostic::error(
                Code::NestedColls,
                &c.span,
                format!("collocate subentry of `{}` carries its own colls", base.id),
            ));
        }
        match self.entries.get(&c.super_ref) {
            None => out.push(Diagnostic::error(
                Code::DanglingRef,
                &c.span,
                format!("super-entry `{}` is not defined", c.super_ref),
            )),
            Some(sup) => {
                let fits = match c.position {
                    Position::PreHeadAdjunct | Position::PostHeadAdjunct => sup.cat.is_modifier(),
                    Position::SupportVerbHead | Position::QuantityHead => {
                        matches!(sup.cat, Category::N | Category::V)
                    }
                };
                if !fits {
                    out.push(Diagnostic::error(
                        Code::CollCategory,
                        &c.span,
                        format!(
                            "`{}` of category {} cannot fill position {}",
                            sup.id, sup.cat, c.position
                        ),
                    ));
                }
                if sup.lang() != base.lang() {
                    out.push(Diagnostic::error(
                        Code::DanglingRef,
                        &c.span,
                        format!("super-entry `{}` is not in the base's language", sup.id),
                    ));
                }
            }
        }
        match self.grammar.rule_for(c.position) {
            None => out.push(Diagnostic::warning(
                Code::UnknownRule,
                &c.span,
                format!("no rule declared for position {}", c.position),
            )),
            Some(rule) => {
                if let Some(link) = &c.link {
                    if !rule.skip.contains(link) {
                        out.push(Diagnostic::error(
                            Code::BadLink,
                            &c.span,
                            format!(
                                "link `{link}` is not a skip word of the {} rule",
                                rule.kind.as_str()
                            ),
                        ));
                    }
                }
            }
        }
    }

    fn check_signs(&self, out: &mut Vec<Diagnostic>) {
        let mut fwd: BTreeMap<(String, String, String), usize> = BTreeMap::new();
        let mut rev: BTreeMap<(String, String, String), usize> = BTreeMap::new();
        let mut lf_seen: BTreeMap<String, usize> = BTreeMap::new();
        for (i, s) in self.signs.iter().enumerate() {
            if let Some((a, b)) = s.lf_pair() {
                let ok = self.check_lf(a, &s.span, out) & self.check_lf(b, &s.span, out);
                if ok && a != b {
                    out.push(Diagnostic::error(
                        Code::LfSignNotIdentity,
                        &s.span,
                        format!("LF sign maps `{a}` to `{b}`; LF signs must be identities"),
                    ));
                }
                if lf_seen.insert(a.to_string(), i).is_some() {
                    out.push(Diagnostic::error(
                        Code::DuplicateSign,
                        &s.span,
                        format!("second LF sign for `{a}`"),
                    ));
                }
                continue;
            }
            let Some((sp, tp)) = s.base_pair() else {
                out.push(Diagnostic::error(
                    Code::SignShape,
                    &s.span,
                    "sign must pair one predicate on each side",
                ));
                continue;
            };
            for (lang, pred) in [(&s.src_lang, sp), (&s.tgt_lang, tp)] {
                if self.base_entries(lang, pred).is_empty() {
                    out.push(Diagnostic::error(
                        Code::SignEndpointMissing,
                        &s.span,
                        format!("no {lang} entry with predicate `{pred}`"),
                    ));
                }
            }
            let key = (s.src_lang.clone(), s.tgt_lang.clone(), sp.to_string());
            if let Some(j) = fwd.insert(key, i) {
                out.push(Diagnostic::error(
                    Code::DuplicateSign,
                    &s.span,
                    format!(
                        "`{sp}` already has a {}->{} sign at {}",
                        s.src_lang, s.tgt_lang, self.signs[j].span
                    ),
                ));
            }
            let key = (s.tgt_lang.clone(), s.src_lang.clone(), tp.to_string());
            if let Some(j) = rev.get(&key) {
                out.push(Diagnostic::warning(
                    Code::AmbiguousReverseSign,
                    &s.span,
                    format!(
                        "`{tp}` maps back ambiguously; the sign at {} wins",
                        self.signs[*j].span
                    ),
                ));
            } else {
                rev.insert(key, i);
            }
        }
    }
}
