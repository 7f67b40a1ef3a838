//! ECD-style lexicons: entries with COLLS zones, collocate resolution by
//! default overwrite, merged-LF entries, bilingual signs.

mod diag;
mod entry;
mod load;
mod overwrite;
pub mod sexpr;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::avm::{FeatureStructure, SortHierarchy};
use crate::grammar::{Grammar, Position};
use crate::semantics::{LexicalFunction, LfRegistry, QualiaRole};

pub use diag::{has_errors, sort_diagnostics, Code, Diagnostic, Severity};
pub use entry::{
    AdjunctUse, BilingualSign, Category, CollocateSubentry, EntryId, LexEntry, ANY_LANG,
};
pub use load::{load_lexicon, load_sources, Source};
pub use overwrite::default_overwrite;
pub use sexpr::Span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("no entry `{0}`")]
    DanglingRef(EntryId),
}

/// A collocate subentry resolved against its super-entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCollocate {
    /// Super-entry overwritten by the subentry, over the base's variable.
    pub entry: LexEntry,
    pub lf: LexicalFunction,
    pub position: Position,
    pub link: Option<String>,
    pub base_form: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub(crate) sorts: SortHierarchy,
    // preamble declarations, for serialization
    pub(crate) sort_decls: Vec<(String, Vec<String>)>,
    pub(crate) registry: LfRegistry,
    pub(crate) grammar: Grammar,
    pub(crate) entries: BTreeMap<EntryId, LexEntry>,
    pub(crate) signs: Vec<BilingualSign>,
    // (lang, surface) -> entries the surface may realize
    by_surface: BTreeMap<(String, String), BTreeSet<EntryId>>,
    // (lang, pred) -> entries whose own predicate is pred
    by_pred: BTreeMap<(String, String), BTreeSet<EntryId>>,
    // (src lang, tgt lang, src pred) -> index into signs
    sign_index: BTreeMap<(String, String, String), usize>,
}

impl Lexicon {
    pub fn sorts(&self) -> &SortHierarchy {
        &self.sorts
    }

    pub fn registry(&self) -> &LfRegistry {
        &self.registry
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values()
    }

    pub fn entry(&self, id: &EntryId) -> Option<&LexEntry> {
        self.entries.get(id)
    }

    pub fn signs(&self) -> &[BilingualSign] {
        &self.signs
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.signs.is_empty()
    }

    /// Entries a surface token may realize, in id order: own phon, free
    /// adjunct form, or a form listed on a collocate subentry.
    pub fn lookup_surface(&self, lang: &str, surface: &str) -> Vec<&LexEntry> {
        self.by_surface
            .get(&(lang.to_string(), surface.to_string()))
            .into_iter()
            .flatten()
            .filter_map(|id| self.entries.get(id))
            .collect()
    }

    /// Non-merged entries whose own predicate is `pred`.
    pub fn base_entries(&self, lang: &str, pred: &str) -> Vec<&LexEntry> {
        self.by_pred
            .get(&(lang.to_string(), pred.to_string()))
            .into_iter()
            .flatten()
            .filter_map(|id| self.entries.get(id))
            .collect()
    }

    /// Entries lexicalizing `//lf(base)`.
    pub fn merged_entries(&self, lang: &str, base: &str) -> Vec<&LexEntry> {
        self.entries
            .values()
            .filter(|e| e.lang() == lang)
            .filter(|e| matches!(&e.merged_sig, Some((_, b)) if b == base))
            .collect()
    }

    pub fn sign(&self, src_lang: &str, tgt_lang: &str, pred: &str) -> Option<&BilingualSign> {
        self.sign_index
            .get(&(src_lang.to_string(), tgt_lang.to_string(), pred.to_string()))
            .map(|i| &self.signs[*i])
    }

    /// Target predicate for `pred` under the (possibly reversed) sign.
    pub fn sign_target(&self, src_lang: &str, tgt_lang: &str, pred: &str) -> Option<&str> {
        let sign = self.sign(src_lang, tgt_lang, pred)?;
        let (s, t) = sign.base_pair()?;
        if sign.src_lang == src_lang && s == pred {
            Some(t)
        } else {
            Some(s)
        }
    }

    /// The declared LF sign for `name`, if any.
    pub fn lf_sign(&self, name: &str) -> Option<&BilingualSign> {
        self.signs
            .iter()
            .find(|s| matches!(s.lf_pair(), Some((src, _)) if src.name == name))
    }

    /// Full entry of a collocate: the super-entry overwritten by the
    /// subentry, coindexed with the base's variable.
    pub fn resolve_collocate(
        &self,
        base: &LexEntry,
        sub: &CollocateSubentry,
    ) -> Result<LexEntry, LexiconError> {
        let sup = self
            .entries
            .get(&sub.super_ref)
            .ok_or_else(|| LexiconError::DanglingRef(sub.super_ref.clone()))?;
        let fs = default_overwrite(&super_fs(sup), &sub.overlay_fs(), &self.sorts);
        let mut entry = LexEntry::from_fs(&fs).expect("overwrite keeps entry shape");
        entry.sem = entry.sem.rename(base.sem.var());
        entry.span = sub.span.clone();
        Ok(entry)
    }

    fn resolve_full(
        &self,
        base: &LexEntry,
        sub: &CollocateSubentry,
    ) -> Result<Option<ResolvedCollocate>, LexiconError> {
        let Some(lf) = sub.lf().cloned() else {
            return Ok(None);
        };
        Ok(Some(ResolvedCollocate {
            entry: self.resolve_collocate(base, sub)?,
            lf,
            position: sub.position,
            link: sub.link.clone(),
            base_form: sub.base_form.clone(),
        }))
    }

    /// All resolved collocates of `base`, in subentry order.
    pub fn collocates(&self, base: &LexEntry) -> Vec<ResolvedCollocate> {
        base.colls
            .iter()
            .filter_map(|c| self.resolve_full(base, c).ok().flatten())
            .collect()
    }

    /// Collocates of `base` whose LF answers `query`. Exact subscript
    /// matches come first, then qualia role order, then surface.
    pub fn apply_lf(&self, query: &LexicalFunction, base: &LexEntry) -> Vec<ResolvedCollocate> {
        let mut out: Vec<ResolvedCollocate> = self
            .collocates(base)
            .into_iter()
            .filter(|c| c.lf.satisfies(query))
            .collect();
        out.sort_by(|a, b| {
            collocate_rank(query, a)
                .cmp(&collocate_rank(query, b))
                .then_with(|| a.entry.phon.cmp(&b.entry.phon))
                .then_with(|| a.entry.id.cmp(&b.entry.id))
        });
        out
    }

    pub(crate) fn reindex(&mut self) {
        self.by_surface.clear();
        self.by_pred.clear();
        self.sign_index.clear();
        let mut surf = |lang: &str, s: &str, id: &EntryId| {
            self.by_surface
                .entry((lang.to_string(), s.to_string()))
                .or_default()
                .insert(id.clone());
        };
        for e in self.entries.values() {
            surf(e.lang(), &e.phon, &e.id);
            if let Some(form) = e.adjunct.as_ref().and_then(|a| a.form.as_deref()) {
                surf(e.lang(), form, &e.id);
            }
            for c in &e.colls {
                if let Some(bf) = &c.base_form {
                    surf(e.lang(), bf, &e.id);
                }
                if let Some(form) = &c.form {
                    surf(c.super_ref.lang.as_str(), form, &c.super_ref);
                }
            }
        }
        for e in self.entries.values() {
            if e.merged_sig.is_some() {
                continue;
            }
            if let Some(p) = e.pred() {
                self.by_pred
                    .entry((e.lang().to_string(), p.to_string()))
                    .or_default()
                    .insert(e.id.clone());
            }
        }
        for (i, s) in self.signs.iter().enumerate() {
            let Some((sp, tp)) = s.base_pair() else {
                continue;
            };
            let fwd = (s.src_lang.clone(), s.tgt_lang.clone(), sp.to_string());
            let rev = (s.tgt_lang.clone(), s.src_lang.clone(), tp.to_string());
            self.sign_index.entry(fwd).or_insert(i);
            self.sign_index.entry(rev).or_insert(i);
        }
    }
}

/// Rank of a candidate for a query: exact subscript match first, then the
/// candidate's qualia role in declaration order (unsubscripted first).
fn collocate_rank(query: &LexicalFunction, c: &ResolvedCollocate) -> (bool, Option<QualiaRole>) {
    (c.lf.subscript != query.subscript, c.lf.subscript)
}

/// Super-entry encoding used for overwrite: the free entry minus its own
/// COLLS zone.
fn super_fs(sup: &LexEntry) -> FeatureStructure {
    sup.to_fs().without_feature("COLLS")
}

impl fmt::Display for Lexicon {
    /// Serializes in the lexicon file format. Loading the output yields an
    /// equal lexicon.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use sexpr::quote;
        if !self.sort_decls.is_empty() {
            write!(f, "(sorts")?;
            for (child, ps) in &self.sort_decls {
                write!(f, " ({child}")?;
                for p in ps {
                    write!(f, " {p}")?;
                }
                write!(f, ")")?;
            }
            writeln!(f, ")")?;
        }
        write!(f, "(lfs")?;
        for info in self.registry.iter() {
            match &info.doc {
                Some(doc) => write!(f, " ({} {})", info.name, quote(doc))?,
                None => write!(f, " {}", info.name)?,
            }
        }
        writeln!(f, ")")?;
        for r in self.grammar.rules() {
            writeln!(f, "{r}")?;
        }
        for e in self.entries.values() {
            write!(
                f,
                "(entry (id {}) (phon {}) (cat {})",
                e.id,
                quote(&e.phon),
                e.cat
            )?;
            match &e.merged_sig {
                Some((lf, base)) => write!(f, " (merged {} {base})", lf.unmerged())?,
                None => {
                    if let Some(p) = e.pred() {
                        write!(f, " (sem (pred {p}))")?;
                    }
                }
            }
            if let Some(a) = &e.adjunct {
                write!(f, " (adjunct {}", a.position)?;
                if let Some(form) = &a.form {
                    write!(f, " {}", quote(form))?;
                }
                write!(f, ")")?;
            }
            writeln!(f, ")")?;
        }
        for e in self.entries.values() {
            if !e.qualia.is_empty() {
                write!(f, "(qualia (id {})", e.id)?;
                for (role, v) in &e.qualia {
                    write!(f, " ({role} {v})")?;
                }
                writeln!(f, ")")?;
            }
        }
        for e in self.entries.values() {
            for c in &e.colls {
                write!(f, "(coll (base {}) ", e.id)?;
                write_coll_body(f, c)?;
                writeln!(f, ")")?;
            }
        }
        for s in &self.signs {
            match (s.base_pair(), s.lf_pair()) {
                (Some((sp, tp)), _) => writeln!(
                    f,
                    "(bi (src {} {sp}) (tgt {} {tp}))",
                    s.src_lang, s.tgt_lang
                )?,
                (None, Some((a, b))) if a == b => writeln!(f, "(bi-lf {a})")?,
                (None, Some((a, b))) => writeln!(f, "(bi-lf (src {a}) (tgt {b}))")?,
                (None, None) => {}
            }
        }
        Ok(())
    }
}

fn write_coll_body(f: &mut fmt::Formatter<'_>, c: &CollocateSubentry) -> fmt::Result {
    use sexpr::quote;
    write!(f, "(super {}) (lf", c.super_ref)?;
    for lf in c.sem.lfs() {
        write!(f, " {lf}")?;
    }
    write!(f, ") (pos {})", c.position)?;
    for (name, v) in [
        ("form", &c.form),
        ("link", &c.link),
        ("base-form", &c.base_form),
    ] {
        if let Some(v) = v {
            write!(f, " ({name} {})", quote(v))?;
        }
    }
    if !c.colls.is_empty() {
        write!(f, " (colls")?;
        for n in &c.colls {
            write!(f, " (coll ")?;
            write_coll_body(f, n)?;
            write!(f, ")")?;
        }
        write!(f, ")")?;
    }
    Ok(())
}
