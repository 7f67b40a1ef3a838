//! Lexical entries, collocate subentries and bilingual signs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::avm::{FeatureStructure, FsBuilder, NodeId, NodeKind, Path};
use crate::grammar::Position;
use crate::semantics::{LexicalFunction, PredKind, QualiaRole, SemIndex, Variable};

use super::sexpr::Span;

/// `lang:name`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryId {
    pub lang: String,
    pub name: String,
}

impl EntryId {
    pub fn new(lang: impl Into<String>, name: impl Into<String>) -> Self {
        EntryId {
            lang: lang.into(),
            name: name.into(),
        }
    }
}

impl FromStr for EntryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((l, n)) if !l.is_empty() && !n.is_empty() => Ok(EntryId::new(l, n)),
            _ => Err(format!("`{s}` is not a lang:name identifier")),
        }
    }
}

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lang, self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    N,
    A,
    V,
    Adv,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::N => "N",
            Category::A => "A",
            Category::V => "V",
            Category::Adv => "Adv",
        }
    }

    pub fn is_modifier(self) -> bool {
        matches!(self, Category::A | Category::Adv)
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" => Ok(Category::N),
            "A" => Ok(Category::A),
            "V" => Ok(Category::V),
            "Adv" => Ok(Category::Adv),
            _ => Err(format!("unknown category `{s}`")),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Placement and surface form of a free (non-collocational) modifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctUse {
    pub position: Position,
    pub form: Option<String>,
}

/// A partial entry listed in a base's COLLS zone. Its semantics is the
/// lexical function alone; everything else comes from the super-entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollocateSubentry {
    pub super_ref: EntryId,
    pub sem: SemIndex,
    pub position: Position,
    /// Surface of the collocate in this combination, when it differs from
    /// the super-entry's (e.g. an inflected form).
    pub form: Option<String>,
    /// Function word placed between a head collocate and its base.
    pub link: Option<String>,
    /// Surface of the base in this combination (e.g. a plural).
    pub base_form: Option<String>,
    /// Always empty in a valid lexicon.
    pub colls: Vec<CollocateSubentry>,
    pub span: Span,
}

impl CollocateSubentry {
    /// The subentry's lexical function, if it has exactly one.
    pub fn lf(&self) -> Option<&LexicalFunction> {
        let mut it = self.sem.lfs();
        match (it.next(), it.next()) {
            (Some(lf), None) if self.sem.base_preds().next().is_none() => Some(lf),
            _ => None,
        }
    }

    /// Partial description overwriting the super-entry on resolution.
    pub fn overlay_fs(&self) -> FeatureStructure {
        let mut b = FsBuilder::new();
        let var = b.empty("index");
        let sem = sem_node(&mut b, &self.sem, var);
        let mut feats = vec![("SEM_IND", sem)];
        if let Some(form) = &self.form {
            feats.push(("PHON", b.atom(form)));
        }
        let root = b.complex("collocate", feats);
        b.finish(root).expect("subentry overlay is well formed")
    }

    fn add_to(&self, b: &mut FsBuilder, var: NodeId) -> NodeId {
        let sem = sem_node(b, &self.sem, var);
        let mut feats = vec![
            ("SUPER", b.atom(self.super_ref.to_string())),
            ("POS", b.atom(self.position.as_str())),
            ("SEM_IND", sem),
        ];
        for (name, v) in [
            ("FORM", &self.form),
            ("LINK", &self.link),
            ("BASE_FORM", &self.base_form),
        ] {
            if let Some(v) = v {
                feats.push((name, b.atom(v)));
            }
        }
        if !self.colls.is_empty() {
            let members = self.colls.iter().map(|c| c.add_to(b, var)).collect();
            feats.push(("COLLS", b.set(members)));
        }
        b.complex("collocate", feats)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub id: EntryId,
    pub phon: String,
    pub cat: Category,
    pub sem: SemIndex,
    pub colls: Vec<CollocateSubentry>,
    pub qualia: BTreeMap<QualiaRole, String>,
    /// `(//F, base-pred)` for a merged-LF lexicalization.
    pub merged_sig: Option<(LexicalFunction, String)>,
    pub adjunct: Option<AdjunctUse>,
    pub span: Span,
}

impl LexEntry {
    pub fn new(
        id: EntryId,
        phon: impl Into<String>,
        cat: Category,
        pred: impl Into<String>,
    ) -> Self {
        LexEntry {
            id,
            phon: phon.into(),
            cat,
            sem: SemIndex::from_kinds(Variable(0), [PredKind::Base(pred.into())]),
            colls: Vec::new(),
            qualia: BTreeMap::new(),
            merged_sig: None,
            adjunct: None,
            span: Span::memory(),
        }
    }

    pub fn lang(&self) -> &str {
        &self.id.lang
    }

    /// The entry's own predicate name.
    pub fn pred(&self) -> Option<&str> {
        self.sem.base_preds().next()
    }

    /// Surface used when this entry is a free modifier.
    pub fn adjunct_surface(&self) -> &str {
        self.adjunct
            .as_ref()
            .and_then(|a| a.form.as_deref())
            .unwrap_or(&self.phon)
    }

    pub fn adjunct_position(&self) -> Position {
        self.adjunct
            .as_ref()
            .map(|a| a.position)
            .unwrap_or(Position::PreHeadAdjunct)
    }

    /// Full AVM encoding. Collocate subentries share the entry's index
    /// variable.
    pub fn to_fs(&self) -> FeatureStructure {
        let mut b = FsBuilder::new();
        let var = b.empty("index");
        let sem = sem_node(&mut b, &self.sem, var);
        let mut feats = vec![
            ("ID", b.atom(self.id.to_string())),
            ("PHON", b.atom(&self.phon)),
            ("CAT", b.atom(self.cat.as_str())),
            ("SEM_IND", sem),
        ];
        if !self.colls.is_empty() {
            let members = self.colls.iter().map(|c| c.add_to(&mut b, var)).collect();
            feats.push(("COLLS", b.set(members)));
        }
        if !self.qualia.is_empty() {
            let qs: Vec<(&str, NodeId)> = self
                .qualia
                .iter()
                .map(|(r, v)| (r.as_str(), b.atom(v)))
                .collect();
            feats.push(("QUALIA", b.complex("top", qs)));
        }
        if let Some((lf, base)) = &self.merged_sig {
            let fn_ = b.atom(lf.to_string());
            let base = b.atom(base);
            feats.push(("MERGED", b.complex("top", [("FN", fn_), ("BASE", base)])));
        }
        if let Some(adj) = &self.adjunct {
            let pos = b.atom(adj.position.as_str());
            let mut af = vec![("POS", pos)];
            if let Some(form) = &adj.form {
                af.push(("FORM", b.atom(form)));
            }
            feats.push(("ADJUNCT", b.complex("top", af)));
        }
        let root = b.complex("sign", feats);
        b.finish(root).expect("entry encoding is well formed")
    }

    /// Decodes identity, surface, category, semantics, qualia, merged
    /// signature and adjunct use. COLLS is not decoded.
    pub fn from_fs(fs: &FeatureStructure) -> Result<LexEntry, String> {
        let atom = |p: &str| {
            fs.atom_at(&Path::parse(p))
                .map(str::to_string)
                .ok_or_else(|| format!("missing {p}"))
        };
        let id: EntryId = atom("ID")?.parse()?;
        let phon = atom("PHON")?;
        let cat: Category = atom("CAT")?.parse()?;
        let sem = decode_sem(fs)?;
        let mut qualia = BTreeMap::new();
        if let Some(q) = fs.path_node(&Path::parse("QUALIA")) {
            if let NodeKind::Complex(m) = &fs.node(q).kind {
                for (role, v) in m {
                    let role: QualiaRole = role.parse().map_err(|e| format!("{e}"))?;
                    match &fs.node(*v).kind {
                        NodeKind::Atomic(s) => {
                            qualia.insert(role, s.clone());
                        }
                        _ => return Err(format!("qualia {role} is not atomic")),
                    }
                }
            }
        }
        let merged_sig = match (
            fs.atom_at(&Path::parse("MERGED.FN")),
            fs.atom_at(&Path::parse("MERGED.BASE")),
        ) {
            (Some(f), Some(base)) => Some((
                LexicalFunction::parse_unchecked(f).map_err(|e| e.to_string())?,
                base.to_string(),
            )),
            _ => None,
        };
        let adjunct = match fs.atom_at(&Path::parse("ADJUNCT.POS")) {
            Some(p) => Some(AdjunctUse {
                position: p.parse()?,
                form: fs.atom_at(&Path::parse("ADJUNCT.FORM")).map(str::to_string),
            }),
            None => None,
        };
        Ok(LexEntry {
            id,
            phon,
            cat,
            sem,
            colls: Vec::new(),
            qualia,
            merged_sig,
            adjunct,
            span: Span::memory(),
        })
    }
}

fn sem_node(b: &mut FsBuilder, sem: &SemIndex, var: NodeId) -> NodeId {
    let members: Vec<NodeId> = sem
        .kinds()
        .map(|k| match k {
            PredKind::Base(p) => {
                let reln = b.atom(p);
                b.complex("rel", [("RELN", reln), ("INST", var)])
            }
            PredKind::Lf(lf) => {
                let fn_ = b.atom(lf.to_string());
                b.complex("lf", [("FN", fn_), ("INST", var)])
            }
        })
        .collect();
    let rest = b.set(members);
    b.complex("sem", [("VAR", var), ("REST", rest)])
}

fn decode_sem(fs: &FeatureStructure) -> Result<SemIndex, String> {
    let members = fs
        .set_members_at(&Path::parse("SEM_IND.REST"))
        .unwrap_or_default();
    let mut kinds = Vec::new();
    for m in members {
        let kind = match m.sort() {
            "rel" => PredKind::Base(
                m.atom_at(&Path::parse("RELN"))
                    .ok_or("rel without RELN")?
                    .to_string(),
            ),
            "lf" => PredKind::Lf(
                LexicalFunction::parse_unchecked(
                    m.atom_at(&Path::parse("FN")).ok_or("lf without FN")?,
                )
                .map_err(|e| e.to_string())?,
            ),
            other => return Err(format!("unexpected predication sort `{other}`")),
        };
        kinds.push(kind);
    }
    Ok(SemIndex::from_kinds(Variable(0), kinds))
}

/// Language tag used on both sides of an LF sign.
pub const ANY_LANG: &str = "*";

/// Paired source/target skeletons over one shared variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilingualSign {
    pub src_lang: String,
    pub src: SemIndex,
    pub tgt_lang: String,
    pub tgt: SemIndex,
    pub span: Span,
}

impl BilingualSign {
    pub fn base(
        src_lang: impl Into<String>,
        src_pred: impl Into<String>,
        tgt_lang: impl Into<String>,
        tgt_pred: impl Into<String>,
    ) -> Self {
        BilingualSign {
            src_lang: src_lang.into(),
            src: SemIndex::from_kinds(Variable(0), [PredKind::Base(src_pred.into())]),
            tgt_lang: tgt_lang.into(),
            tgt: SemIndex::from_kinds(Variable(0), [PredKind::Base(tgt_pred.into())]),
            span: Span::memory(),
        }
    }

    pub fn lf(src: LexicalFunction, tgt: LexicalFunction) -> Self {
        BilingualSign {
            src_lang: ANY_LANG.into(),
            src: SemIndex::from_kinds(Variable(0), [PredKind::Lf(src)]),
            tgt_lang: ANY_LANG.into(),
            tgt: SemIndex::from_kinds(Variable(0), [PredKind::Lf(tgt)]),
            span: Span::memory(),
        }
    }

    pub fn is_lf_sign(&self) -> bool {
        self.src.lfs().next().is_some() || self.tgt.lfs().next().is_some()
    }

    /// `(src-pred, tgt-pred)` for a well-formed base sign.
    pub fn base_pair(&self) -> Option<(&str, &str)> {
        fn single(s: &SemIndex) -> Option<&str> {
            let mut it = s.kinds();
            match (it.next(), it.next()) {
                (Some(PredKind::Base(p)), None) => Some(p),
                _ => None,
            }
        }
        Some((single(&self.src)?, single(&self.tgt)?))
    }

    pub fn lf_pair(&self) -> Option<(&LexicalFunction, &LexicalFunction)> {
        fn single(s: &SemIndex) -> Option<&LexicalFunction> {
            let mut it = s.kinds();
            match (it.next(), it.next()) {
                (Some(PredKind::Lf(lf)), None) => Some(lf),
                _ => None,
            }
        }
        Some((single(&self.src)?, single(&self.tgt)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avm::struct_equal;

    #[test]
    fn criticism_display_shape() {
        let mut e = LexEntry::new(
            "en:criticism".parse().unwrap(),
            "criticism",
            Category::N,
            "criticism",
        );
        e.colls.push(CollocateSubentry {
            super_ref: "en:strong".parse().unwrap(),
            sem: SemIndex::from_kinds(Variable(0), [PredKind::Lf(LexicalFunction::plain("Magn"))]),
            position: Position::PreHeadAdjunct,
            form: None,
            link: None,
            base_form: None,
            colls: Vec::new(),
            span: Span::memory(),
        });
        let fs = e.to_fs();
        assert_eq!(fs.atom_at(&Path::parse("PHON")), Some("criticism"));
        // the collocate's variable is the base's
        let var = fs.path_node(&Path::parse("SEM_IND.VAR")).unwrap();
        let NodeKind::Set(colls) = &fs.node(fs.path_node(&Path::parse("COLLS")).unwrap()).kind
        else {
            panic!("COLLS is a set");
        };
        let sub = fs.subgraph(colls[0]);
        assert_eq!(sub.atom_at(&Path::parse("SUPER")), Some("en:strong"));
        let NodeKind::Complex(m) = &fs.node(colls[0]).kind else {
            panic!()
        };
        let NodeKind::Complex(si) = &fs.node(m["SEM_IND"]).kind else {
            panic!()
        };
        assert_eq!(si["VAR"], var);

        let back = LexEntry::from_fs(&fs).unwrap();
        assert_eq!(back.sem, e.sem);
        assert!(struct_equal(&back.to_fs(), &fs.without_feature("COLLS")));
    }

    #[test]
    fn ids_parse() {
        assert_eq!(
            "nl:sleutelbos".parse::<EntryId>().unwrap(),
            EntryId::new("nl", "sleutelbos")
        );
        assert!("sleutelbos".parse::<EntryId>().is_err());
    }
}
