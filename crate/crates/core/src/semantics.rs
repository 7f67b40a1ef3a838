//! Semantic indices, predications and the lexical-function registry.
//!
//! A [`SemIndex`] is one variable plus a set of one-place predications on
//! it, e.g. `{smoker(x), Magn(x)}`. Lexical functions appear as ordinary
//! predications and pass through transfer untouched.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Variable(pub u32);

/// The four qualia roles usable as LF subscripts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QualiaRole {
    Const,
    Agent,
    Form,
    Telic,
}

impl QualiaRole {
    pub const ALL: [QualiaRole; 4] = [
        QualiaRole::Const,
        QualiaRole::Agent,
        QualiaRole::Form,
        QualiaRole::Telic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QualiaRole::Const => "Const",
            QualiaRole::Agent => "Agent",
            QualiaRole::Form => "Form",
            QualiaRole::Telic => "Telic",
        }
    }
}

impl FromStr for QualiaRole {
    type Err = SemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QualiaRole::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| SemError::UnknownRole(s.to_string()))
    }
}

impl fmt::Display for QualiaRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("lexical function `{0}` is not registered")]
    UnknownLf(String),
    #[error("unknown qualia role `{0}`")]
    UnknownRole(String),
    #[error("predication `{0}` is not over the index variable")]
    StrayVariable(String),
    #[error("malformed predication text `{0}`")]
    Syntax(String),
    #[error("predications use more than one variable: `{0}` and `{1}`")]
    MixedVariables(String, String),
}

/// A lexical function name with optional qualia subscript and merged flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexicalFunction {
    pub name: String,
    pub subscript: Option<QualiaRole>,
    pub merged: bool,
}

impl LexicalFunction {
    pub fn plain(name: impl Into<String>) -> Self {
        LexicalFunction {
            name: name.into(),
            subscript: None,
            merged: false,
        }
    }

    pub fn with_subscript(name: impl Into<String>, role: QualiaRole) -> Self {
        LexicalFunction {
            subscript: Some(role),
            ..Self::plain(name)
        }
    }

    pub fn merged(name: impl Into<String>) -> Self {
        LexicalFunction {
            merged: true,
            ..Self::plain(name)
        }
    }

    /// Same function with the merged flag cleared.
    pub fn unmerged(&self) -> Self {
        LexicalFunction {
            merged: false,
            ..self.clone()
        }
    }

    /// Does a lexicon value `self` answer the query `query`? A plain query
    /// matches any subscript of the same name; a subscripted query only the
    /// identical subscript.
    pub fn satisfies(&self, query: &LexicalFunction) -> bool {
        self.name == query.name
            && self.merged == query.merged
            && (query.subscript.is_none() || query.subscript == self.subscript)
    }

    /// Parses `[//]Name[_Role]` without consulting a registry.
    pub fn parse_unchecked(text: &str) -> Result<Self, SemError> {
        let (merged, rest) = match text.strip_prefix("//") {
            Some(r) => (true, r),
            None => (false, text),
        };
        let (name, subscript) = match rest.split_once('_') {
            Some((n, r)) => (n, Some(r.parse::<QualiaRole>()?)),
            None => (rest, None),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric()) {
            return Err(SemError::Syntax(text.to_string()));
        }
        Ok(LexicalFunction {
            name: name.to_string(),
            subscript,
            merged,
        })
    }
}

/// Canonical `[//]Name[_Role]` text.
impl fmt::Display for LexicalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.merged {
            f.write_str("//")?;
        }
        f.write_str(&self.name)?;
        if let Some(r) = self.subscript {
            write!(f, "_{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfInfo {
    pub name: String,
    pub doc: Option<String>,
}

/// Declared lexical functions, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfRegistry {
    lfs: Vec<LfInfo>,
}

impl LfRegistry {
    pub const SHIPPED: [(&'static str, &'static str); 4] = [
        ("Magn", "intensifier"),
        ("Oper", "support verb"),
        ("Bon", "standard praise"),
        ("Mult", "collective"),
    ];

    pub fn empty() -> Self {
        LfRegistry { lfs: Vec::new() }
    }

    /// Registers `name`; re-declaring is a no-op.
    pub fn declare(&mut self, name: impl Into<String>, doc: Option<String>) {
        let name = name.into();
        if !self.contains(&name) {
            self.lfs.push(LfInfo { name, doc });
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lfs.iter().any(|i| i.name == name)
    }

    /// Position in declaration order.
    pub fn rank(&self, name: &str) -> Option<usize> {
        self.lfs.iter().position(|i| i.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LfInfo> {
        self.lfs.iter()
    }

    pub fn check(&self, lf: &LexicalFunction) -> Result<(), SemError> {
        if self.contains(&lf.name) {
            Ok(())
        } else {
            Err(SemError::UnknownLf(lf.name.clone()))
        }
    }

    pub fn parse_lf(&self, text: &str) -> Result<LexicalFunction, SemError> {
        let lf = LexicalFunction::parse_unchecked(text)?;
        self.check(&lf)?;
        Ok(lf)
    }
}

impl Default for LfRegistry {
    fn default() -> Self {
        let mut r = LfRegistry::empty();
        for (name, doc) in Self::SHIPPED {
            r.declare(name, Some(doc.to_string()));
        }
        r
    }
}

/// Canonical text for a registered LF, e.g. `Magn`, `Bon_Const`, `//Mult`.
pub fn render_lf(registry: &LfRegistry, lf: &LexicalFunction) -> Result<String, SemError> {
    registry.check(lf)?;
    Ok(lf.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredKind {
    Base(String),
    Lf(LexicalFunction),
}

impl fmt::Display for PredKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredKind::Base(p) => f.write_str(p),
            PredKind::Lf(lf) => lf.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Predication {
    pub kind: PredKind,
    pub arg: Variable,
}

impl Predication {
    pub fn base(pred: impl Into<String>, arg: Variable) -> Self {
        Predication {
            kind: PredKind::Base(pred.into()),
            arg,
        }
    }

    pub fn lf(lf: LexicalFunction, arg: Variable) -> Self {
        Predication {
            kind: PredKind::Lf(lf),
            arg,
        }
    }
}

/// A variable and the predications restricting it.
///
/// Every predication is over `var`; the set keeps at most one copy of each.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemIndex {
    var: Variable,
    rest: BTreeSet<Predication>,
}

impl SemIndex {
    pub fn empty(var: Variable) -> Self {
        SemIndex {
            var,
            rest: BTreeSet::new(),
        }
    }

    pub fn new(
        var: Variable,
        rest: impl IntoIterator<Item = Predication>,
    ) -> Result<Self, SemError> {
        let rest: BTreeSet<Predication> = rest.into_iter().collect();
        if let Some(p) = rest.iter().find(|p| p.arg != var) {
            return Err(SemError::StrayVariable(p.kind.to_string()));
        }
        Ok(SemIndex { var, rest })
    }

    /// Builds from predicate kinds, all over `var`.
    pub fn from_kinds(var: Variable, kinds: impl IntoIterator<Item = PredKind>) -> Self {
        SemIndex {
            var,
            rest: kinds
                .into_iter()
                .map(|kind| Predication { kind, arg: var })
                .collect(),
        }
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn rest(&self) -> &BTreeSet<Predication> {
        &self.rest
    }

    pub fn is_empty(&self) -> bool {
        self.rest.is_empty()
    }

    pub fn base_preds(&self) -> impl Iterator<Item = &str> {
        self.rest.iter().filter_map(|p| match &p.kind {
            PredKind::Base(b) => Some(b.as_str()),
            PredKind::Lf(_) => None,
        })
    }

    pub fn lfs(&self) -> impl Iterator<Item = &LexicalFunction> {
        self.rest.iter().filter_map(|p| match &p.kind {
            PredKind::Lf(lf) => Some(lf),
            PredKind::Base(_) => None,
        })
    }

    pub fn kinds(&self) -> impl Iterator<Item = &PredKind> {
        self.rest.iter().map(|p| &p.kind)
    }

    pub fn contains(&self, kind: &PredKind) -> bool {
        self.rest.contains(&Predication {
            kind: kind.clone(),
            arg: self.var,
        })
    }

    pub fn rename(&self, var: Variable) -> SemIndex {
        SemIndex::from_kinds(var, self.kinds().cloned())
    }

    /// Text used for pipeline stage traces: `Magn(smoker)` when there is a
    /// single base predicate, the canonical predication list otherwise.
    pub fn stage_text(&self) -> String {
        let bases: Vec<&str> = self.base_preds().collect();
        let lfs: Vec<&LexicalFunction> = self.lfs().collect();
        match (bases.as_slice(), lfs.is_empty()) {
            ([base], true) => base.to_string(),
            ([base], false) => lfs
                .iter()
                .map(|lf| format!("{lf}({base})"))
                .collect::<Vec<_>>()
                .join(","),
            _ => self.to_string(),
        }
    }

    /// Parses `pred(x),Magn(x)`. Names registered as LFs become LF
    /// predications; everything else is a base predicate.
    pub fn parse(text: &str, registry: &LfRegistry) -> Result<SemIndex, SemError> {
        let mut var_name: Option<String> = None;
        let mut kinds = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, rest) = part
                .split_once('(')
                .ok_or_else(|| SemError::Syntax(part.to_string()))?;
            let v = rest
                .strip_suffix(')')
                .map(str::trim)
                .filter(|v| !v.is_empty() && v.chars().all(|c| c.is_alphanumeric() || c == '_'))
                .ok_or_else(|| SemError::Syntax(part.to_string()))?;
            match &var_name {
                Some(prev) if prev != v => {
                    return Err(SemError::MixedVariables(prev.clone(), v.to_string()))
                }
                _ => var_name = Some(v.to_string()),
            }
            let name = name.trim();
            if name.is_empty() {
                return Err(SemError::Syntax(part.to_string()));
            }
            let lf_candidate = LexicalFunction::parse_unchecked(name);
            let kind = match lf_candidate {
                Ok(lf) if registry.contains(&lf.name) => PredKind::Lf(lf),
                Ok(lf) if lf.merged || lf.subscript.is_some() => {
                    return Err(SemError::UnknownLf(lf.name))
                }
                Err(e) if name.starts_with("//") => return Err(e),
                _ => PredKind::Base(name.to_string()),
            };
            kinds.push(kind);
        }
        Ok(SemIndex::from_kinds(Variable(0), kinds))
    }
}

/// Canonical predication text: `smoker(x),Magn(x)`. Base predicates come
/// first in name order, then LFs.
impl fmt::Display for SemIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.kinds().map(|k| format!("{k}(x)")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Union of two indices with `b`'s variable renamed to `a`'s.
pub fn sem_union(a: &SemIndex, b: &SemIndex) -> Result<SemIndex, SemError> {
    for s in [a, b] {
        if let Some(p) = s.rest.iter().find(|p| p.arg != s.var) {
            return Err(SemError::StrayVariable(p.kind.to_string()));
        }
    }
    Ok(SemIndex::from_kinds(
        a.var,
        a.kinds().chain(b.kinds()).cloned(),
    ))
}

/// True iff some renaming of variables makes the two indices equal.
pub fn alpha_equiv(a: &SemIndex, b: &SemIndex) -> bool {
    a.rest.len() == b.rest.len() && a.kinds().eq(b.kinds())
}
