//! Finite sort hierarchies with greatest-lower-bound lookup.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Name of the unique greatest element.
pub const TOP: &str = "top";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("sort `{0}` is declared as its own ancestor")]
    Cycle(String),
    #[error("sorts `{0}` and `{1}` have more than one maximal common subsort")]
    AmbiguousMeet(String, String),
    #[error("sort `top` cannot have parents")]
    TopHasParent,
}

/// A finite partial order of sort labels with `top` as greatest element.
///
/// Every pair of sorts has either a unique greatest lower bound or none;
/// [`SortHierarchy::new`] rejects declarations that break this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortHierarchy {
    // sort -> all ancestors including itself
    ancestors: BTreeMap<String, BTreeSet<String>>,
    // declared (child, parents) pairs, kept for serialization
    declared: Vec<(String, Vec<String>)>,
}

impl SortHierarchy {
    /// Builds a hierarchy from `(child, parents)` declarations. Sorts that
    /// only appear as parents are placed directly under `top`.
    pub fn new<I, S>(decls: I) -> Result<Self, SortError>
    where
        I: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut parents: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        parents.insert(TOP.to_string(), BTreeSet::new());
        let mut declared = Vec::new();
        for (child, ps) in decls {
            let child = child.into();
            let ps: Vec<String> = ps.into_iter().map(Into::into).collect();
            if child == TOP && !ps.is_empty() {
                return Err(SortError::TopHasParent);
            }
            for p in &ps {
                parents.entry(p.clone()).or_default();
            }
            parents
                .entry(child.clone())
                .or_default()
                .extend(ps.iter().cloned());
            declared.push((child, ps));
        }
        for (name, ps) in parents.iter_mut() {
            if name != TOP && ps.is_empty() {
                ps.insert(TOP.to_string());
            }
        }

        let mut ancestors = BTreeMap::new();
        for name in parents.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&String> = vec![name];
            while let Some(s) = stack.pop() {
                if !seen.insert(s.clone()) {
                    continue;
                }
                for p in &parents[s] {
                    if p == name {
                        return Err(SortError::Cycle(name.clone()));
                    }
                    stack.push(p);
                }
            }
            ancestors.insert(name.clone(), seen);
        }

        let h = SortHierarchy {
            ancestors,
            declared,
        };
        let names: Vec<&String> = h.ancestors.keys().collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                h.meet_checked(a, b)?;
            }
        }
        Ok(h)
    }

    /// The sorts every lexicon starts from.
    pub fn standard() -> Self {
        Self::new([
            ("sign", vec![TOP]),
            ("collocation", vec!["sign"]),
            ("collocate", vec!["sign"]),
            ("sem", vec![TOP]),
            ("index", vec![TOP]),
            ("predication", vec![TOP]),
            ("rel", vec!["predication"]),
            ("lf", vec!["predication"]),
            ("atom", vec![TOP]),
        ])
        .expect("standard hierarchy is well formed")
    }

    /// Merges extra declarations into this hierarchy.
    pub fn extend<I, S>(&self, decls: I) -> Result<Self, SortError>
    where
        I: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut all: Vec<(String, Vec<String>)> = self.declared.clone();
        all.extend(
            decls
                .into_iter()
                .map(|(c, ps)| (c.into(), ps.into_iter().map(Into::into).collect())),
        );
        Self::new(all)
    }

    pub fn contains(&self, sort: &str) -> bool {
        self.ancestors.contains_key(sort)
    }

    /// True iff `lower` is `upper` or one of its descendants.
    pub fn is_subsort(&self, lower: &str, upper: &str) -> bool {
        self.ancestors
            .get(lower)
            .is_some_and(|anc| anc.contains(upper))
    }

    /// Greatest lower bound of two sorts, if any.
    pub fn meet(&self, a: &str, b: &str) -> Option<String> {
        self.meet_checked(a, b).ok().flatten()
    }

    fn meet_checked(&self, a: &str, b: &str) -> Result<Option<String>, SortError> {
        if a == b {
            return Ok(self.contains(a).then(|| a.to_string()));
        }
        if self.is_subsort(a, b) {
            return Ok(Some(a.to_string()));
        }
        if self.is_subsort(b, a) {
            return Ok(Some(b.to_string()));
        }
        let common: Vec<&String> = self
            .ancestors
            .iter()
            .filter(|(_, anc)| anc.contains(a) && anc.contains(b))
            .map(|(s, _)| s)
            .collect();
        let maximal: Vec<&&String> = common
            .iter()
            .filter(|s| !common.iter().any(|t| t != *s && self.is_subsort(s, t)))
            .collect();
        match maximal.as_slice() {
            [] => Ok(None),
            [one] => Ok(Some((**one).clone())),
            _ => Err(SortError::AmbiguousMeet(a.to_string(), b.to_string())),
        }
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.ancestors.keys().map(String::as_str)
    }

    pub fn declarations(&self) -> &[(String, Vec<String>)] {
        &self.declared
    }
}

impl Default for SortHierarchy {
    fn default() -> Self {
        Self::standard()
    }
}

impl fmt::Display for SortHierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sorts")?;
        for (child, ps) in &self.declared {
            write!(f, " ({child}")?;
            for p in ps {
                write!(f, " {p}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}
