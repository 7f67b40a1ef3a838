//! Binary phrase rules declared in the lexicon preamble.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    HeadAdjunct,
    HeadComplement,
}

impl RuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::HeadAdjunct => "head-adjunct",
            RuleKind::HeadComplement => "head-complement",
        }
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "head-adjunct" => Ok(RuleKind::HeadAdjunct),
            "head-complement" => Ok(RuleKind::HeadComplement),
            _ => Err(format!("unknown rule kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeadSide {
    Left,
    Right,
}

impl HeadSide {
    pub fn as_str(self) -> &'static str {
        match self {
            HeadSide::Left => "head-left",
            HeadSide::Right => "head-right",
        }
    }
}

impl FromStr for HeadSide {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "head-left" => Ok(HeadSide::Left),
            "head-right" => Ok(HeadSide::Right),
            _ => Err(format!("unknown head side `{s}`")),
        }
    }
}

/// Where a collocate sits relative to its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    PreHeadAdjunct,
    PostHeadAdjunct,
    SupportVerbHead,
    QuantityHead,
}

impl Position {
    pub const ALL: [Position; 4] = [
        Position::PreHeadAdjunct,
        Position::PostHeadAdjunct,
        Position::SupportVerbHead,
        Position::QuantityHead,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Position::PreHeadAdjunct => "pre",
            Position::PostHeadAdjunct => "post",
            Position::SupportVerbHead => "support",
            Position::QuantityHead => "quantity",
        }
    }

    /// The rule a collocate in this position combines by.
    pub fn rule(self) -> (RuleKind, HeadSide) {
        match self {
            Position::PreHeadAdjunct => (RuleKind::HeadAdjunct, HeadSide::Right),
            Position::PostHeadAdjunct => (RuleKind::HeadAdjunct, HeadSide::Left),
            Position::SupportVerbHead | Position::QuantityHead => {
                (RuleKind::HeadComplement, HeadSide::Left)
            }
        }
    }

    pub fn is_adjunct(self) -> bool {
        matches!(self, Position::PreHeadAdjunct | Position::PostHeadAdjunct)
    }
}

impl FromStr for Position {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pre" | "pre-head-adjunct" => Ok(Position::PreHeadAdjunct),
            "post" | "post-head-adjunct" => Ok(Position::PostHeadAdjunct),
            "support" | "support-verb-head" => Ok(Position::SupportVerbHead),
            "quantity" | "quantity-head" => Ok(Position::QuantityHead),
            _ => Err(format!("unknown position `{s}`")),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseRule {
    pub kind: RuleKind,
    pub head_side: HeadSide,
    /// Function words that may stand between head and dependent.
    pub skip: BTreeSet<String>,
}

impl PhraseRule {
    pub fn new(kind: RuleKind, head_side: HeadSide) -> Self {
        PhraseRule {
            kind,
            head_side,
            skip: BTreeSet::new(),
        }
    }

    pub fn with_skip<S: Into<String>>(mut self, words: impl IntoIterator<Item = S>) -> Self {
        self.skip.extend(words.into_iter().map(Into::into));
        self
    }
}

impl fmt::Display for PhraseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(rule {} {} (skip",
            self.kind.as_str(),
            self.head_side.as_str()
        )?;
        for w in &self.skip {
            write!(f, " {}", crate::lexicon::sexpr::quote(w))?;
        }
        write!(f, "))")
    }
}

/// The rule inventory. One rule per (kind, head side); redeclaring a rule
/// adds to its skip set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grammar {
    rules: Vec<PhraseRule>,
}

impl Grammar {
    pub fn new(rules: impl IntoIterator<Item = PhraseRule>) -> Self {
        let mut g = Grammar::default();
        for r in rules {
            g.add(r);
        }
        g
    }

    pub fn add(&mut self, rule: PhraseRule) {
        match self
            .rules
            .iter_mut()
            .find(|r| r.kind == rule.kind && r.head_side == rule.head_side)
        {
            Some(existing) => existing.skip.extend(rule.skip),
            None => self.rules.push(rule),
        }
    }

    pub fn rules(&self) -> &[PhraseRule] {
        &self.rules
    }

    pub fn rule(&self, kind: RuleKind, side: HeadSide) -> Option<&PhraseRule> {
        self.rules
            .iter()
            .find(|r| r.kind == kind && r.head_side == side)
    }

    pub fn rule_for(&self, position: Position) -> Option<&PhraseRule> {
        let (kind, side) = position.rule();
        self.rule(kind, side)
    }

    pub fn is_skippable(&self, word: &str) -> bool {
        self.rules.iter().any(|r| r.skip.contains(word))
    }
}
