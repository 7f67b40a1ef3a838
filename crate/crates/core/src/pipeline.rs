//! Analysis, transfer and generation chained together.

use thiserror::Error;

use crate::analysis::{analyze, AnalysisError, Reading};
use crate::generation::{generate, GenerationError, Realization};
use crate::lexicon::Lexicon;
use crate::semantics::SemIndex;
use crate::transfer::{transfer, TransferError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Generation(#[from] GenerationError),
}

/// One source reading carried through to the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub reading: Reading,
    pub transferred: SemIndex,
    pub realizations: Vec<Realization>,
}

impl Translation {
    /// Stage lines `1: heavy smoker` .. `4: grand fumeur`.
    pub fn stages(&self) -> [String; 4] {
        let surfaces: Vec<&str> = self
            .realizations
            .iter()
            .map(|r| r.surface.as_str())
            .collect();
        [
            format!("1: {}", self.reading.tokens().join(" ")),
            format!("2: {}", self.reading.sem.stage_text()),
            format!("3: {}", self.transferred.stage_text()),
            format!("4: {}", surfaces.join(" | ")),
        ]
    }
}

pub fn translate_reading(
    reading: &Reading,
    src: &str,
    tgt: &str,
    lex: &Lexicon,
) -> Result<Translation, Error> {
    let transferred = transfer(&reading.sem, src, tgt, lex)?;
    let realizations = generate(&transferred, tgt, lex)?;
    Ok(Translation {
        reading: reading.clone(),
        transferred,
        realizations,
    })
}

/// Translates the best (first) reading of the phrase.
pub fn translate<S: AsRef<str>>(
    tokens: &[S],
    src: &str,
    tgt: &str,
    lex: &Lexicon,
) -> Result<Translation, Error> {
    let readings = analyze(tokens, src, lex)?;
    translate_reading(&readings[0], src, tgt, lex)
}
