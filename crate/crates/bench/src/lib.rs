//! Fixture loading shared by the benchmarks.

use std::path::{Path, PathBuf};

use lexfun::lexicon::{load_sources, Lexicon, Source};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Loads every `*.lex` file directly under `dir`, in name order.
pub fn load_dir(dir: &Path) -> Lexicon {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("fixture directory")
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "lex"))
        .collect();
    files.sort();
    let sources: Vec<Source> = files
        .iter()
        .map(|p| {
            Source::new(
                p.display().to_string(),
                std::fs::read_to_string(p).expect("readable fixture"),
            )
        })
        .collect();
    match load_sources(&sources) {
        Ok((lex, _)) => lex,
        Err(diags) => panic!("{} fixture errors, first: {}", diags.len(), diags[0]),
    }
}

pub fn fixtures() -> Lexicon {
    load_dir(&fixture_dir())
}
