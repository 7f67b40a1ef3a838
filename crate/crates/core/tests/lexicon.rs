mod support;

use lexfun::avm::{struct_equal, FeatureStructure, Path};
use lexfun::lexicon::{load_lexicon, load_sources, Diagnostic, EntryId, Lexicon, Source};
use lexfun::{LexicalFunction, QualiaRole};
use support::{fixture_sources, fixtures};

const PREAMBLE: &str = r#"
(lfs Magn Oper Mult Bon)
(rule head-adjunct head-right (skip))
(rule head-complement head-left (skip "of" "a"))
"#;

fn codes(text: &str) -> Vec<String> {
    let (_, diags) = Lexicon::check_sources(&[Source::new("t.lex", format!("{PREAMBLE}{text}"))]);
    diags.iter().map(|d| d.code.to_string()).collect()
}

fn id(s: &str) -> EntryId {
    let (lang, name) = s.split_once(':').unwrap();
    EntryId::new(lang, name)
}

#[test]
fn fixtures_load_clean() {
    let (lex, diags) = Lexicon::check_sources(&fixture_sources());
    assert!(diags.is_empty(), "{diags:?}");
    assert!(!lex.is_empty());
    let criticism = lex.entry(&id("en:criticism")).unwrap();
    let magn: Vec<_> = criticism
        .colls
        .iter()
        .filter(|c| c.lf() == Some(&LexicalFunction::plain("Magn")))
        .collect();
    assert_eq!(magn.len(), 1);
    assert_eq!(magn[0].super_ref, id("en:strong"));
}

#[test]
fn empty_file_is_an_empty_lexicon() {
    let lex = load_lexicon("").unwrap();
    assert!(lex.is_empty());
    assert!(lex.validate().is_empty());
}

#[test]
fn dangling_super_is_reported_at_its_line() {
    let text = "(entry (id en:smoker) (phon \"smoker\") (cat N) (sem (pred smoker)))\n\
                (coll (base en:smoker) (super en:hefty) (lf Magn) (pos pre))\n";
    let err = load_sources(&[Source::new("d.lex", text)]).unwrap_err();
    let err: Vec<&Diagnostic> = err.iter().filter(|d| d.is_error()).collect();
    assert_eq!(err.len(), 1);
    assert_eq!(err[0].code.to_string(), "DANGLING_REF");
    assert_eq!(err[0].span.line, 2);
    assert!(
        err[0]
            .to_string()
            .starts_with("error DANGLING_REF d.lex:2:"),
        "{}",
        err[0]
    );
}

#[test]
fn structural_errors() {
    assert_eq!(
        codes("(bi-lf (src Magn) (tgt Oper))"),
        ["LF_SIGN_NOT_IDENTITY"]
    );
    let nested = r#"
(entry (id en:smoker) (phon "smoker") (cat N) (sem (pred smoker)))
(entry (id en:heavy) (phon "heavy") (cat A) (sem (pred heavy)))
(coll (base en:smoker) (super en:heavy) (lf Magn) (pos pre)
      (colls (coll (super en:heavy) (lf Magn) (pos pre))))
"#;
    assert_eq!(codes(nested), ["NESTED_COLLS"]);
    let two = r#"
(entry (id en:smoker) (phon "smoker") (cat N) (sem (pred smoker)))
(entry (id en:heavy) (phon "heavy") (cat A) (sem (pred heavy)))
(coll (base en:smoker) (super en:heavy) (lf Magn Bon) (pos pre))
"#;
    assert_eq!(codes(two), ["COLL_LF_COUNT"]);
    let dup = r#"
(entry (id en:smoker) (phon "smoker") (cat N) (sem (pred smoker)))
(entry (id en:smoker) (phon "smoker") (cat N) (sem (pred smoker)))
"#;
    assert_eq!(codes(dup), ["DUPLICATE_ID"]);
}

#[test]
fn corrupt_fixtures_carry_one_code_each() {
    for (file, code) in [
        ("dangling_super.lex", "DANGLING_REF"),
        ("unknown_lf.lex", "UNKNOWN_LF"),
        ("merged_base_missing.lex", "MERGED_BASE_MISSING"),
    ] {
        let path = support::fixture_dir().join("corrupt").join(file);
        let src = Source::new(file, std::fs::read_to_string(path).unwrap());
        let (_, diags) = Lexicon::check_sources(&[src]);
        let got: Vec<&Diagnostic> = diags.iter().filter(|d| d.is_error()).collect();
        assert_eq!(got.len(), 1, "{file}: {diags:?}");
        assert_eq!(got[0].code.to_string(), code, "{file}");
    }
}

#[test]
fn resolved_collocates_take_the_base_variable() {
    let lex = fixtures();
    for (base, collocate) in [("en:criticism", "strong"), ("en:smoker", "heavy")] {
        let b = lex.entry(&id(base)).unwrap();
        let sub = b
            .colls
            .iter()
            .find(|c| c.lf().is_some_and(|l| l.name == "Magn"))
            .unwrap();
        let r = lex.resolve_collocate(b, sub).unwrap();
        assert_eq!(r.phon, collocate);
        assert_eq!(r.sem.var(), b.sem.var());
        assert_eq!(r.sem.to_string(), "Magn(x)");
        let phon = r.to_fs().path_value(&Path::parse("PHON")).unwrap();
        assert!(struct_equal(&phon, &FeatureStructure::atom(collocate)));
    }
}

#[test]
fn apply_lf_overgenerates_and_subscripts_narrow() {
    let lex = fixtures();
    let oppose = lex.entry(&id("en:oppose")).unwrap();
    let magn = lex.apply_lf(&LexicalFunction::plain("Magn"), oppose);
    let words: Vec<&str> = magn.iter().map(|c| c.entry.phon.as_str()).collect();
    assert_eq!(
        words,
        [
            "adamantly",
            "bitterly",
            "consistently",
            "deeply",
            "resolutely",
            "steadfastly",
            "strongly",
            "vehemently",
            "vigorously"
        ]
    );

    let lecture = lex.entry(&id("en:lecture")).unwrap();
    let plain: Vec<String> = lex
        .apply_lf(&LexicalFunction::plain("Bon"), lecture)
        .iter()
        .map(|c| c.entry.phon.clone())
        .collect();
    assert_eq!(plain, ["informative", "clear"]);
    for (role, word) in [
        (QualiaRole::Const, "informative"),
        (QualiaRole::Agent, "clear"),
    ] {
        let sub = lex.apply_lf(&LexicalFunction::with_subscript("Bon", role), lecture);
        assert_eq!(sub.len(), 1);
        assert_eq!(sub[0].entry.phon, word);
        assert!(plain.contains(&sub[0].entry.phon));
    }
    assert!(lex
        .apply_lf(&LexicalFunction::plain("Oper"), lecture)
        .is_empty());
}

#[test]
fn signs_map_both_ways() {
    let lex = fixtures();
    assert_eq!(lex.sign_target("en", "fr", "smoker"), Some("fumeur"));
    assert_eq!(lex.sign_target("fr", "en", "fumeur"), Some("smoker"));
    assert_eq!(lex.sign_target("en", "de", "strong"), Some("stark"));
    assert_eq!(lex.sign_target("en", "nl", "smoker"), None);
    assert!(lex.lf_sign("Magn").is_some());
}

#[test]
fn serialization_is_a_fixpoint() {
    let lex = fixtures();
    let once = lex.to_string();
    let again = load_lexicon(&once).unwrap_or_else(|d| panic!("{d:?}\n{once}"));
    assert_eq!(again.to_string(), once);
    assert_eq!(again.entries().count(), lex.entries().count());
    assert_eq!(again.signs().len(), lex.signs().len());
    for e in lex.entries() {
        let f = again.entry(&e.id).unwrap();
        assert_eq!(
            (&e.phon, e.cat, &e.sem, e.colls.len()),
            (&f.phon, f.cat, &f.sem, f.colls.len())
        );
    }
}

#[test]
fn entry_feature_structure_round_trip() {
    let lex = fixtures();
    for e in lex.entries() {
        let back = lexfun::LexEntry::from_fs(&e.to_fs()).unwrap();
        assert_eq!(
            (&back.phon, back.cat, &back.sem),
            (&e.phon, e.cat, &e.sem),
            "{}",
            e.id
        );
    }
}
