//! One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use lexfun::avm::{struct_equal, subsumes, unify, FeatureStructure};
use lexfun::lexicon::{load_lexicon, Lexicon};
use lexfun::{
    alpha_equiv, default_overwrite, transfer, LexicalFunction, PredKind, QualiaRole, SemIndex,
    Variable,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::{fixture_dir, fixtures, oracle_unify, random_fs, random_fs_over, sorts};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn lexfun(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_lexfun"))
        .args(args)
        .env_remove("LF_TRANSFER_LEXICON_PATH")
        .output()
        .expect("run lexfun");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn fixture_arg() -> String {
    fixture_dir().display().to_string()
}

fn translate(from: &str, to: &str, extra: &[&str], phrase: &str) -> Run {
    let lex = fixture_arg();
    let mut args = vec!["translate", "--from", from, "--to", to, "--lexicon", &lex];
    args.extend(extra);
    args.extend(phrase.split_whitespace());
    lexfun(&args)
}

fn generate(lang: &str, sem: &str) -> Run {
    lexfun(&[
        "generate",
        "--lang",
        lang,
        "--sem",
        sem,
        "--lexicon",
        &fixture_arg(),
    ])
}

fn expect_stdout(run: &Run, want: &str) -> Outcome {
    if run.code == 0 && run.stdout == want {
        Ok(format!("{:?}", want.trim_end()))
    } else {
        Err(format!(
            "exit {} stdout {:?} stderr {:?}",
            run.code, run.stdout, run.stderr
        ))
    }
}

fn c1() -> Outcome {
    let run = translate("en", "fr", &["--trace"], "heavy smoker");
    expect_stdout(
        &run,
        "1: heavy smoker\n2: Magn(smoker)\n3: Magn(fumeur)\n4: grand fumeur\ngrand fumeur\n",
    )
}

fn c2() -> Outcome {
    expect_stdout(
        &translate("en", "de", &[], "heavy smoker"),
        "starker Raucher\n",
    )
}

fn c3() -> Outcome {
    let run = translate("en", "fr", &["--trace"], "heavy box");
    if run.stdout.contains("grand") || !run.stderr.contains("[literal") {
        return Err(format!("stdout {:?} stderr {:?}", run.stdout, run.stderr));
    }
    expect_stdout(&translate("en", "fr", &[], "heavy box"), "boite lourde\n")?;
    let an = lexfun(&[
        "analyze",
        "--lang",
        "en",
        "--lexicon",
        &fixture_arg(),
        "heavy",
        "box",
    ]);
    if an.code != 0 || an.stdout != "[literal] box(x),heavy(x)\n" {
        return Err(format!("analyze: exit {} {:?}", an.code, an.stdout));
    }
    Ok("\"boite lourde\" via literal; analyze has no collocational reading".into())
}

fn c4() -> Outcome {
    let run = translate("en", "nl", &["--trace"], "bunch of keys");
    if !run.stderr.contains("generate: \"sleutelbos\" [merged") {
        return Err(format!("trace {:?}", run.stderr));
    }
    expect_stdout(&translate("en", "nl", &[], "bunch of keys"), "sleutelbos\n")?;
    Ok("\"sleutelbos\" via merged strategy".into())
}

fn c5() -> Outcome {
    expect_stdout(
        &translate("en", "fr", &[], "commit a crime"),
        "commettre un crime\n",
    )
}

fn c6() -> Outcome {
    let run = generate("en", "oppose(x),Magn(x)");
    let lines: Vec<&str> = run.stdout.lines().collect();
    let mut sorted = lines.clone();
    sorted.sort();
    if run.code == 0 && lines.len() == 9 && lines == sorted && lines[0] == "adamantly oppose" {
        Ok("9 candidates, lexicographic".into())
    } else {
        Err(format!("exit {} {:?}", run.code, lines))
    }
}

fn c7() -> Outcome {
    expect_stdout(
        &generate("en", "lecture(x),Bon_Const(x)"),
        "informative lecture\n",
    )?;
    expect_stdout(
        &generate("en", "lecture(x),Bon_Agent(x)"),
        "clear lecture\n",
    )?;
    expect_stdout(
        &generate("en", "lecture(x),Bon(x)"),
        "informative lecture\nclear lecture\n",
    )?;
    Ok("Bon_Const, Bon_Agent, Bon".into())
}

fn c8() -> Outcome {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut cases = 0usize;
    let mut violations = Vec::new();
    let mut fail = |what: &str, detail: String| {
        if violations.len() < 3 {
            violations.push(format!("{what}: {detail}"));
        }
    };
    let mut assoc_checked = 0usize;
    while cases < 10_000 {
        let a = random_fs(&mut rng, 6);
        let b = random_fs(&mut rng, 6);
        let c = random_fs(&mut rng, 6);
        cases += 1;
        let ab = unify(&a, &b, &h).ok();
        let ba = unify(&b, &a, &h).ok();
        match (&ab, oracle_unify(&a, &b)) {
            (Some(g), Some(w)) if struct_equal(g, &w) => {}
            (None, None) => {}
            _ => fail("oracle", format!("{a} / {b}")),
        }
        match unify(&a, &a, &h) {
            Ok(aa) if struct_equal(&aa, &a) => {}
            _ => fail("idempotence", a.to_string()),
        }
        match (&ab, &ba) {
            (Some(x), Some(y)) if struct_equal(x, y) => {}
            (None, None) => {}
            _ => fail("commutativity", format!("{a} / {b}")),
        }
        if let Some(u) = &ab {
            if !subsumes(&a, u, &h) || !subsumes(&b, u, &h) {
                fail("monotonicity", format!("{a} / {b}"));
            }
            if let (Ok(bc), Ok(_)) = (unify(&b, &c, &h), unify(&a, &c, &h)) {
                assoc_checked += 1;
                match (unify(u, &c, &h), unify(&a, &bc, &h)) {
                    (Ok(x), Ok(y)) if struct_equal(&x, &y) => {}
                    (Err(_), Err(_)) => {}
                    _ => fail("associativity", format!("{a} / {b} / {c}")),
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(format!(
            "{cases} cases ({assoc_checked} associativity triples), 0 violations"
        ))
    } else {
        Err(violations.join("; "))
    }
}

fn c9() -> Outcome {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(0x0de7);
    let mut violations = Vec::new();
    let pairs = 1_000;
    for _ in 0..pairs {
        let x = random_fs(&mut rng, 6);
        let y = random_fs(&mut rng, 6);
        if !struct_equal(&default_overwrite(&x, &FeatureStructure::top(), &h), &x) {
            violations.push(format!("identity: {x}"));
        }
        let once = default_overwrite(&x, &y, &h);
        if !struct_equal(&default_overwrite(&once, &y, &h), &once) {
            violations.push(format!("right absorption: {x} / {y}"));
        }
    }
    let mut disjoint = 0;
    while disjoint < pairs {
        let x = random_fs_over(&mut rng, 6, &["F", "G", "H"]);
        let y = random_fs_over(&mut rng, 6, &["I", "J", "K"]);
        let Ok(u) = unify(&x, &y, &h) else { continue };
        disjoint += 1;
        if !struct_equal(&default_overwrite(&x, &y, &h), &u) {
            violations.push(format!("agreement: {x} / {y}"));
        }
    }
    if violations.is_empty() {
        Ok(format!("{pairs} pairs per law, 0 violations"))
    } else {
        Err(format!(
            "{} violations, first {}",
            violations.len(),
            violations[0]
        ))
    }
}

fn lf_multiset(s: &SemIndex) -> BTreeMap<LexicalFunction, usize> {
    let mut m = BTreeMap::new();
    for lf in s.lfs() {
        *m.entry(lf.clone()).or_default() += 1;
    }
    m
}

fn c10() -> Outcome {
    let lex = fixtures();
    let preds: Vec<String> = lex
        .signs()
        .iter()
        .filter(|s| s.src_lang == "en" && s.tgt_lang == "fr")
        .filter_map(|s| s.base_pair().map(|(p, _)| p.to_string()))
        .collect();
    let names: Vec<String> = lex.registry().iter().map(|i| i.name.clone()).collect();
    let roles = [
        None,
        Some(QualiaRole::Const),
        Some(QualiaRole::Agent),
        Some(QualiaRole::Form),
        Some(QualiaRole::Telic),
    ];
    let mut rng = StdRng::seed_from_u64(0x1f);
    for i in 0..1_000 {
        let mut kinds = Vec::new();
        for _ in 0..rng.random_range(1..=2) {
            kinds.push(PredKind::Base(
                preds[rng.random_range(0..preds.len())].clone(),
            ));
        }
        for _ in 0..rng.random_range(0..=3) {
            kinds.push(PredKind::Lf(LexicalFunction {
                merged: rng.random_bool(0.2),
                subscript: roles[rng.random_range(0..roles.len())],
                ..LexicalFunction::plain(names[rng.random_range(0..names.len())].clone())
            }));
        }
        let sem = SemIndex::from_kinds(Variable(rng.random_range(0..4)), kinds);
        let fr = transfer(&sem, "en", "fr", &lex).map_err(|e| format!("case {i} {sem}: {e}"))?;
        if lf_multiset(&fr) != lf_multiset(&sem) {
            return Err(format!("case {i}: {sem} -> {fr}"));
        }
        let en = transfer(&fr, "fr", "en", &lex).map_err(|e| format!("case {i} {fr}: {e}"))?;
        if !alpha_equiv(&en, &sem) {
            return Err(format!("case {i}: {sem} -> {fr} -> {en}"));
        }
    }
    Ok(format!(
        "1000 sems over {} en-fr signs, 0 violations",
        preds.len()
    ))
}

fn c11() -> Outcome {
    let lex: Lexicon = fixtures();
    let once = lex.to_string();
    let again = load_lexicon(&once).map_err(|d| format!("reload: {d:?}"))?;
    if again.to_string() != once {
        return Err("serialization is not a fixpoint".into());
    }
    let ok = lexfun(&["validate", "--lexicon", &fixture_arg()]);
    if ok.code != 0 || !ok.stdout.is_empty() {
        return Err(format!(
            "validate fixtures: exit {} {:?}",
            ok.code, ok.stdout
        ));
    }
    for (file, code) in [
        ("dangling_super.lex", "DANGLING_REF"),
        ("unknown_lf.lex", "UNKNOWN_LF"),
        ("merged_base_missing.lex", "MERGED_BASE_MISSING"),
    ] {
        let path = fixture_dir()
            .join("corrupt")
            .join(file)
            .display()
            .to_string();
        let run = lexfun(&["validate", "--lexicon", &path]);
        let errors: Vec<&str> = run
            .stdout
            .lines()
            .filter(|l| l.starts_with("error "))
            .collect();
        if run.code != 1 || errors.len() != 1 || !errors[0].starts_with(&format!("error {code} ")) {
            return Err(format!("{file}: exit {} {:?}", run.code, run.stdout));
        }
    }
    Ok("fixpoint; validate 0 on fixtures, 1 with the expected code on 3 corrupt files".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("pipeline reproduction", c1),
        ("German variant", c2),
        ("literal contrast", c3),
        ("compound divergence", c4),
        ("support verb", c5),
        ("overgenerality", c6),
        ("qualia precision", c7),
        ("unifier properties", c8),
        ("overwrite laws", c9),
        ("LF preservation", c10),
        ("lexicon round trip", c11),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
