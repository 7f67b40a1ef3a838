use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lexfun::lexicon::{load_sources, Diagnostic, Lexicon, Source};
use lexfun::{analyze, generate, translate_reading, AnalysisError, Error, SemIndex};

const ENV_PATH: &str = "LF_TRANSFER_LEXICON_PATH";

const EXIT_PARSE: u8 = 1;
const EXIT_SIGN: u8 = 2;
const EXIT_GAP: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_LEXICON: u8 = 65;

/// Collocation translation through lexical functions.
#[derive(Parser, Debug)]
#[command(name = "lexfun", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translate a phrase.
    Translate(TranslateArgs),
    /// Print the readings of a phrase.
    Analyze(AnalyzeArgs),
    /// Realize a semantic index such as "smoker(x),Magn(x)".
    Generate(GenerateArgs),
    /// Check lexicon files.
    Validate(LexiconArgs),
}

#[derive(Args, Debug)]
struct LexiconArgs {
    /// Lexicon file or directory of *.lex files; repeatable. Defaults to
    /// the paths in LF_TRANSFER_LEXICON_PATH.
    #[arg(long = "lexicon", value_name = "PATH")]
    lexicon: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    #[arg(long, value_name = "LANG")]
    from: String,
    #[arg(long, value_name = "LANG")]
    to: String,
    #[command(flatten)]
    lex: LexiconArgs,
    /// Print the pipeline stages.
    #[arg(long)]
    trace: bool,
    /// Translate every source reading, not just the first.
    #[arg(long)]
    all_readings: bool,
    #[arg(required = true, value_name = "WORD")]
    phrase: Vec<String>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long, value_name = "LANG")]
    lang: String,
    #[command(flatten)]
    lex: LexiconArgs,
    #[arg(required = true, value_name = "WORD")]
    phrase: Vec<String>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_name = "LANG")]
    lang: String,
    #[arg(long, value_name = "PREDICATIONS")]
    sem: String,
    #[command(flatten)]
    lex: LexiconArgs,
    /// Print realization records on stderr.
    #[arg(long)]
    trace: bool,
}

struct Failure {
    code: u8,
    message: Vec<String>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: vec![message.into()],
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = match cli.command {
        Command::Translate(a) => cmd_translate(a, &mut out),
        Command::Analyze(a) => cmd_analyze(a, &mut out),
        Command::Generate(a) => cmd_generate(a, &mut out),
        Command::Validate(a) => cmd_validate(a, &mut out),
    };
    let _ = out.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.message {
                eprintln!("{line}");
            }
            ExitCode::from(f.code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Analysis(AnalysisError::Composition(_)) => EXIT_PARSE,
        Error::Analysis(_) => EXIT_PARSE,
        Error::Transfer(_) => EXIT_SIGN,
        Error::Generation(_) => EXIT_GAP,
    }
}

fn io_fail(e: io::Error) -> Failure {
    Failure::new(74, format!("error: {e}"))
}

/// Expands directories into their *.lex files, sorted by name.
fn lexicon_files(args: &LexiconArgs) -> Result<Vec<PathBuf>, Failure> {
    let roots: Vec<PathBuf> = if args.lexicon.is_empty() {
        match std::env::var_os(ENV_PATH) {
            Some(v) if !v.is_empty() => std::env::split_paths(&v)
                .filter(|p| !p.as_os_str().is_empty())
                .collect(),
            _ => {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("error: no lexicon given; use --lexicon or set {ENV_PATH}"),
                ))
            }
        }
    } else {
        args.lexicon.clone()
    };
    let mut files = Vec::new();
    for root in roots {
        if root.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(&root)
                .map_err(|e| Failure::new(EXIT_LEXICON, format!("error: {}: {e}", root.display())))?
                .filter_map(|d| d.ok().map(|d| d.path()))
                .filter(|p| p.is_file() && p.extension() == Some(OsString::from("lex").as_os_str()))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(root);
        }
    }
    Ok(files)
}

fn read_sources(files: &[PathBuf]) -> Result<Vec<Source>, Failure> {
    files
        .iter()
        .map(|p| {
            std::fs::read_to_string(p)
                .map(|text| Source::new(display(p), text))
                .map_err(|e| Failure::new(EXIT_LEXICON, format!("error: {}: {e}", p.display())))
        })
        .collect()
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn load(args: &LexiconArgs) -> Result<Lexicon, Failure> {
    let sources = read_sources(&lexicon_files(args)?)?;
    match load_sources(&sources) {
        Ok((lex, warnings)) => {
            for w in warnings {
                eprintln!("{w}");
            }
            Ok(lex)
        }
        Err(diags) => Err(Failure {
            code: EXIT_LEXICON,
            message: diags.iter().map(Diagnostic::to_string).collect(),
        }),
    }
}

fn cmd_translate(a: TranslateArgs, out: &mut impl Write) -> Result<(), Failure> {
    let lex = load(&a.lex)?;
    let readings = analyze(&a.phrase, &a.from, &lex)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("error: {e}")))?;
    let chosen = if a.all_readings {
        &readings[..]
    } else {
        &readings[..1]
    };
    let mut first_err = None;
    let mut any_ok = false;
    for reading in chosen {
        if a.all_readings {
            writeln!(out, "# {reading}").map_err(io_fail)?;
        }
        match translate_reading(reading, &a.from, &a.to, &lex) {
            Ok(t) => {
                any_ok = true;
                if a.trace {
                    for line in t.stages() {
                        writeln!(out, "{line}").map_err(io_fail)?;
                    }
                    eprintln!("transfer: {}", t.transferred.stage_text());
                    for r in &t.realizations {
                        eprintln!("generate: {r}");
                    }
                }
                for r in &t.realizations {
                    writeln!(out, "{}", r.surface).map_err(io_fail)?;
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) if !any_ok => Err(Failure {
            code: exit_code(&e),
            message: Vec::new(),
        }),
        _ => Ok(()),
    }
}

fn cmd_analyze(a: AnalyzeArgs, out: &mut impl Write) -> Result<(), Failure> {
    let lex = load(&a.lex)?;
    let readings = analyze(&a.phrase, &a.lang, &lex)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("error: {e}")))?;
    for r in readings {
        writeln!(out, "{r}").map_err(io_fail)?;
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, out: &mut impl Write) -> Result<(), Failure> {
    let lex = load(&a.lex)?;
    let sem = SemIndex::parse(&a.sem, lex.registry())
        .map_err(|e| Failure::new(EXIT_USAGE, format!("error: --sem: {e}")))?;
    let rs =
        generate(&sem, &a.lang, &lex).map_err(|e| Failure::new(EXIT_GAP, format!("error: {e}")))?;
    for r in rs {
        if a.trace {
            eprintln!("generate: {r}");
        }
        writeln!(out, "{}", r.surface).map_err(io_fail)?;
    }
    Ok(())
}

fn cmd_validate(a: LexiconArgs, out: &mut impl Write) -> Result<(), Failure> {
    let sources = read_sources(&lexicon_files(&a)?)?;
    let (_, diags) = Lexicon::check_sources(&sources);
    for d in &diags {
        writeln!(out, "{d}").map_err(io_fail)?;
    }
    if lexfun::lexicon::has_errors(&diags) {
        Err(Failure {
            code: EXIT_PARSE,
            message: Vec::new(),
        })
    } else {
        Ok(())
    }
}
