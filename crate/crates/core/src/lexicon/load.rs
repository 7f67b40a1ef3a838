//! Reading lexicon files into a [`Lexicon`].

use std::collections::BTreeMap;

use crate::avm::SortHierarchy;
use crate::grammar::{HeadSide, PhraseRule, Position, RuleKind};
use crate::semantics::{LexicalFunction, PredKind, QualiaRole, SemIndex, Variable};

use super::diag::{has_errors, sort_diagnostics, Code, Diagnostic};
use super::entry::{
    AdjunctUse, BilingualSign, Category, CollocateSubentry, EntryId, LexEntry, ANY_LANG,
};
use super::sexpr::{read_all, Sexp, Span};
use super::Lexicon;

/// One named lexicon text.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Source {
            name: name.into(),
            text: text.into(),
        }
    }
}

/// Loads a single lexicon text. Warnings are dropped; use [`load_sources`]
/// to see them.
pub fn load_lexicon(text: &str) -> Result<Lexicon, Vec<Diagnostic>> {
    load_sources(&[Source::new("<input>", text)]).map(|(lex, _)| lex)
}

/// Loads and validates several texts as one lexicon, left to right. On
/// success returns the lexicon and any warnings; any error-level
/// diagnostic fails the load.
pub fn load_sources(sources: &[Source]) -> Result<(Lexicon, Vec<Diagnostic>), Vec<Diagnostic>> {
    let (lex, mut diags) = assemble(sources);
    diags.extend(lex.validate());
    sort_diagnostics(&mut diags);
    if has_errors(&diags) {
        Err(diags)
    } else {
        Ok((lex, diags))
    }
}

type QualiaDecl = (EntryId, Vec<(QualiaRole, String)>, Span);

#[derive(Default)]
struct Pending {
    sort_decls: Vec<(String, Vec<String>, Span)>,
    colls: Vec<(EntryId, CollocateSubentry)>,
    qualia: Vec<QualiaDecl>,
}

/// Builds a lexicon from whatever parses, reporting problems found on the
/// way. Cross-reference checks are left to `Lexicon::validate`.
pub(crate) fn assemble(sources: &[Source]) -> (Lexicon, Vec<Diagnostic>) {
    let mut lex = Lexicon::default();
    let mut diags = Vec::new();
    let mut pending = Pending::default();
    for src in sources {
        let forms = match read_all(&src.name, &src.text) {
            Ok(f) => f,
            Err(e) => {
                diags.push(Diagnostic::error(Code::Syntax, &e.span, e.message));
                continue;
            }
        };
        for form in &forms {
            read_form(form, &mut lex, &mut pending, &mut diags);
        }
    }

    let mut decls = Vec::new();
    for (child, ps, span) in pending.sort_decls {
        match lex.sorts.extend([(child.clone(), ps.clone())]) {
            Ok(h) => {
                lex.sorts = h;
                decls.push((child, ps));
            }
            Err(e) => diags.push(Diagnostic::error(
                Code::BadSortHierarchy,
                &span,
                e.to_string(),
            )),
        }
    }
    lex.sort_decls = decls;

    for (base, sub) in pending.colls {
        match lex.entries.get_mut(&base) {
            Some(e) => e.colls.push(sub),
            None => diags.push(Diagnostic::error(
                Code::DanglingRef,
                &sub.span,
                format!("collocation base `{base}` is not defined"),
            )),
        }
    }
    for (id, roles, span) in pending.qualia {
        match lex.entries.get_mut(&id) {
            Some(e) => e.qualia.extend(roles),
            None => diags.push(Diagnostic::error(
                Code::DanglingRef,
                &span,
                format!("qualia for undefined entry `{id}`"),
            )),
        }
    }
    lex.reindex();
    (lex, diags)
}

fn read_form(form: &Sexp, lex: &mut Lexicon, pending: &mut Pending, diags: &mut Vec<Diagnostic>) {
    let span = form.span();
    let Some((head, args)) = form.head() else {
        diags.push(Diagnostic::error(
            Code::UnknownForm,
            span,
            "expected a `(form ...)` list",
        ));
        return;
    };
    let res = match head {
        "sorts" => read_sorts(args, pending),
        "lfs" => read_lfs(args, lex),
        "rule" => read_rule(args, span, lex),
        "entry" => read_entry(args, span, lex, diags),
        "coll" => read_coll(args, span, None, diags).map(|(base, sub)| {
            if let Some(base) = base {
                pending.colls.push((base, sub));
            }
        }),
        "qualia" => read_qualia(args, span, pending, diags),
        "bi" => read_bi(args, span, lex),
        "bi-lf" => read_bi_lf(args, span, lex),
        other => Err(Diagnostic::error(
            Code::UnknownForm,
            span,
            format!("unknown form `{other}`"),
        )),
    };
    if let Err(d) = res {
        diags.push(d);
    }
}

type Res<T> = Result<T, Diagnostic>;

fn bad(span: &Span, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(Code::BadValue, span, msg)
}

fn sym<'a>(s: &'a Sexp, what: &str) -> Res<&'a str> {
    s.as_sym()
        .ok_or_else(|| bad(s.span(), format!("{what} must be a symbol")))
}

fn text<'a>(s: &'a Sexp, what: &str) -> Res<&'a str> {
    s.as_text()
        .ok_or_else(|| bad(s.span(), format!("{what} must be a string or symbol")))
}

/// Collects `(name arg...)` fields, rejecting unknown and repeated names.
fn fields<'a>(
    args: &'a [Sexp],
    allowed: &[&str],
    form: &str,
) -> Res<BTreeMap<&'a str, (&'a [Sexp], &'a Span)>> {
    let mut out = BTreeMap::new();
    for a in args {
        let (name, rest) = a
            .head()
            .ok_or_else(|| bad(a.span(), format!("expected a `(field ...)` in {form}")))?;
        if !allowed.contains(&name) {
            return Err(Diagnostic::error(
                Code::UnknownField,
                a.span(),
                format!("unknown field `{name}` in {form}"),
            ));
        }
        if out.insert(name, (rest, a.span())).is_some() {
            return Err(bad(a.span(), format!("field `{name}` given twice")));
        }
    }
    Ok(out)
}

fn required<'a>(
    f: &BTreeMap<&str, (&'a [Sexp], &'a Span)>,
    name: &str,
    form_span: &Span,
    form: &str,
) -> Res<(&'a [Sexp], &'a Span)> {
    f.get(name).copied().ok_or_else(|| {
        Diagnostic::error(
            Code::MissingField,
            form_span,
            format!("{form} lacks `({name} ...)`"),
        )
    })
}

fn single<'a>(args: &'a [Sexp], span: &Span, name: &str) -> Res<&'a Sexp> {
    match args {
        [one] => Ok(one),
        _ => Err(bad(span, format!("`{name}` takes exactly one value"))),
    }
}

fn entry_id(s: &Sexp) -> Res<EntryId> {
    sym(s, "identifier")?
        .parse()
        .map_err(|e: String| bad(s.span(), e))
}

fn lf_name(s: &Sexp) -> Res<LexicalFunction> {
    let t = sym(s, "lexical function")?;
    LexicalFunction::parse_unchecked(t).map_err(|e| match e {
        crate::semantics::SemError::UnknownRole(_) => {
            Diagnostic::error(Code::BadQualiaRole, s.span(), e.to_string())
        }
        _ => bad(s.span(), e.to_string()),
    })
}

fn read_sorts(args: &[Sexp], pending: &mut Pending) -> Res<()> {
    for decl in args {
        let items = decl
            .as_list()
            .filter(|l| !l.is_empty())
            .ok_or_else(|| bad(decl.span(), "sort declaration must be `(child parent...)`"))?;
        let child = sym(&items[0], "sort")?.to_string();
        let parents = items[1..]
            .iter()
            .map(|p| sym(p, "sort").map(str::to_string))
            .collect::<Res<Vec<_>>>()?;
        pending
            .sort_decls
            .push((child, parents, decl.span().clone()));
    }
    Ok(())
}

fn read_lfs(args: &[Sexp], lex: &mut Lexicon) -> Res<()> {
    for a in args {
        match a {
            Sexp::Sym(name, _) => lex.registry.declare(name.clone(), None),
            Sexp::List(items, span) => match items.as_slice() {
                [name, doc] => lex.registry.declare(
                    sym(name, "LF name")?,
                    Some(text(doc, "LF doc")?.to_string()),
                ),
                _ => return Err(bad(span, "expected `Name` or `(Name \"doc\")`")),
            },
            Sexp::Str(_, span) => return Err(bad(span, "LF names are symbols")),
        }
    }
    Ok(())
}

fn read_rule(args: &[Sexp], span: &Span, lex: &mut Lexicon) -> Res<()> {
    let unknown = |s: &Span, m: String| Diagnostic::error(Code::UnknownRule, s, m);
    let [kind, side, rest @ ..] = args else {
        return Err(unknown(
            span,
            "expected `(rule KIND SIDE (skip ...))`".into(),
        ));
    };
    let kind: RuleKind = sym(kind, "rule kind")?
        .parse()
        .map_err(|m| unknown(kind.span(), m))?;
    let side: HeadSide = sym(side, "head side")?
        .parse()
        .map_err(|m| unknown(side.span(), m))?;
    let mut rule = PhraseRule::new(kind, side);
    let f = fields(rest, &["skip"], "rule")?;
    if let Some((words, _)) = f.get("skip") {
        for w in *words {
            rule.skip.insert(text(w, "skip word")?.to_string());
        }
    }
    lex.grammar.add(rule);
    Ok(())
}

fn read_entry(
    args: &[Sexp],
    span: &Span,
    lex: &mut Lexicon,
    diags: &mut Vec<Diagnostic>,
) -> Res<()> {
    let f = fields(
        args,
        &["id", "phon", "cat", "sem", "merged", "adjunct"],
        "entry",
    )?;
    let (a, s) = required(&f, "id", span, "entry")?;
    let id = entry_id(single(a, s, "id")?)?;
    let (a, s) = required(&f, "phon", span, "entry")?;
    let phon = text(single(a, s, "phon")?, "phon")?.to_string();
    let (a, s) = required(&f, "cat", span, "entry")?;
    let c = single(a, s, "cat")?;
    let cat: Category = sym(c, "cat")?
        .parse()
        .map_err(|m: String| bad(c.span(), m))?;

    let mut pred = None;
    if let Some((a, s)) = f.get("sem") {
        let p = single(a, s, "sem")?;
        match p.head() {
            Some(("pred", [name])) => pred = Some(sym(name, "predicate")?.to_string()),
            _ => return Err(bad(p.span(), "expected `(sem (pred NAME))`")),
        }
    }
    let mut merged_sig = None;
    if let Some((a, s)) = f.get("merged") {
        let [lf, base] = a else {
            return Err(bad(s, "expected `(merged LF BASE-PRED)`"));
        };
        let lf = lf_name(lf)?;
        let base = sym(base, "base predicate")?.to_string();
        if let Some(p) = &pred {
            if *p != base {
                return Err(bad(
                    s,
                    format!("merged entry's sem `{p}` differs from its base `{base}`"),
                ));
            }
        }
        merged_sig = Some((LexicalFunction { merged: true, ..lf }, base));
    }
    let sem = match (&merged_sig, pred) {
        (Some((lf, base)), _) => SemIndex::from_kinds(
            Variable(0),
            [PredKind::Base(base.clone()), PredKind::Lf(lf.unmerged())],
        ),
        (None, Some(p)) => SemIndex::from_kinds(Variable(0), [PredKind::Base(p)]),
        (None, None) => SemIndex::empty(Variable(0)),
    };
    let mut adjunct = None;
    if let Some((a, s)) = f.get("adjunct") {
        let (pos, form) = match a {
            [pos] => (pos, None),
            [pos, form] => (pos, Some(text(form, "adjunct form")?.to_string())),
            _ => return Err(bad(s, "expected `(adjunct POS [\"form\"])`")),
        };
        let position: Position = sym(pos, "position")?
            .parse()
            .map_err(|m: String| bad(pos.span(), m))?;
        if !position.is_adjunct() {
            return Err(bad(
                pos.span(),
                format!("`{position}` is not an adjunct position"),
            ));
        }
        adjunct = Some(AdjunctUse { position, form });
    }
    if lex.entries.contains_key(&id) {
        diags.push(Diagnostic::error(
            Code::DuplicateId,
            span,
            format!("entry `{id}` is already defined"),
        ));
        return Ok(());
    }
    lex.entries.insert(
        id.clone(),
        LexEntry {
            id,
            phon,
            cat,
            sem,
            colls: Vec::new(),
            qualia: BTreeMap::new(),
            merged_sig,
            adjunct,
            span: span.clone(),
        },
    );
    Ok(())
}

/// Reads a `coll` body. `base` is absent for nested subentries.
fn read_coll(
    args: &[Sexp],
    span: &Span,
    nested_in: Option<&EntryId>,
    diags: &mut Vec<Diagnostic>,
) -> Res<(Option<EntryId>, CollocateSubentry)> {
    let allowed: &[&str] = if nested_in.is_some() {
        &["super", "lf", "pos", "form", "link", "base-form", "colls"]
    } else {
        &[
            "base",
            "super",
            "lf",
            "pos",
            "form",
            "link",
            "base-form",
            "colls",
        ]
    };
    let f = fields(args, allowed, "coll")?;
    let base = match nested_in {
        Some(b) => b.clone(),
        None => {
            let (a, s) = required(&f, "base", span, "coll")?;
            entry_id(single(a, s, "base")?)?
        }
    };
    let (a, s) = required(&f, "super", span, "coll")?;
    let super_ref = entry_id(single(a, s, "super")?)?;
    let (a, _) = required(&f, "lf", span, "coll")?;
    let lfs = a.iter().map(lf_name).collect::<Res<Vec<_>>>()?;
    let (a, s) = required(&f, "pos", span, "coll")?;
    let p = single(a, s, "pos")?;
    let position: Position = sym(p, "pos")?
        .parse()
        .map_err(|m: String| bad(p.span(), m))?;
    let opt = |name: &str| -> Res<Option<String>> {
        match f.get(name) {
            Some((a, s)) => Ok(Some(text(single(a, s, name)?, name)?.to_string())),
            None => Ok(None),
        }
    };
    let form = opt("form")?;
    let link = opt("link")?;
    let base_form = opt("base-form")?;
    let mut colls = Vec::new();
    if let Some((a, _)) = f.get("colls") {
        for c in *a {
            match c.head() {
                Some(("coll", inner)) => match read_coll(inner, c.span(), Some(&base), diags) {
                    Ok((_, sub)) => colls.push(sub),
                    Err(d) => diags.push(d),
                },
                _ => return Err(bad(c.span(), "expected `(coll ...)`")),
            }
        }
    }
    let sub = CollocateSubentry {
        super_ref,
        sem: SemIndex::from_kinds(Variable(0), lfs.into_iter().map(PredKind::Lf)),
        position,
        form,
        link,
        base_form,
        colls,
        span: span.clone(),
    };
    Ok((nested_in.is_none().then_some(base), sub))
}

fn read_qualia(
    args: &[Sexp],
    span: &Span,
    pending: &mut Pending,
    diags: &mut Vec<Diagnostic>,
) -> Res<()> {
    let [id, roles @ ..] = args else {
        return Err(Diagnostic::error(
            Code::MissingField,
            span,
            "qualia lacks `(id ...)`",
        ));
    };
    let id = match id.head() {
        Some(("id", [v])) => entry_id(v)?,
        _ => {
            return Err(Diagnostic::error(
                Code::MissingField,
                span,
                "qualia must start with `(id ...)`",
            ))
        }
    };
    let mut out = Vec::new();
    for r in roles {
        match r.head() {
            Some((role, [v])) => match role.parse::<QualiaRole>() {
                Ok(role) => out.push((role, text(v, "qualia value")?.to_string())),
                Err(e) => diags.push(Diagnostic::error(
                    Code::BadQualiaRole,
                    r.span(),
                    e.to_string(),
                )),
            },
            _ => return Err(bad(r.span(), "expected `(Role value)`")),
        }
    }
    pending.qualia.push((id, out, span.clone()));
    Ok(())
}

fn read_bi(args: &[Sexp], span: &Span, lex: &mut Lexicon) -> Res<()> {
    let f = fields(args, &["src", "tgt"], "bi")?;
    let side = |name: &str| -> Res<(String, String)> {
        let (a, s) = required(&f, name, span, "bi")?;
        match a {
            [lang, pred] => Ok((
                sym(lang, "language")?.to_string(),
                sym(pred, "predicate")?.to_string(),
            )),
            _ => Err(Diagnostic::error(
                Code::SignShape,
                s,
                format!("expected `({name} LANG PRED)`"),
            )),
        }
    };
    let (sl, sp) = side("src")?;
    let (tl, tp) = side("tgt")?;
    let mut sign = BilingualSign::base(sl, sp, tl, tp);
    sign.span = span.clone();
    lex.signs.push(sign);
    Ok(())
}

fn read_bi_lf(args: &[Sexp], span: &Span, lex: &mut Lexicon) -> Res<()> {
    let (src, tgt) = match args {
        [one @ Sexp::Sym(..)] => {
            let lf = lf_name(one)?;
            (lf.clone(), lf)
        }
        _ => {
            let f = fields(args, &["src", "tgt"], "bi-lf")?;
            let side = |name: &str| -> Res<LexicalFunction> {
                let (a, s) = required(&f, name, span, "bi-lf")?;
                lf_name(single(a, s, name)?)
            };
            (side("src")?, side("tgt")?)
        }
    };
    let mut sign = BilingualSign::lf(src, tgt);
    sign.span = span.clone();
    debug_assert_eq!(sign.src_lang, ANY_LANG);
    lex.signs.push(sign);
    Ok(())
}

impl Lexicon {
    /// Parses and validates without failing; returns every diagnostic.
    pub fn check_sources(sources: &[Source]) -> (Lexicon, Vec<Diagnostic>) {
        let (lex, mut diags) = assemble(sources);
        diags.extend(lex.validate());
        sort_diagnostics(&mut diags);
        (lex, diags)
    }

    /// An empty lexicon over the standard sorts and shipped LFs.
    pub fn empty() -> Lexicon {
        Lexicon {
            sorts: SortHierarchy::standard(),
            ..Lexicon::default()
        }
    }
}
