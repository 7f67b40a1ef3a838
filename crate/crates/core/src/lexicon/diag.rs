use std::fmt;

use super::sexpr::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// Stable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Syntax,
    UnknownForm,
    UnknownField,
    MissingField,
    BadValue,
    DuplicateId,
    DanglingRef,
    UnknownLf,
    CollLfCount,
    NestedColls,
    CollCategory,
    MergedBaseMissing,
    BadQualiaRole,
    LfSignNotIdentity,
    SignShape,
    SignEndpointMissing,
    DuplicateSign,
    AmbiguousReverseSign,
    BadSortHierarchy,
    UnknownRule,
    BadLink,
    UnknownSort,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "SYNTAX",
            Code::UnknownForm => "UNKNOWN_FORM",
            Code::UnknownField => "UNKNOWN_FIELD",
            Code::MissingField => "MISSING_FIELD",
            Code::BadValue => "BAD_VALUE",
            Code::DuplicateId => "DUPLICATE_ID",
            Code::DanglingRef => "DANGLING_REF",
            Code::UnknownLf => "UNKNOWN_LF",
            Code::CollLfCount => "COLL_LF_COUNT",
            Code::NestedColls => "NESTED_COLLS",
            Code::CollCategory => "COLL_CATEGORY",
            Code::MergedBaseMissing => "MERGED_BASE_MISSING",
            Code::BadQualiaRole => "BAD_QUALIA_ROLE",
            Code::LfSignNotIdentity => "LF_SIGN_NOT_IDENTITY",
            Code::SignShape => "SIGN_SHAPE",
            Code::SignEndpointMissing => "SIGN_ENDPOINT_MISSING",
            Code::DuplicateSign => "DUPLICATE_SIGN",
            Code::AmbiguousReverseSign => "AMBIGUOUS_REVERSE_SIGN",
            Code::BadSortHierarchy => "BAD_SORT_HIERARCHY",
            Code::UnknownRule => "UNKNOWN_RULE",
            Code::BadLink => "BAD_LINK",
            Code::UnknownSort => "UNKNOWN_SORT",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One finding about a lexicon. Renders as
/// `LEVEL CODE file:line:col message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: Code, span: &Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            span: span.clone(),
            message: message.into(),
        }
    }

    pub fn warning(code: Code, span: &Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            span: span.clone(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.severity, self.code, self.span, self.message
        )
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Orders diagnostics by position, then code.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        (&a.span.file, a.span.line, a.span.col, a.code).cmp(&(
            &b.span.file,
            b.span.line,
            b.span.col,
            b.code,
        ))
    });
}
