//! Minimal s-expression reader with source positions.

use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub file: Arc<str>,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn memory() -> Self {
        Span {
            file: Arc::from("<memory>"),
            line: 0,
            col: 0,
        }
    }
}

impl Default for Span {
    fn default() -> Self {
        Span::memory()
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sexp {
    Sym(String, Span),
    Str(String, Span),
    List(Vec<Sexp>, Span),
}

impl Sexp {
    pub fn span(&self) -> &Span {
        match self {
            Sexp::Sym(_, s) | Sexp::Str(_, s) | Sexp::List(_, s) => s,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s, _) => Some(s),
            _ => None,
        }
    }

    /// Symbol or string contents.
    pub fn as_text(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s, _) | Sexp::Str(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// For `(head arg ...)` returns `head` and the arguments.
    pub fn head(&self) -> Option<(&str, &[Sexp])> {
        let items = self.as_list()?;
        let (first, rest) = items.split_first()?;
        Some((first.as_sym()?, rest))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadError {
    pub span: Span,
    pub message: String,
}

pub fn read_all(file: &str, text: &str) -> Result<Vec<Sexp>, ReadError> {
    let mut r = Reader {
        file: Arc::from(file),
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.pos >= r.chars.len() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

struct Reader {
    file: Arc<str>,
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Reader {
    fn span(&self) -> Span {
        Span {
            file: self.file.clone(),
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == ';' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err(&self, span: Span, message: &str) -> ReadError {
        ReadError {
            span,
            message: message.to_string(),
        }
    }

    fn read(&mut self) -> Result<Sexp, ReadError> {
        self.skip_trivia();
        let span = self.span();
        match self.peek() {
            None => Err(self.err(span, "unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(self.err(span, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, span));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(self.err(span, "unexpected `)`")),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.err(span, "unterminated string")),
                        Some('"') => return Ok(Sexp::Str(s, span)),
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some(c) => s.push(c),
                            None => return Err(self.err(span, "unterminated string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp::Sym(s, span))
            }
        }
    }
}

/// Quotes a string for output.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_with_positions_and_comments() {
        let forms = read_all(
            "t.lex",
            "; header\n(entry (id en:smoker)\n  (phon \"smoker\"))\n",
        )
        .unwrap();
        assert_eq!(forms.len(), 1);
        let (head, args) = forms[0].head().unwrap();
        assert_eq!(head, "entry");
        assert_eq!(forms[0].span().line, 2);
        assert_eq!(args[1].span().to_string(), "t.lex:3:3");
        assert_eq!(
            args[1].head().unwrap().1[0],
            Sexp::Str("smoker".into(), args[1].head().unwrap().1[0].span().clone())
        );
    }

    #[test]
    fn errors_have_positions() {
        let e = read_all("t.lex", "(a\n(b").unwrap_err();
        assert_eq!(e.message, "unclosed `(`");
        let e = read_all("t.lex", "\n  )").unwrap_err();
        assert_eq!(e.span.to_string(), "t.lex:2:3");
    }

    #[test]
    fn quoting_round_trips() {
        let q = quote("a \"b\" c\\");
        let forms = read_all("t", &q).unwrap();
        assert_eq!(forms[0].as_text(), Some("a \"b\" c\\"));
    }
}
