//! Tokenizer and s-expression reader.

use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq)]
pub enum SExpr {
    /// Identifier, keyword, variable or number, lower-cased.
    Atom(String, Span),
    List(Vec<SExpr>, Span),
}

impl SExpr {
    pub fn span(&self) -> Span {
        match self {
            SExpr::Atom(_, s) | SExpr::List(_, s) => *s,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a, _) => Some(a),
            SExpr::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(l, _) => Some(l),
            SExpr::Atom(..) => None,
        }
    }

    /// Head symbol of a non-empty list whose first element is an atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }

    /// Single-line rendering, tokens separated by one space.
    pub fn render(&self) -> String {
        match self {
            SExpr::Atom(a, _) => a.clone(),
            SExpr::List(items, _) => {
                let inner: Vec<String> = items.iter().map(SExpr::render).collect();
                format!("({})", inner.join(" "))
            }
        }
    }
}

/// Whether a token is a numeric literal: optional minus, digits, optional
/// fractional part.
pub fn is_number(tok: &str) -> bool {
    let t = tok.strip_prefix('-').unwrap_or(tok);
    let (int, frac) = match t.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (t, None),
    };
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

/// Reads exactly one top-level s-expression from `text`.
pub fn read(text: &str, file: &str) -> Result<SExpr, ParseError> {
    let mut stack: Vec<(Vec<SExpr>, Span)> = Vec::new();
    let mut result: Option<SExpr> = None;
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    let err = |line, col, msg: String| ParseError::new(file, Span { line, col }, msg);

    while let Some(&c) = chars.peek() {
        let here = Span { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == ';' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if result.is_some() {
            return Err(err(line, col, "unexpected content after the closing parenthesis".into()));
        }
        match c {
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let (items, span) = stack.pop().ok_or_else(|| err(here.line, here.col, "unbalanced ')'".into()))?;
                let list = SExpr::List(items, span);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => result = Some(list),
                }
            }
            _ => {
                let mut tok = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    tok.extend(c.to_lowercase());
                    chars.next();
                    col += 1;
                }
                let atom = SExpr::Atom(tok, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => return Err(err(here.line, here.col, "expected '('".into())),
                }
            }
        }
    }
    if let Some((_, span)) = stack.last() {
        return Err(err(span.line, span.col, "unclosed '('".into()));
    }
    result.ok_or_else(|| err(line, col, "empty input".into()))
}
