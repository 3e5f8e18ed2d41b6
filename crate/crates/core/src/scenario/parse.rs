//! Line-oriented syntax of scenario files.

use std::fmt;

use crate::error::Error;
use crate::expr::Expr;

/// Diagnostic with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self { line, col, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A piece of source text with the position of its first character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, message)
    }

    /// Position of the byte `offset` inside this span.
    pub fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let col = self.col + self.text[..offset.min(self.text.len())].chars().count();
        ParseError::new(self.line, col, message)
    }

    pub fn map_error(&self, e: Error) -> ParseError {
        match e {
            Error::Expr { offset, message } => self.error_at(offset, message),
            other => self.error(other.to_string()),
        }
    }

    pub fn expr(&self) -> Result<Expr, ParseError> {
        Expr::parse(&self.text).map_err(|e| self.map_error(e))
    }

    fn sub(&self, start: usize, end: usize) -> Span {
        let raw = &self.text[start..end];
        let lead = raw.len() - raw.trim_start().len();
        Span {
            text: raw.trim().to_string(),
            line: self.line,
            col: self.col + self.text[..start + lead].chars().count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub label: Option<String>,
    pub header: Span,
    pub lines: Vec<Span>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits the source into `[section]` blocks of non-empty lines.
pub fn sections(src: &str) -> Result<Vec<Section>, ParseError> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body[..body.len() - body.trim_start().len()].chars().count() + 1;
        let span = Span { text: trimmed.to_string(), line: line_no, col };
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(ParseError::new(
                    line_no,
                    col + trimmed.chars().count(),
                    "expected ']' closing the section header",
                ));
            };
            let mut words = inner.split_whitespace();
            let Some(name) = words.next() else {
                return Err(ParseError::new(line_no, col + 1, "expected a section name"));
            };
            let label = words.next().map(str::to_string);
            if let Some(extra) = words.next() {
                let off = trimmed.find(extra).unwrap_or(0);
                return Err(span.error_at(off, format!("unexpected '{extra}' in section header")));
            }
            out.push(Section { name: name.to_string(), label, header: span, lines: Vec::new() });
        } else {
            match out.last_mut() {
                Some(sec) => sec.lines.push(span),
                None => return Err(span.error("expected a section header such as [ambient]")),
            }
        }
    }
    Ok(out)
}

/// `key = value`.
pub fn key_value(span: &Span) -> Result<(Span, Span), ParseError> {
    let Some(eq) = span.text.find('=') else {
        return Err(span.error("expected 'key = value'"));
    };
    let key = span.sub(0, eq);
    let value = span.sub(eq + 1, span.text.len());
    if key.text.is_empty() || !key.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(key.error("expected a key name before '='"));
    }
    if value.text.is_empty() {
        return Err(span.error_at(span.text.len(), format!("expected a value for '{}'", key.text)));
    }
    Ok((key, value))
}

/// Whitespace- or comma-separated fields.
pub fn fields(span: &Span) -> Vec<Span> {
    let mut out = Vec::new();
    let bytes = span.text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b',' || bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b',' && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        out.push(span.sub(start, i));
    }
    out
}

/// A multidegree line `(e_1, ..., e_s)` with an optional `^ count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLine {
    pub line: Span,
    pub entries: Vec<Span>,
    pub repeat: Option<Span>,
}

pub fn degree_line(span: &Span) -> Result<DegreeLine, ParseError> {
    if !span.text.starts_with('(') {
        return Err(span.error("expected a multidegree '(a, b, ...)'"));
    }
    let mut depth = 0i32;
    let mut close = None;
    for (i, c) in span.text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let Some(close) = close else {
        return Err(span.error_at(span.text.len(), "expected ')' closing the multidegree"));
    };
    let mut entries = Vec::new();
    let mut depth = 0i32;
    let mut start = 1;
    for (i, c) in span.text[..close].char_indices().skip(1) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                entries.push(span.sub(start, i));
                start = i + 1;
            }
            _ => {}
        }
    }
    entries.push(span.sub(start, close));
    if let Some(empty) = entries.iter().find(|e| e.text.is_empty()) {
        return Err(empty.error("expected an integer expression"));
    }
    let rest = span.sub(close + 1, span.text.len());
    let repeat = if rest.text.is_empty() {
        None
    } else if let Some(r) = rest.text.strip_prefix('^') {
        let lead = r.len() - r.trim_start().len();
        let count = Span { text: r.trim().to_string(), line: rest.line, col: rest.col + 1 + lead };
        if count.text.is_empty() {
            return Err(rest.error_at(1, "expected a repeat count after '^'"));
        }
        Some(count)
    } else {
        return Err(rest.error("expected '^ count' or end of line after the multidegree"));
    };
    Ok(DegreeLine { line: span.clone(), entries, repeat })
}
