//! Diagnostics, printable for people or as JSON lines.

use serde::Serialize;

use crate::typeck::TypeError;

/// Byte range `[start, end)`.
pub type Span = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: SpanJson,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanJson {
    pub start: usize,
    pub end: usize,
}

impl Diagnostic {
    pub fn error(span: Span, code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            span: SpanJson {
                start: span.0,
                end: span.1,
            },
            code: code.to_string(),
            message: message.into(),
            expected: None,
            actual: None,
        }
    }

    pub fn parse(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(span, "E-PARSE", message)
    }

    /// Convert a type error, falling back to `span` when it has none.
    /// `render` prints the error's types in its context.
    pub fn from_type_error(e: &TypeError, span: Span, render: impl Fn(&crate::syntax::Type) -> String) -> Diagnostic {
        let mut d = Diagnostic::error(e.span.unwrap_or(span), e.kind.code(), e.to_string());
        d.expected = e.expected.as_ref().map(&render);
        d.actual = e.actual.as_ref().map(&render);
        d
    }

    pub fn span(&self) -> Span {
        (self.span.start, self.span.end)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagnostics serialize")
    }

    /// `file:line:col: error[CODE]: message`, followed by the types.
    pub fn render(&self, file: &str, src: &str) -> String {
        let (line, col) = line_col(src, self.span.start);
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Note => "note",
        };
        let mut out = format!("{file}:{line}:{col}: {sev}[{}]: {}", self.code, self.message);
        if let Some(e) = &self.expected {
            out.push_str(&format!("\n  expected: {e}"));
        }
        if let Some(a) = &self.actual {
            out.push_str(&format!("\n  actual:   {a}"));
        }
        out
    }
}

/// One-based line and column of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, col)
}
