//! Tokens of `.rfn` source text.

use super::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Dot,
    FatArrow,
    Arrow,
    Super,
    Sub,
    Assign,
    Bar,
    Amp,
    Op(&'static str),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const KEYWORDS: &[&str] = &[
    "fun", "Fun", "let", "in", "if", "then", "else", "match", "with", "inl", "inr", "loop", "mu", "Pi", "All", "Sig",
    "def", "unit", "true", "false", "Unit", "True", "False", "Int32", "Top", "Bot",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if src[i..].starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                span: (start, i),
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: i64 = src[start..i]
                .parse()
                .ok()
                .filter(|n| *n <= 1i64 << 31)
                .ok_or_else(|| Diagnostic::parse((start, i), "integer literal out of range"))?;
            out.push(Token {
                tok: Tok::Int(n),
                span: (start, i),
            });
            continue;
        }
        let two = src.get(i..i + 2).unwrap_or("");
        let (tok, len) = match two {
            "=>" => (Tok::FatArrow, 2),
            "->" => (Tok::Arrow, 2),
            ">:" => (Tok::Super, 2),
            "<:" => (Tok::Sub, 2),
            "==" => (Tok::Op("=="), 2),
            "!=" => (Tok::Op("!="), 2),
            "<=" => (Tok::Op("<="), 2),
            ">=" => (Tok::Op(">="), 2),
            "&&" => (Tok::Op("&&"), 2),
            "||" => (Tok::Op("||"), 2),
            _ => match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'[' => (Tok::LBrack, 1),
                b']' => (Tok::RBrack, 1),
                b'{' => (Tok::LBrace, 1),
                b'}' => (Tok::RBrace, 1),
                b',' => (Tok::Comma, 1),
                b':' => (Tok::Colon, 1),
                b';' => (Tok::Semi, 1),
                b'.' => (Tok::Dot, 1),
                b'=' => (Tok::Assign, 1),
                b'|' => (Tok::Bar, 1),
                b'&' => (Tok::Amp, 1),
                b'<' => (Tok::Op("<"), 1),
                b'>' => (Tok::Op(">"), 1),
                b'+' => (Tok::Op("+"), 1),
                b'-' => (Tok::Op("-"), 1),
                b'*' => (Tok::Op("*"), 1),
                b'/' => (Tok::Op("/"), 1),
                b'%' => (Tok::Op("%"), 1),
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(Diagnostic::parse((i, i + ch.len_utf8()), format!("unexpected character {ch:?}")));
                }
            },
        };
        i += len;
        out.push(Token {
            tok,
            span: (start, i),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: (src.len(), src.len()),
    });
    Ok(out)
}
