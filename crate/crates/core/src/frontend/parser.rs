//! Recursive-descent parser producing a named syntax tree.

use super::diag::{Diagnostic, Span};
use super::lexer::{is_keyword, lex, Tok, Token};
use crate::syntax::{Const, Op};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NType {
    Name(String, Span),
    Unit,
    True,
    False,
    Int32,
    Top,
    Bot,
    Pi(String, Box<NType>, Box<NType>),
    Forall(String, Box<NType>, Box<NType>, Box<NType>),
    Sigma(String, Box<NType>, Box<NType>),
    Sum(Box<NType>, Box<NType>),
    Union(Box<NType>, Box<NType>),
    Inter(Box<NType>, Box<NType>),
    Refine(String, Box<NType>, Box<NTerm>),
    Mu(String, Box<NType>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NTerm {
    Const(Const),
    Name(String, Span),
    Abs(String, Box<NType>, Box<NTerm>),
    App(Box<NTerm>, Box<NTerm>),
    TAbs(String, Box<NType>, Box<NType>, Box<NTerm>),
    TApp(Box<NTerm>, Box<NType>),
    Let(String, Option<Box<NType>>, Box<NTerm>, Box<NTerm>),
    Pair(Box<NTerm>, Box<NTerm>),
    MatchPair(Box<NTerm>, String, String, Box<NTerm>),
    MatchSum(Box<NTerm>, String, Box<NTerm>, String, Box<NTerm>),
    Inl(Option<Box<NType>>, Box<NTerm>),
    Inr(Option<Box<NType>>, Box<NTerm>),
    BinOp(Op, Box<NTerm>, Box<NTerm>),
    If(Box<NTerm>, Box<NTerm>, Box<NTerm>),
    Loop(Box<NTerm>, String, Box<NTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub ty: NType,
    pub body: NTerm,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub defs: Vec<Def>,
    pub main: Option<(NTerm, Span)>,
}

fn bx<T>(x: T) -> Box<T> {
    Box::new(x)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

fn binop(tok: &Tok) -> Option<Op> {
    Some(match tok {
        Tok::Op("==") => Op::Eq,
        Tok::Op("!=") => Op::Ne,
        Tok::Op("<") => Op::Lt,
        Tok::Op("<=") => Op::Le,
        Tok::Op(">") => Op::Gt,
        Tok::Op(">=") => Op::Ge,
        Tok::Op("&&") => Op::And,
        Tok::Op("||") => Op::Or,
        Tok::Op("+") => Op::Add,
        Tok::Op("-") => Op::Sub,
        Tok::Op("*") => Op::Mul,
        Tok::Op("/") => Op::Div,
        Tok::Op("%") => Op::Mod,
        _ => return None,
    })
}

fn level(op: Op) -> u8 {
    match op {
        Op::Or => 1,
        Op::And => 2,
        Op::Eq | Op::Ne | Op::Lt | Op::Le | Op::Gt | Op::Ge => 3,
        Op::Add | Op::Sub => 4,
        Op::Mul | Op::Div | Op::Mod => 5,
    }
}

const TERM_PREFIX: &[&str] = &["fun", "Fun", "let", "if", "match", "loop"];
const TYPE_PREFIX: &[&str] = &["Pi", "All", "Sig", "mu"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.1
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            Tok::Op(s) => format!("`{s}`"),
            other => format!("{other:?}"),
        }
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(Diagnostic::parse(
            self.span(),
            format!("expected {what}, found {}", Self::describe(self.peek())),
        ))
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn at_main(&self) -> bool {
        self.is_kw("main") && *self.peek_at(1) == Tok::Assign
    }

    // ---- types ----

    pub fn ty(&mut self) -> PResult<NType> {
        match self.peek() {
            Tok::Ident(s) if TYPE_PREFIX.contains(&s.as_str()) => self.prefix_type(),
            _ => self.type_level(1),
        }
    }

    fn prefix_type(&mut self) -> PResult<NType> {
        let Tok::Ident(kw) = self.bump() else { unreachable!() };
        match kw.as_str() {
            "Pi" | "Sig" => {
                self.expect(Tok::LParen, "`(`")?;
                let x = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let a = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                if kw == "Pi" {
                    self.expect(Tok::Arrow, "`->`")?;
                    Ok(NType::Pi(x, bx(a), bx(self.ty()?)))
                } else {
                    self.expect(Tok::Op("*"), "`*`")?;
                    Ok(NType::Sigma(x, bx(a), bx(self.ty()?)))
                }
            }
            "All" => {
                self.expect(Tok::LParen, "`(`")?;
                let (x, l, u) = self.bounds()?;
                self.expect(Tok::Arrow, "`->`")?;
                Ok(NType::Forall(x, bx(l), bx(u), bx(self.ty()?)))
            }
            _ => {
                let x = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(NType::Mu(x, bx(self.ty()?)))
            }
        }
    }

    /// `X [>: L] [<: U] )`, after the opening parenthesis.
    fn bounds(&mut self) -> PResult<(String, NType, NType)> {
        let x = self.ident()?;
        let mut l = NType::Bot;
        let mut u = NType::Top;
        if *self.peek() == Tok::Super {
            self.bump();
            l = self.ty()?;
        }
        if *self.peek() == Tok::Sub {
            self.bump();
            u = self.ty()?;
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok((x, l, u))
    }

    /// Operand of a type operator: a prefix form extends to the right.
    fn type_operand(&mut self, lvl: u8) -> PResult<NType> {
        match self.peek() {
            Tok::Ident(s) if TYPE_PREFIX.contains(&s.as_str()) => self.prefix_type(),
            _ => self.type_level(lvl),
        }
    }

    // 1: `|`, 2: `&`, 3: `+`, all right associative.
    fn type_level(&mut self, lvl: u8) -> PResult<NType> {
        if lvl > 3 {
            return self.type_atom();
        }
        let lhs = self.type_level(lvl + 1)?;
        let matches = match lvl {
            1 => *self.peek() == Tok::Bar,
            2 => *self.peek() == Tok::Amp,
            _ => *self.peek() == Tok::Op("+"),
        };
        if !matches {
            return Ok(lhs);
        }
        self.bump();
        let rhs = self.type_operand(lvl)?;
        Ok(match lvl {
            1 => NType::Union(bx(lhs), bx(rhs)),
            2 => NType::Inter(bx(lhs), bx(rhs)),
            _ => NType::Sum(bx(lhs), bx(rhs)),
        })
    }

    fn type_atom(&mut self) -> PResult<NType> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(s) => {
                let t = match s.as_str() {
                    "Unit" => NType::Unit,
                    "True" => NType::True,
                    "False" => NType::False,
                    "Int32" => NType::Int32,
                    "Top" => NType::Top,
                    "Bot" => NType::Bot,
                    _ if is_keyword(&s) => return self.error("a type"),
                    _ => NType::Name(s, span),
                };
                self.bump();
                Ok(t)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::LBrace => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let a = self.ty()?;
                self.expect_kw("with")?;
                let p = self.term()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(NType::Refine(x, bx(a), bx(p)))
            }
            _ => self.error("a type"),
        }
    }

    // ---- terms ----

    pub fn term(&mut self) -> PResult<NTerm> {
        match self.peek() {
            Tok::Ident(s) if TERM_PREFIX.contains(&s.as_str()) => self.prefix_term(),
            _ => self.binary(1),
        }
    }

    fn prefix_term(&mut self) -> PResult<NTerm> {
        let Tok::Ident(kw) = self.bump() else { unreachable!() };
        match kw.as_str() {
            "fun" => {
                self.expect(Tok::LParen, "`(`")?;
                let x = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let a = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                Ok(NTerm::Abs(x, bx(a), bx(self.term()?)))
            }
            "Fun" => {
                self.expect(Tok::LParen, "`(`")?;
                let (x, l, u) = self.bounds()?;
                self.expect(Tok::FatArrow, "`=>`")?;
                Ok(NTerm::TAbs(x, bx(l), bx(u), bx(self.term()?)))
            }
            "let" => {
                let x = self.ident()?;
                let ann = if *self.peek() == Tok::Colon {
                    self.bump();
                    Some(bx(self.ty()?))
                } else {
                    None
                };
                self.expect(Tok::Assign, "`=`")?;
                let a = self.term()?;
                self.expect_kw("in")?;
                Ok(NTerm::Let(x, ann, bx(a), bx(self.term()?)))
            }
            "if" => {
                let c = self.term()?;
                self.expect_kw("then")?;
                let a = self.term()?;
                self.expect_kw("else")?;
                Ok(NTerm::If(bx(c), bx(a), bx(self.term()?)))
            }
            "match" => {
                let s = self.term()?;
                self.expect_kw("with")?;
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let y = self.ident()?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::FatArrow, "`=>`")?;
                    return Ok(NTerm::MatchPair(bx(s), x, y, bx(self.term()?)));
                }
                let x = self.arm("inl")?;
                let l = self.term()?;
                self.expect(Tok::Bar, "`|`")?;
                let y = self.arm("inr")?;
                let r = self.term()?;
                Ok(NTerm::MatchSum(bx(s), x, bx(l), y, bx(r)))
            }
            _ => {
                self.expect(Tok::LParen, "`(`")?;
                let init = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                let x = self.ident()?;
                self.expect(Tok::FatArrow, "`=>`")?;
                Ok(NTerm::Loop(bx(init), x, bx(self.term()?)))
            }
        }
    }

    /// `inl(x) =>`
    fn arm(&mut self, kw: &str) -> PResult<String> {
        self.expect_kw(kw)?;
        self.expect(Tok::LParen, "`(`")?;
        let x = self.ident()?;
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::FatArrow, "`=>`")?;
        Ok(x)
    }

    fn operand(&mut self, lvl: u8) -> PResult<NTerm> {
        match self.peek() {
            Tok::Ident(s) if TERM_PREFIX.contains(&s.as_str()) => self.prefix_term(),
            _ => self.binary(lvl),
        }
    }

    fn binary(&mut self, lvl: u8) -> PResult<NTerm> {
        if lvl > 5 {
            return self.app();
        }
        let mut lhs = self.binary(lvl + 1)?;
        loop {
            let Some(op) = binop(self.peek()).filter(|op| level(*op) == lvl) else {
                return Ok(lhs);
            };
            let span = self.span();
            self.bump();
            let rhs = self.operand(lvl + 1)?;
            lhs = NTerm::BinOp(op, bx(lhs), bx(rhs));
            if lvl == 3 && binop(self.peek()).is_some_and(|op| level(op) == 3) {
                return Err(Diagnostic::parse(
                    (span.0, self.span().1),
                    "comparisons do not chain; add parentheses",
                ));
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::LParen => true,
            Tok::Ident(s) => matches!(s.as_str(), "unit" | "true" | "false") || !is_keyword(s) && !self.at_main(),
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<NTerm> {
        if self.is_kw("inl") || self.is_kw("inr") {
            let left = self.is_kw("inl");
            self.bump();
            let ann = if *self.peek() == Tok::LBrack {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RBrack, "`]`")?;
                Some(bx(t))
            } else {
                None
            };
            let payload = bx(self.app()?);
            return Ok(if left {
                NTerm::Inl(ann, payload)
            } else {
                NTerm::Inr(ann, payload)
            });
        }
        let mut f = self.postfix()?;
        while self.starts_atom() {
            let a = self.postfix()?;
            f = NTerm::App(bx(f), bx(a));
        }
        Ok(f)
    }

    fn postfix(&mut self) -> PResult<NTerm> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::LBrack {
            self.bump();
            let ty = self.ty()?;
            self.expect(Tok::RBrack, "`]`")?;
            t = NTerm::TApp(bx(t), bx(ty));
        }
        Ok(t)
    }

    fn atom(&mut self) -> PResult<NTerm> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                i32::try_from(n)
                    .map(|z| NTerm::Const(Const::Int(z)))
                    .map_err(|_| Diagnostic::parse(span, "integer literal out of range"))
            }
            Tok::Op("-") => {
                self.bump();
                match self.peek().clone() {
                    Tok::Int(n) => {
                        let end = self.span().1;
                        self.bump();
                        i32::try_from(-n)
                            .map(|z| NTerm::Const(Const::Int(z)))
                            .map_err(|_| Diagnostic::parse((span.0, end), "integer literal out of range"))
                    }
                    _ => self.error("an integer literal after `-`"),
                }
            }
            Tok::Ident(s) => {
                let t = match s.as_str() {
                    "unit" => NTerm::Const(Const::Unit),
                    "true" => NTerm::Const(Const::Bool(true)),
                    "false" => NTerm::Const(Const::Bool(false)),
                    _ if is_keyword(&s) => return self.error("a term"),
                    _ => NTerm::Name(s, span),
                };
                self.bump();
                Ok(t)
            }
            Tok::LParen => {
                self.bump();
                let a = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(NTerm::Pair(bx(a), bx(b)));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(a)
            }
            _ => self.error("a term"),
        }
    }

    fn file(&mut self) -> PResult<SourceFile> {
        let mut out = SourceFile::default();
        loop {
            let start = self.span().0;
            if *self.peek() == Tok::Eof {
                return Ok(out);
            }
            if self.at_main() {
                if out.main.is_some() {
                    return Err(Diagnostic::parse(self.span(), "`main` is defined twice"));
                }
                self.bump();
                self.bump();
                let t = self.term()?;
                out.main = Some((t, (start, self.prev_end())));
                continue;
            }
            self.expect_kw("def")?;
            let name = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.ty()?;
            self.expect(Tok::Assign, "`=`")?;
            let body = self.term()?;
            out.defs.push(Def {
                name,
                ty,
                body,
                span: (start, self.prev_end()),
            });
        }
    }
}

fn parser(src: &str) -> PResult<Parser> {
    Ok(Parser { toks: lex(src)?, pos: 0 })
}

fn finish<T>(p: &mut Parser, v: T) -> PResult<T> {
    if *p.peek() == Tok::Eof {
        Ok(v)
    } else {
        p.error("end of input")
    }
}

pub fn parse_file(src: &str) -> PResult<SourceFile> {
    let mut p = parser(src)?;
    p.file()
}

pub fn parse_term(src: &str) -> PResult<NTerm> {
    let mut p = parser(src)?;
    let t = p.term()?;
    finish(&mut p, t)
}

pub fn parse_type(src: &str) -> PResult<NType> {
    let mut p = parser(src)?;
    let t = p.ty()?;
    finish(&mut p, t)
}

/// Semicolon-separated terms.
pub fn parse_terms(src: &str) -> PResult<Vec<NTerm>> {
    let mut p = parser(src)?;
    let mut out = Vec::new();
    if *p.peek() == Tok::Eof {
        return Ok(out);
    }
    loop {
        out.push(p.term()?);
        match p.peek() {
            Tok::Semi => {
                p.bump();
                if *p.peek() == Tok::Eof {
                    return Ok(out);
                }
            }
            Tok::Eof => return Ok(out),
            _ => return p.error("`;` or end of input"),
        }
    }
}
