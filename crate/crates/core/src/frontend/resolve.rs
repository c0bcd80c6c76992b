//! Name resolution into de Bruijn indices.

use super::diag::Diagnostic;
use super::parser::{NTerm, NType};
use crate::syntax::{Term, Type};

/// Names in scope, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Names {
    pub terms: Vec<String>,
    pub types: Vec<String>,
}

fn bx<T>(x: T) -> Box<T> {
    Box::new(x)
}

fn index(names: &[String], x: &str) -> Option<usize> {
    names.iter().rev().position(|n| n == x)
}

impl Names {
    pub fn new() -> Names {
        Names::default()
    }

    fn with_term<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        self.terms.push(x.to_string());
        let r = f(self);
        self.terms.pop();
        r
    }

    fn with_type<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        self.types.push(x.to_string());
        let r = f(self);
        self.types.pop();
        r
    }

    pub fn term(&mut self, t: &NTerm) -> Result<Term, Diagnostic> {
        Ok(match t {
            NTerm::Const(c) => Term::Const(*c),
            NTerm::Name(x, span) => match index(&self.terms, x) {
                Some(i) => Term::Var(i),
                None => return Err(Diagnostic::error(*span, "E-UNBOUND", format!("unbound variable `{x}`"))),
            },
            NTerm::Abs(x, a, b) => {
                let a = self.ty(a)?;
                Term::Abs(bx(a), bx(self.with_term(x, |s| s.term(b))?))
            }
            NTerm::App(f, a) => Term::app(self.term(f)?, self.term(a)?),
            NTerm::TAbs(x, l, u, b) => {
                let (l, u) = (self.ty(l)?, self.ty(u)?);
                Term::tabs(l, u, self.with_type(x, |s| s.term(b))?)
            }
            NTerm::TApp(f, a) => Term::tapp(self.term(f)?, self.ty(a)?),
            NTerm::Let(x, ann, a, b) => {
                let ann = ann.as_ref().map(|t| self.ty(t)).transpose()?;
                let a = self.term(a)?;
                Term::let_(ann, a, self.with_term(x, |s| s.term(b))?)
            }
            NTerm::Pair(a, b) => Term::pair(self.term(a)?, self.term(b)?),
            NTerm::MatchPair(s, x, y, b) => {
                let s = self.term(s)?;
                let b = self.with_term(x, |n| n.with_term(y, |n| n.term(b)))?;
                Term::match_pair(s, b)
            }
            NTerm::MatchSum(s, x, l, y, r) => {
                let s = self.term(s)?;
                let l = self.with_term(x, |n| n.term(l))?;
                let r = self.with_term(y, |n| n.term(r))?;
                Term::match_sum(s, l, r)
            }
            NTerm::Inl(ann, a) => {
                let ann = ann.as_ref().map(|t| self.ty(t)).transpose()?.unwrap_or(Type::Bot);
                Term::inl(ann, self.term(a)?)
            }
            NTerm::Inr(ann, a) => {
                let ann = ann.as_ref().map(|t| self.ty(t)).transpose()?.unwrap_or(Type::Bot);
                Term::inr(ann, self.term(a)?)
            }
            NTerm::BinOp(op, a, b) => Term::binop(*op, self.term(a)?, self.term(b)?),
            NTerm::If(c, a, b) => Term::if_(self.term(c)?, self.term(a)?, self.term(b)?),
            NTerm::Loop(i, x, b) => {
                let i = self.term(i)?;
                Term::loop_(i, self.with_term(x, |s| s.term(b))?)
            }
        })
    }

    pub fn ty(&mut self, t: &NType) -> Result<Type, Diagnostic> {
        Ok(match t {
            NType::Name(x, span) => match index(&self.types, x) {
                Some(i) => Type::Var(i),
                None => return Err(Diagnostic::error(*span, "E-UNBOUND", format!("unbound type variable `{x}`"))),
            },
            NType::Unit => Type::Unit,
            NType::True => Type::True,
            NType::False => Type::False,
            NType::Int32 => Type::Int32,
            NType::Top => Type::Top,
            NType::Bot => Type::Bot,
            NType::Pi(x, a, b) => {
                let a = self.ty(a)?;
                Type::pi(a, self.with_term(x, |s| s.ty(b))?)
            }
            NType::Sigma(x, a, b) => {
                let a = self.ty(a)?;
                Type::sigma(a, self.with_term(x, |s| s.ty(b))?)
            }
            NType::Forall(x, l, u, b) => {
                let (l, u) = (self.ty(l)?, self.ty(u)?);
                Type::forall(l, u, self.with_type(x, |s| s.ty(b))?)
            }
            NType::Sum(a, b) => Type::sum(self.ty(a)?, self.ty(b)?),
            NType::Union(a, b) => Type::union(self.ty(a)?, self.ty(b)?),
            NType::Inter(a, b) => Type::inter(self.ty(a)?, self.ty(b)?),
            NType::Refine(x, a, p) => {
                let a = self.ty(a)?;
                Type::refine(a, self.with_term(x, |s| s.term(p))?)
            }
            NType::Mu(x, b) => Type::mu(self.with_type(x, |s| s.ty(b))?),
        })
    }
}
