//! Predicates in the solver's fragment, before insertion into an e-graph.

use std::fmt;

use crate::syntax::{Const, Op, Term};

/// A predicate over free atoms. Lambda binders use de Bruijn `Bound`
/// indices; free context variables are `Atom`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PExpr {
    Const(Const),
    Atom(u32),
    Bound(u32),
    Bin(Op, Box<PExpr>, Box<PExpr>),
    Pair(Box<PExpr>, Box<PExpr>),
    Inl(Box<PExpr>),
    Inr(Box<PExpr>),
    Proj1(Box<PExpr>),
    Proj2(Box<PExpr>),
    Lambda(Box<PExpr>),
    Apply(Box<PExpr>, Box<PExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("{0} is outside the predicate fragment")]
    OutsideFragment(&'static str),
    #[error("variable {0} has no binding")]
    Unbound(usize),
}

impl PExpr {
    pub fn bin(op: Op, a: PExpr, b: PExpr) -> PExpr {
        PExpr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn int(z: i32) -> PExpr {
        PExpr::Const(Const::Int(z))
    }

    pub fn bool(b: bool) -> PExpr {
        PExpr::Const(Const::Bool(b))
    }

    /// Shift loose bound variables at or above `cutoff` by `amount`.
    pub fn shift(&self, amount: u32, cutoff: u32) -> PExpr {
        let bx = |e: &PExpr, c: u32| Box::new(e.shift(amount, c));
        match self {
            PExpr::Const(_) | PExpr::Atom(_) => self.clone(),
            PExpr::Bound(k) if *k >= cutoff => PExpr::Bound(k + amount),
            PExpr::Bound(_) => self.clone(),
            PExpr::Bin(op, a, b) => PExpr::Bin(*op, bx(a, cutoff), bx(b, cutoff)),
            PExpr::Pair(a, b) => PExpr::Pair(bx(a, cutoff), bx(b, cutoff)),
            PExpr::Apply(a, b) => PExpr::Apply(bx(a, cutoff), bx(b, cutoff)),
            PExpr::Inl(a) => PExpr::Inl(bx(a, cutoff)),
            PExpr::Inr(a) => PExpr::Inr(bx(a, cutoff)),
            PExpr::Proj1(a) => PExpr::Proj1(bx(a, cutoff)),
            PExpr::Proj2(a) => PExpr::Proj2(bx(a, cutoff)),
            PExpr::Lambda(a) => PExpr::Lambda(bx(a, cutoff + 1)),
        }
    }

    /// Convert a term whose free variable `i` denotes `env[i]`.
    pub fn from_term(t: &Term, env: &[PExpr]) -> Result<PExpr, ConvertError> {
        let bx = Box::new;
        Ok(match t {
            Term::Const(c) => PExpr::Const(*c),
            Term::Var(i) => env.get(*i).cloned().ok_or(ConvertError::Unbound(*i))?,
            Term::BinOp(op, a, b) => PExpr::Bin(*op, bx(Self::from_term(a, env)?), bx(Self::from_term(b, env)?)),
            Term::Pair(a, b) => PExpr::Pair(bx(Self::from_term(a, env)?), bx(Self::from_term(b, env)?)),
            Term::Inl(_, a) => PExpr::Inl(bx(Self::from_term(a, env)?)),
            Term::Inr(_, a) => PExpr::Inr(bx(Self::from_term(a, env)?)),
            Term::App(f, a) => PExpr::Apply(bx(Self::from_term(f, env)?), bx(Self::from_term(a, env)?)),
            Term::Abs(_, body) => {
                let mut inner = Vec::with_capacity(env.len() + 1);
                inner.push(PExpr::Bound(0));
                inner.extend(env.iter().map(|e| e.shift(1, 0)));
                PExpr::Lambda(bx(Self::from_term(body, &inner)?))
            }
            Term::Let(_, bound, body) => {
                let b = Self::from_term(bound, env)?;
                let mut inner = Vec::with_capacity(env.len() + 1);
                inner.push(b);
                inner.extend_from_slice(env);
                Self::from_term(body, &inner)?
            }
            Term::MatchPair(s, body) => {
                let s = Self::from_term(s, env)?;
                let mut inner = Vec::with_capacity(env.len() + 2);
                inner.push(PExpr::Proj2(bx(s.clone())));
                inner.push(PExpr::Proj1(bx(s)));
                inner.extend_from_slice(env);
                Self::from_term(body, &inner)?
            }
            Term::TAbs(..) => return Err(ConvertError::OutsideFragment("type abstraction")),
            Term::TApp(..) => return Err(ConvertError::OutsideFragment("type application")),
            Term::MatchSum(..) => return Err(ConvertError::OutsideFragment("sum match")),
            Term::If(..) => return Err(ConvertError::OutsideFragment("conditional")),
            Term::Loop(..) => return Err(ConvertError::OutsideFragment("loop")),
        })
    }

    /// Visit every node that is evaluated whenever the whole expression is,
    /// i.e. everything outside lambda bodies.
    pub fn visit_strict(&self, f: &mut impl FnMut(&PExpr)) {
        f(self);
        match self {
            PExpr::Const(_) | PExpr::Atom(_) | PExpr::Bound(_) | PExpr::Lambda(_) => {}
            PExpr::Bin(_, a, b) | PExpr::Pair(a, b) | PExpr::Apply(a, b) => {
                a.visit_strict(f);
                b.visit_strict(f);
            }
            PExpr::Inl(a) | PExpr::Inr(a) | PExpr::Proj1(a) | PExpr::Proj2(a) => a.visit_strict(f),
        }
    }

    pub fn contains_division(&self) -> bool {
        match self {
            PExpr::Bin(Op::Div | Op::Mod, _, _) => true,
            PExpr::Const(_) | PExpr::Atom(_) | PExpr::Bound(_) => false,
            PExpr::Bin(_, a, b) | PExpr::Pair(a, b) | PExpr::Apply(a, b) => {
                a.contains_division() || b.contains_division()
            }
            PExpr::Inl(a) | PExpr::Inr(a) | PExpr::Proj1(a) | PExpr::Proj2(a) | PExpr::Lambda(a) => {
                a.contains_division()
            }
        }
    }

    pub fn contains_apply(&self) -> bool {
        match self {
            PExpr::Apply(..) => true,
            PExpr::Const(_) | PExpr::Atom(_) | PExpr::Bound(_) => false,
            PExpr::Bin(_, a, b) | PExpr::Pair(a, b) => a.contains_apply() || b.contains_apply(),
            PExpr::Inl(a) | PExpr::Inr(a) | PExpr::Proj1(a) | PExpr::Proj2(a) | PExpr::Lambda(a) => {
                a.contains_apply()
            }
        }
    }

    /// Split top-level conjunctions.
    pub fn conjuncts(self) -> Vec<PExpr> {
        match self {
            PExpr::Bin(Op::And, a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            other => vec![other],
        }
    }

    /// Split top-level disjunctions.
    pub fn disjuncts(self) -> Vec<PExpr> {
        match self {
            PExpr::Bin(Op::Or, a, b) => {
                let mut v = a.disjuncts();
                v.extend(b.disjuncts());
                v
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for PExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExpr::Const(c) => write!(f, "{c}"),
            PExpr::Atom(a) => write!(f, "a{a}"),
            PExpr::Bound(k) => write!(f, "^{k}"),
            PExpr::Bin(op, a, b) => write!(f, "({a} {op} {b})"),
            PExpr::Pair(a, b) => write!(f, "({a}, {b})"),
            PExpr::Inl(a) => write!(f, "inl({a})"),
            PExpr::Inr(a) => write!(f, "inr({a})"),
            PExpr::Proj1(a) => write!(f, "fst({a})"),
            PExpr::Proj2(a) => write!(f, "snd({a})"),
            PExpr::Lambda(a) => write!(f, "lam({a})"),
            PExpr::Apply(a, b) => write!(f, "({a} {b})"),
        }
    }
}
