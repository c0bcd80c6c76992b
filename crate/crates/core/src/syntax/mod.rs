//! Abstract syntax of the calculus.
//!
//! Terms and types are mutually recursive: a refinement type embeds a term
//! as its predicate. Both use de Bruijn indices, with two independent index
//! spaces. Term binders (`Abs`, `Let`, the match arms, `Loop`, and the
//! binders of `Pi`, `Sigma` and `Refine`) only shift term-variable indices;
//! type binders (`TAbs`, `Forall`, `Mu`) only shift type-variable indices.

mod avoid;
pub mod pretty;
mod subst;

use std::fmt;

pub use avoid::{avoid, firstorder, spos};
pub use subst::{
    free_in_term, free_in_type, lift_term, lift_type, shift_term, shift_type, subst_term_in_term,
    subst_term_in_type, subst_type_in_term, subst_type_in_type, Namespace, ScopeError, SubstMode,
};

/// A constant of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Const {
    Unit,
    Bool(bool),
    Int(i32),
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const::Unit => f.write_str("unit"),
            Const::Bool(b) => write!(f, "{b}"),
            Const::Int(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Ge,
    Gt,
    And,
    Or,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl Op {
    pub const ALL: [Op; 13] = [
        Op::Eq,
        Op::Ne,
        Op::Lt,
        Op::Le,
        Op::Ge,
        Op::Gt,
        Op::And,
        Op::Or,
        Op::Add,
        Op::Sub,
        Op::Mul,
        Op::Div,
        Op::Mod,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Eq => "==",
            Op::Ne => "!=",
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Ge => ">=",
            Op::Gt => ">",
            Op::And => "&&",
            Op::Or => "||",
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
            Op::Div => "/",
            Op::Mod => "%",
        }
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, Op::Add | Op::Sub | Op::Mul | Op::Div | Op::Mod)
    }

    pub fn is_comparison(self) -> bool {
        matches!(self, Op::Lt | Op::Le | Op::Ge | Op::Gt)
    }

    pub fn is_equality(self) -> bool {
        matches!(self, Op::Eq | Op::Ne)
    }

    pub fn is_logical(self) -> bool {
        matches!(self, Op::And | Op::Or)
    }

    /// Binding strength, higher binds tighter (Scala ordering).
    pub fn precedence(self) -> u8 {
        match self {
            Op::Or => 1,
            Op::And => 2,
            Op::Eq | Op::Ne => 3,
            Op::Lt | Op::Le | Op::Ge | Op::Gt => 4,
            Op::Add | Op::Sub => 5,
            Op::Mul | Op::Div | Op::Mod => 6,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(Const),
    Var(usize),
    /// `fun(x: A) => body`
    Abs(Box<Type>, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `Fun(X >: lower <: upper) => body`
    TAbs(Box<Type>, Box<Type>, Box<Term>),
    TApp(Box<Term>, Box<Type>),
    /// `let x: A = bound in body`; the annotation is optional in the
    /// concrete syntax, in which case the bound term's type is synthesized.
    Let(Option<Box<Type>>, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    /// `match scrutinee with (x, y) => body`; `y` is index 0 in the body.
    MatchPair(Box<Term>, Box<Term>),
    /// `match scrutinee with inl(x) => left | inr(y) => right`
    MatchSum(Box<Term>, Box<Term>, Box<Term>),
    /// `inl[B] a` carries the right-hand type of the sum.
    Inl(Box<Type>, Box<Term>),
    /// `inr[A] a` carries the left-hand type of the sum.
    Inr(Box<Type>, Box<Term>),
    BinOp(Op, Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    /// `loop(init) x => body`
    Loop(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Var(usize),
    Unit,
    True,
    False,
    Int32,
    Top,
    Bot,
    /// Dependent function; the codomain binds one term variable.
    Pi(Box<Type>, Box<Type>),
    /// Bounded quantifier; the body binds one type variable.
    Forall(Box<Type>, Box<Type>, Box<Type>),
    /// Dependent pair; the second component binds one term variable.
    Sigma(Box<Type>, Box<Type>),
    Sum(Box<Type>, Box<Type>),
    /// `{x: base with predicate}`; the predicate binds one term variable.
    Refine(Box<Type>, Box<Term>),
    Union(Box<Type>, Box<Type>),
    Inter(Box<Type>, Box<Type>),
    /// Equi-recursive type; the body binds one type variable.
    Mu(Box<Type>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// One side of an equality fact, tagged with the number of term and type
/// bindings that were in scope when the fact was recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactSide {
    pub term_depth: usize,
    pub type_depth: usize,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextEntry {
    Term(Type),
    Bound { lower: Type, upper: Type },
    Fact { lhs: FactSide, rhs: FactSide },
}

// Small constructors used pervasively by the checker, the tests and the
// generators. They keep the boxed trees readable.

impl Term {
    pub fn unit() -> Term {
        Term::Const(Const::Unit)
    }
    pub fn bool(b: bool) -> Term {
        Term::Const(Const::Bool(b))
    }
    pub fn int(z: i32) -> Term {
        Term::Const(Const::Int(z))
    }
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }
    pub fn abs(ann: Type, body: Term) -> Term {
        Term::Abs(Box::new(ann), Box::new(body))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }
    pub fn tabs(lower: Type, upper: Type, body: Term) -> Term {
        Term::TAbs(Box::new(lower), Box::new(upper), Box::new(body))
    }
    pub fn tapp(f: Term, ty: Type) -> Term {
        Term::TApp(Box::new(f), Box::new(ty))
    }
    pub fn let_(ann: Option<Type>, bound: Term, body: Term) -> Term {
        Term::Let(ann.map(Box::new), Box::new(bound), Box::new(body))
    }
    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }
    pub fn match_pair(scrutinee: Term, body: Term) -> Term {
        Term::MatchPair(Box::new(scrutinee), Box::new(body))
    }
    pub fn match_sum(scrutinee: Term, left: Term, right: Term) -> Term {
        Term::MatchSum(Box::new(scrutinee), Box::new(left), Box::new(right))
    }
    pub fn inl(other: Type, payload: Term) -> Term {
        Term::Inl(Box::new(other), Box::new(payload))
    }
    pub fn inr(other: Type, payload: Term) -> Term {
        Term::Inr(Box::new(other), Box::new(payload))
    }
    pub fn binop(op: Op, l: Term, r: Term) -> Term {
        Term::BinOp(op, Box::new(l), Box::new(r))
    }
    pub fn if_(c: Term, t: Term, e: Term) -> Term {
        Term::If(Box::new(c), Box::new(t), Box::new(e))
    }
    pub fn loop_(init: Term, body: Term) -> Term {
        Term::Loop(Box::new(init), Box::new(body))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Does the term contain a division or modulo operation anywhere,
    /// including inside types it mentions?
    pub fn mentions_division(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| {
            if let Term::BinOp(Op::Div | Op::Mod, _, _) = t {
                found = true;
            }
        });
        found
    }

    /// Pre-order traversal over every term node, descending into the
    /// predicates of types the term mentions.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Const(_) | Term::Var(_) => {}
            Term::Abs(a, b) => {
                a.visit_terms(f);
                b.visit(f);
            }
            Term::TAbs(l, u, b) => {
                l.visit_terms(f);
                u.visit_terms(f);
                b.visit(f);
            }
            Term::TApp(t, a) => {
                t.visit(f);
                a.visit_terms(f);
            }
            Term::Let(a, t, b) => {
                if let Some(a) = a {
                    a.visit_terms(f);
                }
                t.visit(f);
                b.visit(f);
            }
            Term::Inl(a, t) | Term::Inr(a, t) => {
                a.visit_terms(f);
                t.visit(f);
            }
            Term::App(a, b)
            | Term::Pair(a, b)
            | Term::MatchPair(a, b)
            | Term::BinOp(_, a, b)
            | Term::Loop(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::MatchSum(a, b, c) | Term::If(a, b, c) => {
                a.visit(f);
                b.visit(f);
                c.visit(f);
            }
        }
    }

    /// Number of syntax nodes, counting types.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl Type {
    pub fn var(i: usize) -> Type {
        Type::Var(i)
    }
    pub fn pi(a: Type, b: Type) -> Type {
        Type::Pi(Box::new(a), Box::new(b))
    }
    pub fn forall(l: Type, u: Type, b: Type) -> Type {
        Type::Forall(Box::new(l), Box::new(u), Box::new(b))
    }
    pub fn sigma(a: Type, b: Type) -> Type {
        Type::Sigma(Box::new(a), Box::new(b))
    }
    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Box::new(a), Box::new(b))
    }
    pub fn refine(base: Type, pred: Term) -> Type {
        Type::Refine(Box::new(base), Box::new(pred))
    }
    pub fn union(a: Type, b: Type) -> Type {
        Type::Union(Box::new(a), Box::new(b))
    }
    pub fn inter(a: Type, b: Type) -> Type {
        Type::Inter(Box::new(a), Box::new(b))
    }
    pub fn mu(body: Type) -> Type {
        Type::Mu(Box::new(body))
    }
    /// `True ∨ False`
    pub fn bool() -> Type {
        Type::union(Type::True, Type::False)
    }

    /// Visit every term embedded in this type (refinement predicates).
    pub fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Type::Var(_)
            | Type::Unit
            | Type::True
            | Type::False
            | Type::Int32
            | Type::Top
            | Type::Bot => {}
            Type::Pi(a, b)
            | Type::Sigma(a, b)
            | Type::Sum(a, b)
            | Type::Union(a, b)
            | Type::Inter(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Type::Forall(l, u, b) => {
                l.visit_terms(f);
                u.visit_terms(f);
                b.visit_terms(f);
            }
            Type::Refine(a, p) => {
                a.visit_terms(f);
                p.visit(f);
            }
            Type::Mu(b) => b.visit_terms(f),
        }
    }

    /// Unfold `μX. A` into `A[X ↦ μX. A]`. Returns `None` for non-`Mu` types.
    pub fn unfold(&self) -> Option<Type> {
        match self {
            Type::Mu(body) => Some(subst_type_in_type(body, 0, self)),
            _ => None,
        }
    }
}
