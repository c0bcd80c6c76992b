//! Algorithmic typing and subtyping.
//!
//! Inference is syntax directed. Checking pushes expected types through
//! binders and constructors and falls back to inference plus subsumption,
//! retrying with a selfified type when the plain attempt fails.
//! Implications between refinement predicates go to the entailment solver
//! through [`TypingContext::query`].

pub mod anf;
pub mod compat;
mod context;
mod subtype;

use std::fmt;

pub use anf::{anf_transform, anf_type, is_anf};
pub use compat::compat_result;
pub use context::{atoms, TypingContext};

use crate::solver::{PExpr, SolverConfig};
use crate::syntax::pretty::{show_term_in, show_type_in, Scope};
use crate::syntax::{
    avoid, firstorder, lift_term, lift_type, spos, subst_term_in_type, subst_type_in_type, Const, Op, Polarity,
    SubstMode, Term, Type,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    UnboundVariable,
    NotAFunction,
    NotAPair,
    NotASum,
    ArgumentNotVariable,
    BoundViolation,
    SubtypeFailure,
    BinopIncompat,
    PredicateNotEntailed,
    IllFormedMu,
}

impl ErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::UnboundVariable => "unbound-variable",
            ErrorKind::NotAFunction => "not-a-function",
            ErrorKind::NotAPair => "not-a-pair",
            ErrorKind::NotASum => "not-a-sum",
            ErrorKind::ArgumentNotVariable => "argument-not-variable",
            ErrorKind::BoundViolation => "bound-violation",
            ErrorKind::SubtypeFailure => "subtype-failure",
            ErrorKind::BinopIncompat => "binop-incompat",
            ErrorKind::PredicateNotEntailed => "predicate-not-entailed",
            ErrorKind::IllFormedMu => "ill-formed-mu",
        }
    }

    /// Stable diagnostic code.
    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::UnboundVariable => "E-UNBOUND",
            ErrorKind::NotAFunction => "E-NOT-FUNCTION",
            ErrorKind::NotAPair => "E-NOT-PAIR",
            ErrorKind::NotASum => "E-NOT-SUM",
            ErrorKind::ArgumentNotVariable => "E-ANF",
            ErrorKind::BoundViolation => "E-BOUND",
            ErrorKind::SubtypeFailure => "E-SUBTYPE",
            ErrorKind::BinopIncompat => "E-BINOP",
            ErrorKind::PredicateNotEntailed => "E-ENTAIL",
            ErrorKind::IllFormedMu => "E-MU",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    pub kind: ErrorKind,
    /// Byte range in the source, when known.
    pub span: Option<(usize, usize)>,
    pub expected: Option<Type>,
    pub actual: Option<Type>,
    pub message: String,
    /// Term and type depth of the context the types live in.
    pub depth: (usize, usize),
}

impl TypeError {
    fn new(kind: ErrorKind, ctx: &TypingContext, message: impl Into<String>) -> TypeError {
        TypeError {
            kind,
            span: None,
            expected: None,
            actual: None,
            message: message.into(),
            depth: (ctx.term_depth(), ctx.type_depth()),
        }
    }

    fn types(mut self, expected: &Type, actual: &Type) -> TypeError {
        self.expected = Some(expected.clone());
        self.actual = Some(actual.clone());
        self
    }

    pub fn with_span(mut self, span: (usize, usize)) -> TypeError {
        self.span.get_or_insert(span);
        self
    }

    fn scope(&self) -> Scope {
        Scope::generated(self.depth.0, self.depth.1)
    }

    pub fn expected_text(&self) -> Option<String> {
        self.expected.as_ref().map(|t| show_type_in(t, &mut self.scope()))
    }

    pub fn actual_text(&self) -> Option<String> {
        self.actual.as_ref().map(|t| show_type_in(t, &mut self.scope()))
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for TypeError {}

fn show(ctx: &TypingContext, ty: &Type) -> String {
    show_type_in(ty, &mut Scope::generated(ctx.term_depth(), ctx.type_depth()))
}

fn show_t(ctx: &TypingContext, t: &Term) -> String {
    show_term_in(t, &mut Scope::generated(ctx.term_depth(), ctx.type_depth()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Pi,
    Forall,
    Sigma,
    Sum,
}

/// Checker state for one run: solver settings, the optional solver trace
/// and the per-query subtyping bookkeeping.
#[derive(Clone, Debug, Default)]
pub struct Checker {
    pub solver: SolverConfig,
    pub trace: Option<Vec<String>>,
    /// Number of entailment queries issued.
    pub queries: usize,
    sub: subtype::SubState,
}

impl Checker {
    pub fn new(solver: SolverConfig) -> Checker {
        Checker {
            solver,
            ..Checker::default()
        }
    }

    pub fn with_trace(mut self) -> Checker {
        self.trace = Some(Vec::new());
        self
    }

    fn run<T>(&mut self, ctx: &mut TypingContext, f: impl FnOnce(&mut Self, &mut TypingContext) -> T) -> T {
        let mark = ctx.len();
        let out = f(self, ctx);
        ctx.truncate(mark);
        out
    }

    pub fn infer(&mut self, ctx: &mut TypingContext, t: &Term) -> Result<Type, TypeError> {
        match t {
            Term::Const(Const::Unit) => Ok(Type::Unit),
            Term::Const(Const::Bool(true)) => Ok(Type::True),
            Term::Const(Const::Bool(false)) => Ok(Type::False),
            Term::Const(Const::Int(_)) => Ok(Type::Int32),
            Term::Var(i) => ctx
                .lookup_term(*i)
                .ok_or_else(|| TypeError::new(ErrorKind::UnboundVariable, ctx, format!("variable {i} is not bound"))),
            Term::Abs(a, body) => {
                self.wf_type(ctx, a)?;
                let b = self.run(ctx, |me, ctx| {
                    ctx.push_term((**a).clone());
                    me.infer(ctx, body)
                })?;
                Ok(Type::pi((**a).clone(), b))
            }
            Term::App(f, y) => {
                if !y.is_var() {
                    return Err(TypeError::new(
                        ErrorKind::ArgumentNotVariable,
                        ctx,
                        format!("the argument {} must be a variable", show_t(ctx, y)),
                    ));
                }
                let ft = self.infer(ctx, f)?;
                let Some(Type::Pi(a, b)) = self.expose(ctx, &ft, Shape::Pi) else {
                    return Err(TypeError::new(
                        ErrorKind::NotAFunction,
                        ctx,
                        format!("{} has type {}, not a function type", show_t(ctx, f), show(ctx, &ft)),
                    ));
                };
                self.check(ctx, y, &a)?;
                Ok(subst_term_in_type(&b, 0, y, SubstMode::Close))
            }
            Term::TAbs(l, u, body) => {
                self.wf_type(ctx, l)?;
                self.wf_type(ctx, u)?;
                let b = self.run(ctx, |me, ctx| {
                    ctx.push_bound((**l).clone(), (**u).clone());
                    me.infer(ctx, body)
                })?;
                Ok(Type::forall((**l).clone(), (**u).clone(), b))
            }
            Term::TApp(f, arg) => {
                self.wf_type(ctx, arg)?;
                let ft = self.infer(ctx, f)?;
                let Some(Type::Forall(l, u, b)) = self.expose(ctx, &ft, Shape::Forall) else {
                    return Err(TypeError::new(
                        ErrorKind::NotAFunction,
                        ctx,
                        format!("{} has type {}, not a polymorphic type", show_t(ctx, f), show(ctx, &ft)),
                    ));
                };
                for (lo, hi) in [(&*l, &**arg), (&**arg, &*u)] {
                    if let Err(e) = self.subtype(ctx, lo, hi) {
                        let msg = format!("type argument violates its bound: {}", e.message);
                        return Err(TypeError::new(ErrorKind::BoundViolation, ctx, msg).types(hi, lo));
                    }
                }
                Ok(subst_type_in_type(&b, 0, arg))
            }
            Term::Let(ann, a, body) => {
                let at = self.let_type(ctx, ann.as_deref(), a)?;
                let b = self.run(ctx, |me, ctx| {
                    me.bind_let(ctx, at, a);
                    me.infer(ctx, body)
                })?;
                Ok(avoid(&b, 0, Polarity::Positive))
            }
            Term::Pair(y, second) => {
                if !y.is_var() {
                    return Err(TypeError::new(
                        ErrorKind::ArgumentNotVariable,
                        ctx,
                        format!("the first component {} must be a variable", show_t(ctx, y)),
                    ));
                }
                let a = self.infer(ctx, y)?;
                let b = self.infer(ctx, second)?;
                Ok(Type::sigma(a, lift_type(&b, 1, 0)))
            }
            Term::MatchPair(s, body) => {
                let (a, b) = self.scrutinee_pair(ctx, s)?;
                let c = self.run(ctx, |me, ctx| {
                    ctx.push_term(a);
                    ctx.push_term(b);
                    me.infer(ctx, body)
                })?;
                Ok(avoid(&avoid(&c, 0, Polarity::Positive), 0, Polarity::Positive))
            }
            Term::MatchSum(s, left, right) => {
                let (a1, a2) = self.scrutinee_sum(ctx, s)?;
                let b1 = self.run(ctx, |me, ctx| {
                    me.bind_arm(ctx, a1, s, true);
                    me.infer(ctx, left)
                })?;
                let b2 = self.run(ctx, |me, ctx| {
                    me.bind_arm(ctx, a2, s, false);
                    me.infer(ctx, right)
                })?;
                Ok(Type::union(
                    avoid(&b1, 0, Polarity::Positive),
                    avoid(&b2, 0, Polarity::Positive),
                ))
            }
            Term::Inl(other, a) => {
                self.wf_type(ctx, other)?;
                Ok(Type::sum(self.infer(ctx, a)?, (**other).clone()))
            }
            Term::Inr(other, b) => {
                self.wf_type(ctx, other)?;
                Ok(Type::sum((**other).clone(), self.infer(ctx, b)?))
            }
            Term::BinOp(op, a, b) => {
                let at = self.infer(ctx, a)?;
                let bt = self.infer(ctx, b)?;
                let (ca, cb) = (self.classify(ctx, &at), self.classify(ctx, &bt));
                match (ca, cb) {
                    (Some(ca), Some(cb)) if ca == cb => compat_result(*op, &ca).ok_or_else(|| {
                        TypeError::new(
                            ErrorKind::BinopIncompat,
                            ctx,
                            format!("operator {} is not defined on {}", op.symbol(), show(ctx, &ca)),
                        )
                        .types(&ca, &ca)
                    }),
                    _ => Err(TypeError::new(
                        ErrorKind::BinopIncompat,
                        ctx,
                        format!(
                            "operator {} applied to {} and {}",
                            op.symbol(),
                            show(ctx, &at),
                            show(ctx, &bt)
                        ),
                    )
                    .types(&at, &bt)),
                }
            }
            Term::If(c, a, b) => {
                self.check(ctx, c, &Type::bool())?;
                let d = ctx.term_depth();
                let ta = self.run(ctx, |me, ctx| {
                    ctx.push_fact((d, (**c).clone()), (d, Term::bool(true)));
                    me.infer(ctx, a)
                })?;
                let tb = self.run(ctx, |me, ctx| {
                    ctx.push_fact((d, (**c).clone()), (d, Term::bool(false)));
                    me.infer(ctx, b)
                })?;
                Ok(Type::union(ta, tb))
            }
            Term::Loop(init, body) => {
                let a = self.infer(ctx, init)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_term(a.clone());
                    let r = me.infer(ctx, body)?;
                    let Some(Type::Sum(cont, done)) = me.expose(ctx, &r, Shape::Sum) else {
                        return Err(TypeError::new(
                            ErrorKind::NotASum,
                            ctx,
                            format!("loop body has type {}, not a sum", show(ctx, &r)),
                        ));
                    };
                    me.subtype(ctx, &cont, &lift_type(&a, 1, 0))?;
                    Ok(avoid(&done, 0, Polarity::Positive))
                })
            }
        }
    }

    pub fn check(&mut self, ctx: &mut TypingContext, t: &Term, expected: &Type) -> Result<(), TypeError> {
        match (t, expected) {
            (_, Type::Top) => self.infer(ctx, t).map(drop),
            (_, Type::Inter(e1, e2)) => {
                self.check(ctx, t, e1)?;
                self.check(ctx, t, e2)
            }
            (Term::Let(ann, a, body), _) => {
                let at = self.let_type(ctx, ann.as_deref(), a)?;
                self.run(ctx, |me, ctx| {
                    me.bind_let(ctx, at, a);
                    me.check(ctx, body, &lift_type(expected, 1, 0))
                })
            }
            (Term::If(c, a, b), _) => {
                self.check(ctx, c, &Type::bool())?;
                let d = ctx.term_depth();
                self.run(ctx, |me, ctx| {
                    ctx.push_fact((d, (**c).clone()), (d, Term::bool(true)));
                    me.check(ctx, a, expected)
                })?;
                self.run(ctx, |me, ctx| {
                    ctx.push_fact((d, (**c).clone()), (d, Term::bool(false)));
                    me.check(ctx, b, expected)
                })
            }
            (Term::MatchPair(s, body), _) => {
                let (a, b) = self.scrutinee_pair(ctx, s)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_term(a);
                    ctx.push_term(b);
                    me.check(ctx, body, &lift_type(expected, 2, 0))
                })
            }
            (Term::MatchSum(s, left, right), _) => {
                let (a1, a2) = self.scrutinee_sum(ctx, s)?;
                let e = lift_type(expected, 1, 0);
                self.run(ctx, |me, ctx| {
                    me.bind_arm(ctx, a1, s, true);
                    me.check(ctx, left, &e)
                })?;
                self.run(ctx, |me, ctx| {
                    me.bind_arm(ctx, a2, s, false);
                    me.check(ctx, right, &e)
                })
            }
            (Term::Loop(init, body), _) => {
                let a = self.infer(ctx, init)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_term(a.clone());
                    let want = Type::sum(lift_type(&a, 1, 0), lift_type(expected, 1, 0));
                    me.check(ctx, body, &want)
                })
            }
            (Term::Abs(ann, body), Type::Pi(dom, cod)) => {
                self.wf_type(ctx, ann)?;
                self.subtype(ctx, dom, ann)?;
                // The body only ever sees arguments of the expected domain.
                self.run(ctx, |me, ctx| {
                    ctx.push_term((**dom).clone());
                    me.check(ctx, body, cod)
                })
            }
            (Term::TAbs(l, u, body), Type::Forall(el, eu, eb)) => {
                self.wf_type(ctx, l)?;
                self.wf_type(ctx, u)?;
                self.subtype(ctx, l, el)?;
                self.subtype(ctx, eu, u)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_bound((**el).clone(), (**eu).clone());
                    me.check(ctx, body, eb)
                })
            }
            (Term::Pair(y, second), Type::Sigma(ea, eb)) if y.is_var() => {
                self.check(ctx, y, ea)?;
                self.check(ctx, second, &subst_term_in_type(eb, 0, y, SubstMode::Close))
            }
            (Term::Inl(other, a), Type::Sum(ea, _)) => {
                self.wf_type(ctx, other)?;
                self.check(ctx, a, ea)
            }
            (Term::Inr(other, b), Type::Sum(_, eb)) => {
                self.wf_type(ctx, other)?;
                self.check(ctx, b, eb)
            }
            (Term::Inl(..) | Term::Inr(..) | Term::Pair(..), Type::Mu(_)) => {
                let mut e = expected.clone();
                for _ in 0..subtype::MAX_UNFOLDS {
                    match e {
                        Type::Mu(ref body) if spos(0, body) => e = e.unfold().expect("mu"),
                        Type::Mu(_) => {
                            return Err(TypeError::new(
                                ErrorKind::IllFormedMu,
                                ctx,
                                format!("{} is not strictly positive in its variable", show(ctx, &e)),
                            ))
                        }
                        _ => return self.check(ctx, t, &e),
                    }
                }
                self.fallback(ctx, t, expected)
            }
            (Term::Inl(..) | Term::Inr(..) | Term::Pair(..) | Term::Abs(..) | Term::TAbs(..), Type::Union(e1, e2)) => {
                if self.check(ctx, t, e1).is_ok() || self.check(ctx, t, e2).is_ok() {
                    return Ok(());
                }
                self.fallback(ctx, t, expected)
            }
            _ => self.fallback(ctx, t, expected),
        }
    }

    /// Subsumption, retried with the selfified type `{x: S | x == t}`.
    fn fallback(&mut self, ctx: &mut TypingContext, t: &Term, expected: &Type) -> Result<(), TypeError> {
        let s = self.infer(ctx, t)?;
        let plain = match self.subtype(ctx, &s, expected) {
            Ok(()) => return Ok(()),
            Err(e) => e,
        };
        // Variables are selfified whatever their type: the equation is used
        // only as a solver fact, never evaluated.
        let in_fragment = PExpr::from_term(t, &atoms(ctx.term_depth())).is_ok();
        if !(t.is_var() || (firstorder(&s) && in_fragment)) {
            return Err(plain);
        }
        let selfified = Type::refine(s.clone(), Term::binop(Op::Eq, Term::var(0), lift_term(t, 1, 0)));
        self.subtype(ctx, &selfified, expected).map_err(|e| {
            let mut e = e;
            e.message = format!("{}; with selfification: {}", plain.message, e.message);
            if e.expected.is_none() {
                e = e.types(expected, &s);
            }
            e
        })
    }

    fn let_type(&mut self, ctx: &mut TypingContext, ann: Option<&Type>, a: &Term) -> Result<Type, TypeError> {
        match ann {
            Some(ann) => {
                self.wf_type(ctx, ann)?;
                self.check(ctx, a, ann)?;
                Ok(ann.clone())
            }
            None => self.infer(ctx, a),
        }
    }

    /// Bind `x : ty` with the fact `x ∼ a`.
    fn bind_let(&mut self, ctx: &mut TypingContext, ty: Type, a: &Term) {
        let d = ctx.term_depth();
        ctx.push_term(ty);
        ctx.push_fact((d + 1, Term::var(0)), (d, a.clone()));
    }

    /// Bind the payload of a sum arm with the fact `s ∼ inl(x)` or `s ∼ inr(x)`.
    fn bind_arm(&mut self, ctx: &mut TypingContext, ty: Type, s: &Term, left: bool) {
        let d = ctx.term_depth();
        ctx.push_term(ty);
        let inj = if left {
            Term::inl(Type::Bot, Term::var(0))
        } else {
            Term::inr(Type::Bot, Term::var(0))
        };
        ctx.push_fact((d, s.clone()), (d + 1, inj));
    }

    fn scrutinee_pair(&mut self, ctx: &mut TypingContext, s: &Term) -> Result<(Type, Type), TypeError> {
        let st = self.infer(ctx, s)?;
        match self.expose(ctx, &st, Shape::Sigma) {
            Some(Type::Sigma(a, b)) => Ok((*a, *b)),
            _ => Err(TypeError::new(
                ErrorKind::NotAPair,
                ctx,
                format!("{} has type {}, not a pair type", show_t(ctx, s), show(ctx, &st)),
            )),
        }
    }

    fn scrutinee_sum(&mut self, ctx: &mut TypingContext, s: &Term) -> Result<(Type, Type), TypeError> {
        let st = self.infer(ctx, s)?;
        match self.expose(ctx, &st, Shape::Sum) {
            Some(Type::Sum(a, b)) => Ok((*a, *b)),
            _ => Err(TypeError::new(
                ErrorKind::NotASum,
                ctx,
                format!("{} has type {}, not a sum type", show_t(ctx, s), show(ctx, &st)),
            )),
        }
    }

    /// Find a supertype of `ty` with the given outermost constructor.
    fn expose(&mut self, ctx: &TypingContext, ty: &Type, shape: Shape) -> Option<Type> {
        self.expose_n(ctx, ty, shape, subtype::MAX_UNFOLDS)
    }

    fn expose_n(&mut self, ctx: &TypingContext, ty: &Type, shape: Shape, fuel: usize) -> Option<Type> {
        if fuel == 0 {
            return None;
        }
        let again = |me: &mut Self, t: &Type| me.expose_n(ctx, t, shape, fuel - 1);
        match (ty, shape) {
            (Type::Pi(..), Shape::Pi)
            | (Type::Forall(..), Shape::Forall)
            | (Type::Sigma(..), Shape::Sigma)
            | (Type::Sum(..), Shape::Sum) => Some(ty.clone()),
            (Type::Bot, _) => Some(match shape {
                Shape::Pi => Type::pi(Type::Top, Type::Bot),
                Shape::Forall => Type::forall(Type::Bot, Type::Top, Type::Bot),
                Shape::Sigma => Type::sigma(Type::Bot, Type::Bot),
                Shape::Sum => Type::sum(Type::Bot, Type::Bot),
            }),
            (Type::Refine(b, _), _) => again(self, b),
            (Type::Var(i), _) => {
                let (_, upper) = ctx.lookup_type(*i)?;
                again(self, &upper)
            }
            (Type::Mu(body), _) if spos(0, body) => again(self, &ty.unfold()?),
            (Type::Inter(a, b), _) => again(self, a).or_else(|| again(self, b)),
            (Type::Union(a, b), Shape::Sigma | Shape::Sum) => {
                let (a, b) = (again(self, a)?, again(self, b)?);
                match (a, b) {
                    (Type::Sigma(a1, a2), Type::Sigma(b1, b2)) => Some(Type::sigma(
                        Type::union(*a1, *b1),
                        Type::union(*a2, *b2),
                    )),
                    (Type::Sum(a1, a2), Type::Sum(b1, b2)) => {
                        Some(Type::sum(Type::union(*a1, *b1), Type::union(*a2, *b2)))
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// The base class of a binary-operation operand.
    fn classify(&mut self, ctx: &mut TypingContext, ty: &Type) -> Option<Type> {
        [Type::Int32, Type::bool(), Type::Unit]
            .into_iter()
            .find(|c| self.subtype(ctx, ty, c).is_ok())
    }

    /// Every variable is bound and every predicate is a boolean term.
    pub fn wf_type(&mut self, ctx: &mut TypingContext, ty: &Type) -> Result<(), TypeError> {
        match ty {
            Type::Var(i) => match ctx.lookup_type(*i) {
                Some(_) => Ok(()),
                None => Err(TypeError::new(
                    ErrorKind::UnboundVariable,
                    ctx,
                    format!("type variable {i} is not bound"),
                )),
            },
            Type::Unit | Type::True | Type::False | Type::Int32 | Type::Top | Type::Bot => Ok(()),
            Type::Pi(a, b) | Type::Sigma(a, b) => {
                self.wf_type(ctx, a)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_term((**a).clone());
                    me.wf_type(ctx, b)
                })
            }
            Type::Forall(l, u, b) => {
                self.wf_type(ctx, l)?;
                self.wf_type(ctx, u)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_bound((**l).clone(), (**u).clone());
                    me.wf_type(ctx, b)
                })
            }
            Type::Sum(a, b) | Type::Union(a, b) | Type::Inter(a, b) => {
                self.wf_type(ctx, a)?;
                self.wf_type(ctx, b)
            }
            Type::Refine(a, p) => {
                self.wf_type(ctx, a)?;
                self.run(ctx, |me, ctx| {
                    ctx.push_term((**a).clone());
                    me.check(ctx, p, &Type::bool())
                })
            }
            Type::Mu(b) => self.run(ctx, |me, ctx| {
                ctx.push_bound(Type::Bot, Type::Top);
                me.wf_type(ctx, b)
            }),
        }
    }
}

/// Infer with default settings.
pub fn infer(ctx: &TypingContext, t: &Term) -> Result<Type, TypeError> {
    Checker::default().infer(&mut ctx.clone(), t)
}

/// Check with default settings.
pub fn check(ctx: &TypingContext, t: &Term, expected: &Type) -> Result<(), TypeError> {
    Checker::default().check(&mut ctx.clone(), t, expected)
}

/// Decide `lhs <: rhs`; the error describes the first failing obligation.
pub fn subtype(ctx: &TypingContext, lhs: &Type, rhs: &Type) -> Result<(), TypeError> {
    Checker::default().subtype(&mut ctx.clone(), lhs, rhs)
}

pub fn is_subtype(ctx: &TypingContext, lhs: &Type, rhs: &Type) -> bool {
    subtype(ctx, lhs, rhs).is_ok()
}
