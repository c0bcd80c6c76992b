//! Random generators and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use rfn_core::interp::{eval, Env, Outcome, Value};
use rfn_core::syntax::{Const, Op, Term, Type};
use rfn_core::typeck::{anf_transform, check, TypingContext};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn bin(op: Op, a: Term, b: Term) -> Term {
    Term::binop(op, a, b)
}

pub fn v0() -> Term {
    Term::var(0)
}

pub fn list_of(elem: Type) -> Type {
    Type::mu(Type::sum(Type::Unit, Type::sigma(elem, Type::Var(0))))
}

pub fn int_list() -> Type {
    list_of(Type::Int32)
}

/// Reference two's-complement arithmetic through 64-bit integers.
pub fn wrap_reference(op: Op, a: i32, b: i32) -> i32 {
    let (a, b) = (a as i64, b as i64);
    let wide = match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        _ => panic!("not a wrapping operation"),
    };
    let m = wide.rem_euclid(1 << 32);
    if m >= 1 << 31 {
        (m - (1 << 32)) as i32
    } else {
        m as i32
    }
}

fn small_int(r: &mut StdRng) -> i32 {
    match r.gen_range(0..20) {
        0 => i32::MAX,
        1 => i32::MIN,
        2..=5 => r.gen_range(-100..=100),
        _ => r.gen_range(-8..=8),
    }
}

/// A predicate on the refinement binder (index 0).
pub fn int_predicate(r: &mut StdRng) -> Term {
    let k = Term::int(r.gen_range(-5..=5));
    let atom = match r.gen_range(0..6) {
        0 => bin(Op::Gt, v0(), k),
        1 => bin(Op::Ge, v0(), k),
        2 => bin(Op::Eq, v0(), k),
        3 => bin(Op::Ne, v0(), k),
        4 => bin(Op::Eq, bin(Op::Mod, v0(), Term::int(2)), Term::int(0)),
        _ => bin(Op::Lt, v0(), k),
    };
    if r.gen_bool(0.2) {
        let k2 = Term::int(r.gen_range(-5..=5));
        bin(Op::And, atom, bin(Op::Le, v0(), k2))
    } else {
        atom
    }
}

/// Closed first-order types for the program generator.
pub fn gen_type(r: &mut StdRng, depth: u32) -> Type {
    let leaf = depth == 0 || r.gen_bool(0.4);
    if leaf {
        return match r.gen_range(0..6) {
            0 | 1 => Type::Int32,
            2 => Type::bool(),
            3 => Type::Unit,
            _ => Type::refine(Type::Int32, int_predicate(r)),
        };
    }
    match r.gen_range(0..6) {
        0 => Type::sum(gen_type(r, depth - 1), gen_type(r, depth - 1)),
        1 => Type::sigma(gen_type(r, depth - 1), gen_type(r, depth - 1)),
        2 => Type::union(gen_type(r, depth - 1), gen_type(r, depth - 1)),
        3 => list_of(if r.gen_bool(0.5) {
            Type::Int32
        } else {
            Type::refine(Type::Int32, int_predicate(r))
        }),
        4 => Type::pi(Type::Int32, Type::Int32),
        _ => Type::refine(Type::Int32, int_predicate(r)),
    }
}

/// Type-directed generator of closed programs. Most of its output is well
/// typed; the checker decides which.
pub struct ProgramGen<'a> {
    pub r: &'a mut StdRng,
    /// Types of the term variables in scope, innermost last; all closed.
    ctx: Vec<Type>,
}

impl<'a> ProgramGen<'a> {
    pub fn new(r: &'a mut StdRng) -> Self {
        ProgramGen { r, ctx: Vec::new() }
    }

    fn under<T>(&mut self, tys: &[Type], f: impl FnOnce(&mut Self) -> T) -> T {
        let n = self.ctx.len();
        self.ctx.extend(tys.iter().cloned());
        let out = f(self);
        self.ctx.truncate(n);
        out
    }

    fn var_where(&mut self, want: impl Fn(&Type) -> bool) -> Option<Term> {
        let n = self.ctx.len();
        let hits: Vec<usize> = (0..n).filter(|&i| want(&self.ctx[i])).collect();
        hits.choose(self.r).map(|&i| Term::var(n - 1 - i))
    }

    fn is_int(ty: &Type) -> bool {
        match ty {
            Type::Int32 => true,
            Type::Refine(b, _) => Self::is_int(b),
            _ => false,
        }
    }

    pub fn int(&mut self, d: u32) -> Term {
        if d == 0 || self.r.gen_bool(0.12) {
            if self.r.gen_bool(0.4) {
                if let Some(v) = self.var_where(Self::is_int) {
                    return v;
                }
            }
            return Term::int(small_int(self.r));
        }
        match self.r.gen_range(0..11) {
            0 | 1 => {
                let ops = [Op::Add, Op::Sub, Op::Mul, Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Mod];
                let op = *ops.choose(self.r).unwrap();
                bin(op, self.int(d - 1), self.int(d - 1))
            }
            2 => {
                let ty = gen_type(self.r, 1);
                let bound = self.of(&ty, d - 1);
                let ann = self.r.gen_bool(0.5).then(|| ty.clone());
                let body = self.under(&[ty], |g| g.int(d - 1));
                Term::let_(ann, bound, body)
            }
            3 => Term::if_(self.boolean(d - 1), self.int(d - 1), self.int(d - 1)),
            4 => {
                let (a, b) = (gen_type(self.r, 1), gen_type(self.r, 1));
                let s = self.of(&Type::sum(a.clone(), b.clone()), d - 1);
                let l = self.under(&[a], |g| g.int(d - 1));
                let rr = self.under(&[b], |g| g.int(d - 1));
                Term::match_sum(s, l, rr)
            }
            5 => {
                let (a, b) = (gen_type(self.r, 1), gen_type(self.r, 0));
                let s = self.of(&Type::sigma(a.clone(), b.clone()), d - 1);
                let body = self.under(&[a, b], |g| g.int(d - 1));
                Term::match_pair(s, body)
            }
            6 => {
                let f = self.of(&Type::pi(Type::Int32, Type::Int32), d - 1);
                Term::app(f, self.int(d - 1))
            }
            7 => {
                // counting loop
                let k = self.r.gen_range(-3..=12);
                let body = Term::if_(
                    bin(Op::Lt, v0(), Term::int(k)),
                    Term::inl(Type::Int32, bin(Op::Add, v0(), Term::int(1))),
                    Term::inr(Type::Int32, v0()),
                );
                let init = self.int(d - 1);
                Term::let_(Some(Type::Int32), init, Term::loop_(v0(), body))
            }
            8 => {
                // loop with an arbitrary exit test
                let init = self.int(d - 1);
                let body = self.under(&[Type::Int32], |g| {
                    let c = g.boolean(d - 1);
                    let next = g.int(d - 1);
                    let done = g.int(d - 1);
                    Term::if_(c, Term::inl(Type::Int32, next), Term::inr(Type::Int32, done))
                });
                Term::let_(Some(Type::Int32), init, Term::loop_(v0(), body))
            }
            9 => {
                // length of a list
                let xs = self.of(&int_list(), d - 1);
                let step = Term::match_pair(
                    Term::var(0),
                    Term::match_sum(
                        Term::var(1),
                        Term::inr(Type::Bot, Term::var(1)),
                        Term::match_pair(
                            Term::var(0),
                            Term::inl(Type::Bot, Term::pair(Term::var(0), bin(Op::Add, Term::var(3), Term::int(1)))),
                        ),
                    ),
                );
                let state = Type::sigma(int_list(), Type::Int32);
                Term::let_(Some(state), Term::pair(xs, Term::int(0)), Term::loop_(v0(), step))
            }
            _ => Term::int(small_int(self.r)),
        }
    }

    pub fn boolean(&mut self, d: u32) -> Term {
        if d == 0 || self.r.gen_bool(0.3) {
            if self.r.gen_bool(0.3) {
                if let Some(v) = self.var_where(|t| *t == Type::bool()) {
                    return v;
                }
            }
            return match self.r.gen_range(0..3) {
                0 => Term::bool(true),
                1 => Term::bool(false),
                _ => {
                    let op = *[Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq, Op::Ne].choose(self.r).unwrap();
                    bin(op, self.int(0), self.int(0))
                }
            };
        }
        match self.r.gen_range(0..5) {
            0 => {
                let op = *[Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq, Op::Ne].choose(self.r).unwrap();
                bin(op, self.int(d - 1), self.int(d - 1))
            }
            1 => {
                let op = *[Op::And, Op::Or, Op::Eq, Op::Ne].choose(self.r).unwrap();
                bin(op, self.boolean(d - 1), self.boolean(d - 1))
            }
            2 => Term::if_(self.boolean(d - 1), self.boolean(d - 1), self.boolean(d - 1)),
            3 => {
                let bound = self.int(d - 1);
                let body = self.under(&[Type::Int32], |g| g.boolean(d - 1));
                Term::let_(Some(Type::Int32), bound, body)
            }
            _ => Term::bool(self.r.gen_bool(0.5)),
        }
    }

    /// A literal satisfying a refinement of `Int32`, found by evaluation.
    fn satisfying(&mut self, pred: &Term) -> Option<i32> {
        for _ in 0..64 {
            let z = small_int(self.r);
            let env = Env::empty().push(Value::int(z));
            if eval(64, &env, pred) == Outcome::Val(Value::bool(true)) {
                return Some(z);
            }
        }
        None
    }

    pub fn of(&mut self, ty: &Type, d: u32) -> Term {
        if let Some(v) = (self.r.gen_bool(0.2)).then(|| self.var_where(|t| t == ty)).flatten() {
            return v;
        }
        match ty {
            Type::Int32 => self.int(d),
            Type::Unit => Term::unit(),
            Type::Union(a, b) if **a == Type::True && **b == Type::False => self.boolean(d),
            Type::Refine(base, p) if **base == Type::Int32 => {
                let Some(z) = self.satisfying(p) else {
                    return Term::int(small_int(self.r));
                };
                if d > 0 && self.r.gen_bool(0.3) {
                    let other = self.satisfying(p).unwrap_or(z);
                    Term::if_(self.boolean(d - 1), Term::int(z), Term::int(other))
                } else {
                    Term::int(z)
                }
            }
            Type::Sum(a, b) => {
                if self.r.gen_bool(0.5) {
                    Term::inl((**b).clone(), self.of(a, d.saturating_sub(1)))
                } else {
                    Term::inr((**a).clone(), self.of(b, d.saturating_sub(1)))
                }
            }
            Type::Sigma(a, b) => Term::pair(self.of(a, d.saturating_sub(1)), self.of(b, d.saturating_sub(1))),
            Type::Union(a, b) => {
                let side = if self.r.gen_bool(0.5) { a } else { b };
                self.of(side, d)
            }
            Type::Pi(a, b) => {
                let a = (**a).clone();
                let b = (**b).clone();
                let body = self.under(std::slice::from_ref(&a), |g| g.of(&b, d.saturating_sub(1)));
                Term::abs(a, body)
            }
            Type::Mu(body) => {
                // lists only
                let Type::Sum(_, cons) = &**body else {
                    return Term::unit();
                };
                let Type::Sigma(elem, _) = &**cons else {
                    return Term::unit();
                };
                let elem = (**elem).clone();
                let len = if d == 0 { 0 } else { self.r.gen_range(0..4) };
                let mut t = Term::inl(Type::Bot, Term::unit());
                for _ in 0..len {
                    t = Term::inr(Type::Bot, Term::pair(self.of(&elem, 0), t));
                }
                t
            }
            _ => Term::unit(),
        }
    }
}

/// A closed program, its type, and whether the checker accepted it.
pub struct Candidate {
    pub term: Term,
    pub ty: Type,
    pub well_typed: bool,
}

pub fn candidate(r: &mut StdRng) -> Candidate {
    let ty = gen_type(r, 2);
    let depth = r.gen_range(2..=6);
    let raw = ProgramGen::new(r).of(&ty, depth);
    let term = anf_transform(&raw);
    let well_typed = check(&TypingContext::new(), &term, &ty).is_ok();
    Candidate { term, ty, well_typed }
}

/// At least `n` checked programs, with the number of attempts made.
pub fn well_typed_programs(seed: u64, n: usize) -> (Vec<(Term, Type)>, usize) {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n && attempts < 50 * n {
        attempts += 1;
        let c = candidate(&mut r);
        if c.well_typed {
            out.push((c.term, c.ty));
        }
    }
    (out, attempts)
}

/// Arbitrary closed terms, typed or not, for properties of the evaluator.
pub fn any_term(r: &mut StdRng) -> Term {
    let c = candidate(r);
    if r.gen_bool(0.2) {
        // break it: apply a non-function or match on the wrong shape
        match r.gen_range(0..3) {
            0 => Term::app(Term::int(1), c.term),
            1 => Term::match_pair(c.term, Term::var(0)),
            _ => bin(Op::Add, c.term, Term::bool(true)),
        }
    } else {
        c.term
    }
}

/// Arithmetic and boolean predicates over `atoms` integer variables.
pub struct PredGen<'a> {
    pub r: &'a mut StdRng,
    pub atoms: usize,
    pub division: bool,
}

impl PredGen<'_> {
    pub fn arith(&mut self, d: u32) -> Term {
        if d == 0 || self.r.gen_bool(0.35) {
            return if self.atoms > 0 && self.r.gen_bool(0.6) {
                Term::var(self.r.gen_range(0..self.atoms))
            } else {
                Term::int(self.r.gen_range(-4..=4))
            };
        }
        let mut ops = vec![Op::Add, Op::Sub, Op::Mul, Op::Add];
        if self.division {
            ops.extend([Op::Div, Op::Mod]);
        }
        let op = *ops.choose(self.r).unwrap();
        bin(op, self.arith(d - 1), self.arith(d - 1))
    }

    pub fn pred(&mut self, d: u32) -> Term {
        if d == 0 || self.r.gen_bool(0.5) {
            let op = *[Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq, Op::Ne].choose(self.r).unwrap();
            return bin(op, self.arith(2), self.arith(2));
        }
        match self.r.gen_range(0..5) {
            0 | 1 => bin(Op::And, self.pred(d - 1), self.pred(d - 1)),
            2 => bin(Op::Or, self.pred(d - 1), self.pred(d - 1)),
            3 => bin(Op::Eq, self.pred(d - 1), Term::bool(self.r.gen_bool(0.5))),
            _ => bin(Op::Ne, self.pred(d - 1), self.pred(d - 1)),
        }
    }

    /// Facts and a goal, often related so that some queries hold.
    pub fn query(&mut self) -> (Vec<Term>, Term) {
        let n = self.r.gen_range(0..=3);
        let facts: Vec<Term> = (0..n).map(|_| self.pred(2)).collect();
        let goal = match (self.r.gen_range(0..6), facts.choose(self.r).cloned()) {
            (0, Some(f)) => f,
            (1, Some(f)) => bin(Op::Or, f, self.pred(1)),
            (2, Some(f)) => bin(Op::Or, self.pred(1), f),
            (3, Some(_)) => {
                let a = self.arith(1);
                bin(Op::Eq, bin(Op::Add, a.clone(), a.clone()), bin(Op::Mul, Term::int(2), a))
            }
            _ => self.pred(2),
        };
        (facts, goal)
    }
}

/// First-order types whose predicates may mention `env` enclosing
/// variables, for the avoidance property.
pub fn scoped_type(r: &mut StdRng, env: usize, depth: u32) -> Type {
    let pred = |r: &mut StdRng, binders: usize| -> Term {
        // index 0 is the refinement binder; indices 1..binders are enclosing
        let pick = |r: &mut StdRng| -> Term {
            if r.gen_bool(0.6) {
                Term::var(r.gen_range(0..binders))
            } else {
                Term::int(r.gen_range(-3..=3))
            }
        };
        let op = *[Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Eq, Op::Ne].choose(r).unwrap();
        let lhs = if r.gen_bool(0.3) { bin(Op::Add, pick(r), pick(r)) } else { pick(r) };
        let p = bin(op, lhs, pick(r));
        if r.gen_bool(0.25) {
            bin(Op::Or, p, bin(Op::Eq, Term::var(0), Term::int(r.gen_range(-3..=3))))
        } else {
            p
        }
    };
    fn go(r: &mut StdRng, scope: usize, depth: u32, pred: &impl Fn(&mut StdRng, usize) -> Term) -> Type {
        if depth == 0 || r.gen_bool(0.35) {
            return match r.gen_range(0..5) {
                0 => Type::Int32,
                1 => Type::bool(),
                _ => Type::refine(Type::Int32, pred(r, scope + 1)),
            };
        }
        match r.gen_range(0..6) {
            0 => Type::sum(go(r, scope, depth - 1, pred), go(r, scope, depth - 1, pred)),
            1 => {
                let a = go(r, scope, depth - 1, pred);
                Type::sigma(a, go(r, scope + 1, depth - 1, pred))
            }
            2 => Type::union(go(r, scope, depth - 1, pred), go(r, scope, depth - 1, pred)),
            3 => Type::inter(go(r, scope, depth - 1, pred), go(r, scope, depth - 1, pred)),
            4 => {
                let a = go(r, scope, depth - 1, pred);
                Type::refine(a, pred(r, scope + 1))
            }
            _ => Type::refine(Type::Int32, pred(r, scope + 1)),
        }
    }
    go(r, env, depth, &pred)
}

/// A random first-order value, shaped like `ty` most of the time.
pub fn value_for(r: &mut StdRng, ty: &Type) -> Value {
    let int = |r: &mut StdRng| Value::int(r.gen_range(-4..=4));
    if r.gen_bool(0.05) {
        return int(r);
    }
    match ty {
        Type::Int32 => int(r),
        Type::True | Type::False => Value::bool(r.gen_bool(0.5)),
        Type::Unit => Value::unit(),
        Type::Refine(a, _) => value_for(r, a),
        Type::Sum(a, b) => {
            if r.gen_bool(0.5) {
                Value::inl(value_for(r, a))
            } else {
                Value::inr(value_for(r, b))
            }
        }
        Type::Sigma(a, b) => Value::pair(value_for(r, a), value_for(r, b)),
        Type::Union(a, b) | Type::Inter(a, b) => {
            let side = if r.gen_bool(0.5) { a } else { b };
            value_for(r, side)
        }
        _ => Value::Const(Const::Unit),
    }
}
