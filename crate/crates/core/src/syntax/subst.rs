//! Shifting, substitution and occurrence checks over the two index spaces.

use super::{Term, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Namespace {
    Term,
    Type,
}

/// Whether a substitution removes the substituted binder.
///
/// `Close` is the usual "instantiate a binder" operation: indices above the
/// substituted one are decremented. It is used for `T-App` result types,
/// `T-TApp`, `Mu` unfolding, pair checking and opening refinement
/// predicates at a variable. `Keep` replaces occurrences in place and is
/// only used where the binder stays in scope (solver bridge rewrites).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstMode {
    Keep,
    Close,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("negative shift would move {namespace:?} variable {index} below cutoff {cutoff}")]
    Underflow {
        namespace: Namespace,
        index: usize,
        cutoff: usize,
    },
}

trait VarMap {
    fn term_var(&mut self, idx: usize, td: usize, yd: usize) -> Result<Term, ScopeError>;
    fn type_var(&mut self, idx: usize, td: usize, yd: usize) -> Result<Type, ScopeError>;
}

fn map_term<M: VarMap>(t: &Term, m: &mut M, td: usize, yd: usize) -> Result<Term, ScopeError> {
    fn bx<T>(x: T) -> Box<T> { Box::new(x) }
    Ok(match t {
        Term::Const(c) => Term::Const(*c),
        Term::Var(i) => m.term_var(*i, td, yd)?,
        Term::Abs(a, b) => Term::Abs(bx(map_type(a, m, td, yd)?), bx(map_term(b, m, td + 1, yd)?)),
        Term::App(f, a) => Term::App(bx(map_term(f, m, td, yd)?), bx(map_term(a, m, td, yd)?)),
        Term::TAbs(l, u, b) => Term::TAbs(
            bx(map_type(l, m, td, yd)?),
            bx(map_type(u, m, td, yd)?),
            bx(map_term(b, m, td, yd + 1)?),
        ),
        Term::TApp(f, a) => Term::TApp(bx(map_term(f, m, td, yd)?), bx(map_type(a, m, td, yd)?)),
        Term::Let(a, x, b) => Term::Let(
            a.as_ref().map(|a| map_type(a, m, td, yd)).transpose()?.map(bx),
            bx(map_term(x, m, td, yd)?),
            bx(map_term(b, m, td + 1, yd)?),
        ),
        Term::Pair(a, b) => Term::Pair(bx(map_term(a, m, td, yd)?), bx(map_term(b, m, td, yd)?)),
        Term::MatchPair(s, b) => {
            Term::MatchPair(bx(map_term(s, m, td, yd)?), bx(map_term(b, m, td + 2, yd)?))
        }
        Term::MatchSum(s, l, r) => Term::MatchSum(
            bx(map_term(s, m, td, yd)?),
            bx(map_term(l, m, td + 1, yd)?),
            bx(map_term(r, m, td + 1, yd)?),
        ),
        Term::Inl(a, x) => Term::Inl(bx(map_type(a, m, td, yd)?), bx(map_term(x, m, td, yd)?)),
        Term::Inr(a, x) => Term::Inr(bx(map_type(a, m, td, yd)?), bx(map_term(x, m, td, yd)?)),
        Term::BinOp(op, a, b) => {
            Term::BinOp(*op, bx(map_term(a, m, td, yd)?), bx(map_term(b, m, td, yd)?))
        }
        Term::If(c, a, b) => Term::If(
            bx(map_term(c, m, td, yd)?),
            bx(map_term(a, m, td, yd)?),
            bx(map_term(b, m, td, yd)?),
        ),
        Term::Loop(i, b) => Term::Loop(bx(map_term(i, m, td, yd)?), bx(map_term(b, m, td + 1, yd)?)),
    })
}

fn map_type<M: VarMap>(t: &Type, m: &mut M, td: usize, yd: usize) -> Result<Type, ScopeError> {
    fn bx<T>(x: T) -> Box<T> { Box::new(x) }
    Ok(match t {
        Type::Var(i) => m.type_var(*i, td, yd)?,
        Type::Unit => Type::Unit,
        Type::True => Type::True,
        Type::False => Type::False,
        Type::Int32 => Type::Int32,
        Type::Top => Type::Top,
        Type::Bot => Type::Bot,
        Type::Pi(a, b) => Type::Pi(bx(map_type(a, m, td, yd)?), bx(map_type(b, m, td + 1, yd)?)),
        Type::Forall(l, u, b) => Type::Forall(
            bx(map_type(l, m, td, yd)?),
            bx(map_type(u, m, td, yd)?),
            bx(map_type(b, m, td, yd + 1)?),
        ),
        Type::Sigma(a, b) => {
            Type::Sigma(bx(map_type(a, m, td, yd)?), bx(map_type(b, m, td + 1, yd)?))
        }
        Type::Sum(a, b) => Type::Sum(bx(map_type(a, m, td, yd)?), bx(map_type(b, m, td, yd)?)),
        Type::Refine(a, p) => {
            Type::Refine(bx(map_type(a, m, td, yd)?), bx(map_term(p, m, td + 1, yd)?))
        }
        Type::Union(a, b) => Type::Union(bx(map_type(a, m, td, yd)?), bx(map_type(b, m, td, yd)?)),
        Type::Inter(a, b) => Type::Inter(bx(map_type(a, m, td, yd)?), bx(map_type(b, m, td, yd)?)),
        Type::Mu(b) => Type::Mu(bx(map_type(b, m, td, yd + 1)?)),
    })
}

struct Shift {
    ns: Namespace,
    cutoff: usize,
    amount: isize,
}

impl Shift {
    fn apply(&self, idx: usize, depth: usize) -> Result<usize, ScopeError> {
        let cutoff = self.cutoff + depth;
        if idx < cutoff {
            return Ok(idx);
        }
        let moved = idx as isize + self.amount;
        if moved < cutoff as isize {
            return Err(ScopeError::Underflow {
                namespace: self.ns,
                index: idx,
                cutoff,
            });
        }
        Ok(moved as usize)
    }
}

impl VarMap for Shift {
    fn term_var(&mut self, idx: usize, td: usize, _yd: usize) -> Result<Term, ScopeError> {
        match self.ns {
            Namespace::Term => Ok(Term::Var(self.apply(idx, td)?)),
            Namespace::Type => Ok(Term::Var(idx)),
        }
    }
    fn type_var(&mut self, idx: usize, _td: usize, yd: usize) -> Result<Type, ScopeError> {
        match self.ns {
            Namespace::Type => Ok(Type::Var(self.apply(idx, yd)?)),
            Namespace::Term => Ok(Type::Var(idx)),
        }
    }
}

/// Shift every free index `>= cutoff` of the chosen namespace by `amount`.
pub fn shift_term(t: &Term, ns: Namespace, cutoff: usize, amount: isize) -> Result<Term, ScopeError> {
    if amount == 0 {
        return Ok(t.clone());
    }
    map_term(t, &mut Shift { ns, cutoff, amount }, 0, 0)
}

pub fn shift_type(t: &Type, ns: Namespace, cutoff: usize, amount: isize) -> Result<Type, ScopeError> {
    if amount == 0 {
        return Ok(t.clone());
    }
    map_type(t, &mut Shift { ns, cutoff, amount }, 0, 0)
}

/// Weaken a term by `terms` term binders and `types` type binders.
pub fn lift_term(t: &Term, terms: usize, types: usize) -> Term {
    let t = shift_term(t, Namespace::Term, 0, terms as isize).expect("upward shift");
    shift_term(&t, Namespace::Type, 0, types as isize).expect("upward shift")
}

pub fn lift_type(t: &Type, terms: usize, types: usize) -> Type {
    let t = shift_type(t, Namespace::Term, 0, terms as isize).expect("upward shift");
    shift_type(&t, Namespace::Type, 0, types as isize).expect("upward shift")
}

struct SubstTermVar<'a> {
    index: usize,
    replacement: &'a Term,
    mode: SubstMode,
}

impl VarMap for SubstTermVar<'_> {
    fn term_var(&mut self, idx: usize, td: usize, yd: usize) -> Result<Term, ScopeError> {
        let target = self.index + td;
        Ok(if idx == target {
            lift_term(self.replacement, td, yd)
        } else if idx > target && self.mode == SubstMode::Close {
            Term::Var(idx - 1)
        } else {
            Term::Var(idx)
        })
    }
    fn type_var(&mut self, idx: usize, _td: usize, _yd: usize) -> Result<Type, ScopeError> {
        Ok(Type::Var(idx))
    }
}

struct SubstTypeVar<'a> {
    index: usize,
    replacement: &'a Type,
}

impl VarMap for SubstTypeVar<'_> {
    fn term_var(&mut self, idx: usize, _td: usize, _yd: usize) -> Result<Term, ScopeError> {
        Ok(Term::Var(idx))
    }
    fn type_var(&mut self, idx: usize, td: usize, yd: usize) -> Result<Type, ScopeError> {
        let target = self.index + yd;
        Ok(if idx == target {
            lift_type(self.replacement, td, yd)
        } else if idx > target {
            Type::Var(idx - 1)
        } else {
            Type::Var(idx)
        })
    }
}

/// Replace term variable `index` by `replacement`. The replacement is
/// expressed in the scope where `index` is bound (for `Close`, the scope
/// after removing it).
pub fn subst_term_in_term(t: &Term, index: usize, replacement: &Term, mode: SubstMode) -> Term {
    map_term(t, &mut SubstTermVar { index, replacement, mode }, 0, 0).expect("substitution is total")
}

pub fn subst_term_in_type(t: &Type, index: usize, replacement: &Term, mode: SubstMode) -> Type {
    map_type(t, &mut SubstTermVar { index, replacement, mode }, 0, 0).expect("substitution is total")
}

/// Replace type variable `index` by `replacement`, closing the binder.
pub fn subst_type_in_type(t: &Type, index: usize, replacement: &Type) -> Type {
    map_type(t, &mut SubstTypeVar { index, replacement }, 0, 0).expect("substitution is total")
}

pub fn subst_type_in_term(t: &Term, index: usize, replacement: &Type) -> Term {
    map_term(t, &mut SubstTypeVar { index, replacement }, 0, 0).expect("substitution is total")
}

struct Occurs {
    ns: Namespace,
    index: usize,
    found: bool,
}

impl VarMap for Occurs {
    fn term_var(&mut self, idx: usize, td: usize, _yd: usize) -> Result<Term, ScopeError> {
        if self.ns == Namespace::Term && idx == self.index + td {
            self.found = true;
        }
        Ok(Term::Var(idx))
    }
    fn type_var(&mut self, idx: usize, _td: usize, yd: usize) -> Result<Type, ScopeError> {
        if self.ns == Namespace::Type && idx == self.index + yd {
            self.found = true;
        }
        Ok(Type::Var(idx))
    }
}

/// Does free variable `index` of namespace `ns` occur in `t`?
pub fn free_in_type(index: usize, t: &Type, ns: Namespace) -> bool {
    let mut occ = Occurs { ns, index, found: false };
    map_type(t, &mut occ, 0, 0).expect("traversal is total");
    occ.found
}

pub fn free_in_term(index: usize, t: &Term, ns: Namespace) -> bool {
    let mut occ = Occurs { ns, index, found: false };
    map_term(t, &mut occ, 0, 0).expect("traversal is total");
    occ.found
}
