//! Algorithmic subtyping.

use super::{show, show_t, Checker, ErrorKind, TypeError, TypingContext};
use crate::solver::entails;
use crate::syntax::{lift_type, spos, Term, Type};

/// Cap on recursive-type unfoldings per subtyping query.
pub const MAX_UNFOLDS: usize = 32;

#[derive(Clone, Debug)]
struct Assumption {
    lhs: Type,
    rhs: Type,
    terms: usize,
    types: usize,
    guard: usize,
}

#[derive(Clone, Debug, Default)]
pub(super) struct SubState {
    assumptions: Vec<Assumption>,
    unfolds: usize,
    /// Number of type constructors passed on the current path. A
    /// recursive assumption is only usable once a constructor separates it
    /// from its use.
    guard: usize,
}

impl Checker {
    /// One subtyping query, with fresh recursion bookkeeping.
    pub fn subtype(&mut self, ctx: &mut TypingContext, lhs: &Type, rhs: &Type) -> Result<(), TypeError> {
        let saved = std::mem::take(&mut self.sub);
        let mark = ctx.len();
        let r = self.sub(ctx, lhs, rhs);
        ctx.truncate(mark);
        self.sub = saved;
        r.map_err(|mut e| {
            if (e.expected.as_ref() != Some(rhs) || e.actual.as_ref() != Some(lhs))
                && e.depth == (ctx.term_depth(), ctx.type_depth())
            {
                e.message = format!("{} (while checking {} <: {})", e.message, show(ctx, lhs), show(ctx, rhs));
            }
            e
        })
    }

    fn fail(&self, ctx: &TypingContext, a: &Type, b: &Type) -> TypeError {
        TypeError::new(
            ErrorKind::SubtypeFailure,
            ctx,
            format!("{} is not a subtype of {}", show(ctx, a), show(ctx, b)),
        )
        .types(b, a)
    }

    fn sub(&mut self, ctx: &mut TypingContext, a: &Type, b: &Type) -> Result<(), TypeError> {
        if a == b || *b == Type::Top || *a == Type::Bot {
            return Ok(());
        }
        if let Type::Union(a1, a2) = a {
            self.sub(ctx, a1, b)?;
            return self.sub(ctx, a2, b);
        }
        if let Type::Inter(b1, b2) = b {
            self.sub(ctx, a, b1)?;
            return self.sub(ctx, a, b2);
        }
        if let Type::Refine(base, q) = b {
            self.sub(ctx, a, base)?;
            return self.implies(ctx, a, q, b);
        }
        if let Type::Union(b1, b2) = b {
            if self.sub(ctx, a, b1).is_ok() || self.sub(ctx, a, b2).is_ok() {
                return Ok(());
            }
        }
        if let Type::Inter(a1, a2) = a {
            if self.sub(ctx, a1, b).is_ok() || self.sub(ctx, a2, b).is_ok() {
                return Ok(());
            }
        }
        if let Type::Refine(base, _) = a {
            return self.sub(ctx, base, b);
        }
        if let Type::Var(i) = a {
            if let Some((_, upper)) = ctx.lookup_type(*i) {
                if self.sub(ctx, &upper, b).is_ok() {
                    return Ok(());
                }
            }
        }
        if let Type::Var(i) = b {
            if let Some((lower, _)) = ctx.lookup_type(*i) {
                if self.sub(ctx, a, &lower).is_ok() {
                    return Ok(());
                }
            }
        }
        if matches!(a, Type::Mu(_)) || matches!(b, Type::Mu(_)) {
            return self.sub_mu(ctx, a, b);
        }
        self.sub.guard += 1;
        let mark = ctx.len();
        let r = self.structural(ctx, a, b);
        ctx.truncate(mark);
        self.sub.guard -= 1;
        r
    }

    fn structural(&mut self, ctx: &mut TypingContext, a: &Type, b: &Type) -> Result<(), TypeError> {
        match (a, b) {
            (Type::Pi(a1, a2), Type::Pi(b1, b2)) => {
                self.sub(ctx, b1, a1)?;
                ctx.push_term((**b1).clone());
                self.sub(ctx, a2, b2)
            }
            (Type::Forall(l1, u1, a2), Type::Forall(l2, u2, b2)) => {
                self.sub(ctx, l1, l2)?;
                self.sub(ctx, u2, u1)?;
                ctx.push_bound((**l2).clone(), (**u2).clone());
                self.sub(ctx, a2, b2)
            }
            (Type::Sigma(a1, a2), Type::Sigma(b1, b2)) => {
                self.sub(ctx, a1, b1)?;
                ctx.push_term((**a1).clone());
                self.sub(ctx, a2, b2)
            }
            (Type::Sum(a1, a2), Type::Sum(b1, b2)) => {
                self.sub(ctx, a1, b1)?;
                self.sub(ctx, a2, b2)
            }
            _ => Err(self.fail(ctx, a, b)),
        }
    }

    fn sub_mu(&mut self, ctx: &mut TypingContext, a: &Type, b: &Type) -> Result<(), TypeError> {
        let (terms, types) = (ctx.term_depth(), ctx.type_depth());
        let guard = self.sub.guard;
        let assumed = self.sub.assumptions.iter().any(|h| {
            h.guard < guard && {
                let (dt, dy) = (terms - h.terms, types - h.types);
                lift_type(&h.lhs, dt, dy) == *a && lift_type(&h.rhs, dt, dy) == *b
            }
        });
        if assumed {
            return Ok(());
        }
        let unfold = |me: &mut Self, t: &Type| -> Result<Type, TypeError> {
            match t {
                Type::Mu(body) => {
                    if !spos(0, body) {
                        return Err(TypeError::new(
                            ErrorKind::IllFormedMu,
                            ctx,
                            format!("cannot fold or unfold {}: its variable is not strictly positive", show(ctx, t)),
                        )
                        .types(b, a));
                    }
                    if me.sub.unfolds >= MAX_UNFOLDS {
                        return Err(TypeError::new(
                            ErrorKind::SubtypeFailure,
                            ctx,
                            format!("gave up after {MAX_UNFOLDS} recursive unfoldings"),
                        )
                        .types(b, a));
                    }
                    me.sub.unfolds += 1;
                    Ok(t.unfold().expect("mu"))
                }
                other => Ok(other.clone()),
            }
        };
        let a2 = unfold(self, a)?;
        let b2 = unfold(self, b)?;
        self.sub.assumptions.push(Assumption {
            lhs: a.clone(),
            rhs: b.clone(),
            terms,
            types,
            guard,
        });
        let r = self.sub(ctx, &a2, &b2);
        self.sub.assumptions.pop();
        r
    }

    /// `ctx, x : a ⊨ q`, with `q` the predicate of the refinement `b`.
    fn implies(&mut self, ctx: &mut TypingContext, a: &Type, q: &Term, b: &Type) -> Result<(), TypeError> {
        let mark = ctx.len();
        ctx.push_term(a.clone());
        let query = ctx.query(None, q);
        let goal_text = show_t(ctx, q);
        ctx.truncate(mark);
        self.queries += 1;
        let query = query.map_err(|e| {
            TypeError::new(
                ErrorKind::PredicateNotEntailed,
                ctx,
                format!("cannot reason about predicate {goal_text}: {e}"),
            )
            .types(b, a)
        })?;
        let verdict = entails(&query, &self.solver);
        if let Some(trace) = &mut self.trace {
            let facts: Vec<String> = query.facts.iter().map(|f| f.to_string()).collect();
            trace.push(format!(
                "entail [{}] |- {} : {:?}",
                facts.join("; "),
                query.goal,
                verdict.reason
            ));
            trace.extend(verdict.trace.iter().cloned());
        }
        if verdict.entailed {
            Ok(())
        } else {
            Err(TypeError::new(
                ErrorKind::PredicateNotEntailed,
                ctx,
                format!(
                    "cannot show {goal_text} for a value of type {} ({:?})",
                    show(ctx, a),
                    verdict.reason
                ),
            )
            .types(b, a))
        }
    }
}
