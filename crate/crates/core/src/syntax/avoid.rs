use super::subst::{free_in_term, free_in_type, shift_term, shift_type, Namespace};
use super::{Polarity, Term, Type};

/// Strict positivity of type variable `x` in `ty`: it never occurs left of
/// an arrow, in quantifier bounds, in a union, or inside a nested `Mu`.
pub fn spos(x: usize, ty: &Type) -> bool {
    let absent = |t: &Type, i: usize| !free_in_type(i, t, Namespace::Type);
    match ty {
        Type::Var(_)
        | Type::Unit
        | Type::True
        | Type::False
        | Type::Int32
        | Type::Top
        | Type::Bot => true,
        Type::Pi(a, b) => absent(a, x) && spos(x, b),
        Type::Forall(l, u, b) => absent(l, x) && absent(u, x) && spos(x + 1, b),
        Type::Mu(b) => spos(0, b) && absent(b, x + 1),
        Type::Sigma(a, b) | Type::Sum(a, b) | Type::Inter(a, b) => spos(x, a) && spos(x, b),
        Type::Refine(a, _) => spos(x, a),
        Type::Union(a, b) => absent(a, x) && absent(b, x),
    }
}

/// Types whose values support run-time equality.
pub fn firstorder(ty: &Type) -> bool {
    match ty {
        Type::Unit | Type::True | Type::False | Type::Int32 => true,
        Type::Refine(base, _) => firstorder(base),
        _ => false,
    }
}

/// Remove term variable `index` from `ty`, yielding a supertype for
/// `Positive` and a subtype for `Negative`. Indices above `index` are
/// decremented so the result lives in the context without the variable.
pub fn avoid(ty: &Type, index: usize, pol: Polarity) -> Type {
    if !free_in_type(index, ty, Namespace::Term) {
        return shift_type(ty, Namespace::Term, index, -1).expect("index is not free");
    }
    fn bx<T>(x: T) -> Box<T> { Box::new(x) }
    match ty {
        // No term variables can occur in these; handled by the early exit.
        Type::Var(_)
        | Type::Unit
        | Type::True
        | Type::False
        | Type::Int32
        | Type::Top
        | Type::Bot => unreachable!("term variable free in a leaf type"),
        Type::Pi(a, b) => Type::Pi(bx(avoid(a, index, pol.flip())), bx(avoid(b, index + 1, pol))),
        Type::Forall(l, u, b) => Type::Forall(
            bx(avoid(l, index, pol)),
            bx(avoid(u, index, pol.flip())),
            bx(avoid(b, index, pol)),
        ),
        Type::Sigma(a, b) => Type::Sigma(bx(avoid(a, index, pol)), bx(avoid(b, index + 1, pol))),
        Type::Sum(a, b) => Type::Sum(bx(avoid(a, index, pol)), bx(avoid(b, index, pol))),
        Type::Union(a, b) => Type::Union(bx(avoid(a, index, pol)), bx(avoid(b, index, pol))),
        Type::Inter(a, b) => Type::Inter(bx(avoid(a, index, pol)), bx(avoid(b, index, pol))),
        Type::Refine(a, p) => {
            let pred = if free_in_term(index + 1, p, Namespace::Term) {
                Term::bool(pol == Polarity::Positive)
            } else {
                shift_term(p, Namespace::Term, index + 1, -1).expect("index is not free")
            };
            Type::Refine(bx(avoid(a, index, pol)), bx(pred))
        }
        Type::Mu(b) => {
            if spos(0, b) {
                Type::Mu(bx(avoid(b, index, pol)))
            } else {
                match pol {
                    Polarity::Positive => Type::Top,
                    Polarity::Negative => Type::Bot,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Op;

    fn eq_outer() -> Term {
        // v == x0 where v is the refinement binder and x0 the avoided var
        Term::binop(Op::Eq, Term::var(0), Term::var(1))
    }

    #[test]
    fn spos_cases() {
        assert!(spos(0, &Type::Var(0)));
        assert!(!spos(0, &Type::pi(Type::Var(0), Type::Var(0))));
        assert!(spos(0, &Type::pi(Type::Int32, Type::Var(0))));
        assert!(!spos(0, &Type::union(Type::Var(0), Type::Unit)));
        assert!(spos(0, &Type::union(Type::Int32, Type::Unit)));
        let list = Type::sum(Type::Unit, Type::sigma(Type::Int32, Type::Var(0)));
        assert!(spos(0, &list));
        // nested mu mentioning the outer variable
        assert!(!spos(0, &Type::mu(Type::sum(Type::Var(1), Type::Var(0)))));
        assert!(!spos(0, &Type::forall(Type::Var(0), Type::Top, Type::Int32)));
    }

    #[test]
    fn firstorder_cases() {
        assert!(firstorder(&Type::Int32));
        assert!(!firstorder(&Type::pi(Type::Int32, Type::Int32)));
        let nested = Type::refine(Type::refine(Type::Int32, Term::bool(true)), Term::bool(true));
        assert!(firstorder(&nested));
        assert!(!firstorder(&Type::bool()));
    }

    #[test]
    fn avoid_replaces_predicate() {
        let ty = Type::refine(Type::Int32, eq_outer());
        assert_eq!(avoid(&ty, 0, Polarity::Positive), Type::refine(Type::Int32, Term::bool(true)));
        assert_eq!(avoid(&ty, 0, Polarity::Negative), Type::refine(Type::Int32, Term::bool(false)));
    }

    #[test]
    fn avoid_flips_in_domain() {
        let ty = Type::pi(Type::refine(Type::Int32, eq_outer()), Type::Int32);
        assert_eq!(
            avoid(&ty, 0, Polarity::Positive),
            Type::pi(Type::refine(Type::Int32, Term::bool(false)), Type::Int32)
        );
    }

    #[test]
    fn avoid_closes_other_indices() {
        // {v: Int32 with v == x1}: avoiding x0 keeps the predicate, renumbered.
        let ty = Type::refine(Type::Int32, Term::binop(Op::Eq, Term::var(0), Term::var(2)));
        assert_eq!(
            avoid(&ty, 0, Polarity::Positive),
            Type::refine(Type::Int32, Term::binop(Op::Eq, Term::var(0), Term::var(1)))
        );
    }

    #[test]
    fn avoid_non_positive_mu_collapses() {
        // μX. (X | {v: Int32 with v == x0})
        let body = Type::union(Type::Var(0), Type::refine(Type::Int32, eq_outer()));
        let ty = Type::mu(body);
        assert_eq!(avoid(&ty, 0, Polarity::Positive), Type::Top);
        assert_eq!(avoid(&ty, 0, Polarity::Negative), Type::Bot);
    }
}
