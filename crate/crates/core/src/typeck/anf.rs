//! Let-hoisting into the administrative normal form the typing rules
//! expect: application arguments, first pair components and type
//! application receivers become variables.

use crate::syntax::{lift_term, lift_type, Term, Type};

fn bx<T>(x: T) -> Box<T> {
    Box::new(x)
}

pub fn anf_transform(t: &Term) -> Term {
    match t {
        Term::Const(_) | Term::Var(_) => t.clone(),
        Term::Abs(a, b) => Term::Abs(bx(anf_type(a)), bx(anf_transform(b))),
        Term::App(f, a) => {
            let (f, a) = (anf_transform(f), anf_transform(a));
            if a.is_var() {
                Term::app(f, a)
            } else if let Term::Var(i) = f {
                Term::let_(None, a, Term::app(Term::var(i + 1), Term::var(0)))
            } else {
                // Bind the function first so it is still evaluated first.
                Term::let_(
                    None,
                    f,
                    Term::let_(None, lift_term(&a, 1, 0), Term::app(Term::var(1), Term::var(0))),
                )
            }
        }
        Term::TAbs(l, u, b) => Term::TAbs(bx(anf_type(l)), bx(anf_type(u)), bx(anf_transform(b))),
        Term::TApp(f, ty) => {
            let (f, ty) = (anf_transform(f), anf_type(ty));
            if f.is_var() {
                Term::tapp(f, ty)
            } else {
                Term::let_(None, f, Term::tapp(Term::var(0), lift_type(&ty, 1, 0)))
            }
        }
        Term::Let(ann, a, b) => Term::Let(
            ann.as_ref().map(|ty| bx(anf_type(ty))),
            bx(anf_transform(a)),
            bx(anf_transform(b)),
        ),
        Term::Pair(a, b) => {
            let (a, b) = (anf_transform(a), anf_transform(b));
            if a.is_var() {
                Term::pair(a, b)
            } else {
                Term::let_(None, a, Term::pair(Term::var(0), lift_term(&b, 1, 0)))
            }
        }
        Term::MatchPair(s, b) => Term::match_pair(anf_transform(s), anf_transform(b)),
        Term::MatchSum(s, l, r) => Term::match_sum(anf_transform(s), anf_transform(l), anf_transform(r)),
        Term::Inl(ty, a) => Term::inl(anf_type(ty), anf_transform(a)),
        Term::Inr(ty, a) => Term::inr(anf_type(ty), anf_transform(a)),
        Term::BinOp(op, a, b) => Term::binop(*op, anf_transform(a), anf_transform(b)),
        Term::If(c, a, b) => Term::if_(anf_transform(c), anf_transform(a), anf_transform(b)),
        Term::Loop(i, b) => Term::loop_(anf_transform(i), anf_transform(b)),
    }
}

/// Apply the transform to every predicate inside a type.
pub fn anf_type(ty: &Type) -> Type {
    match ty {
        Type::Var(_) | Type::Unit | Type::True | Type::False | Type::Int32 | Type::Top | Type::Bot => ty.clone(),
        Type::Pi(a, b) => Type::pi(anf_type(a), anf_type(b)),
        Type::Forall(l, u, b) => Type::forall(anf_type(l), anf_type(u), anf_type(b)),
        Type::Sigma(a, b) => Type::sigma(anf_type(a), anf_type(b)),
        Type::Sum(a, b) => Type::sum(anf_type(a), anf_type(b)),
        Type::Union(a, b) => Type::union(anf_type(a), anf_type(b)),
        Type::Inter(a, b) => Type::inter(anf_type(a), anf_type(b)),
        Type::Refine(a, p) => Type::refine(anf_type(a), anf_transform(p)),
        Type::Mu(b) => Type::mu(anf_type(b)),
    }
}

/// Does the term already satisfy the variable-argument conventions?
pub fn is_anf(t: &Term) -> bool {
    let mut ok = true;
    t.visit(&mut |n| match n {
        Term::App(_, a) => ok &= a.is_var(),
        Term::Pair(a, _) => ok &= a.is_var(),
        Term::TApp(f, _) => ok &= f.is_var(),
        _ => {}
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{eval, Env};
    use crate::syntax::Op;

    fn id() -> Term {
        Term::abs(Type::Int32, Term::var(0))
    }

    #[test]
    fn hoists_argument() {
        let t = Term::app(Term::var(0), Term::binop(Op::Add, Term::int(1), Term::int(2)));
        let expected = Term::let_(
            None,
            Term::binop(Op::Add, Term::int(1), Term::int(2)),
            Term::app(Term::var(1), Term::var(0)),
        );
        assert_eq!(anf_transform(&t), expected);
    }

    #[test]
    fn variable_argument_unchanged() {
        let t = Term::app(Term::var(1), Term::var(0));
        assert_eq!(anf_transform(&t), t);
    }

    #[test]
    fn nested_hoisting_preserves_value() {
        // ((fun(x) => fun(y) => x - y) (id 1)) 2
        let sub = Term::abs(Type::Int32, Term::abs(Type::Int32, Term::binop(Op::Sub, Term::var(1), Term::var(0))));
        let t = Term::app(Term::app(sub, Term::app(id(), Term::int(1))), Term::int(2));
        let a = anf_transform(&t);
        assert!(is_anf(&a));
        assert!(!is_anf(&t));
        assert_eq!(eval(100, &Env::empty(), &t), eval(100, &Env::empty(), &a));
    }

    #[test]
    fn pair_and_type_application() {
        let t = Term::pair(Term::int(1), Term::var(0));
        assert_eq!(anf_transform(&t), Term::let_(None, Term::int(1), Term::pair(Term::var(0), Term::var(1))));
        let poly = Term::tabs(Type::Bot, Type::Top, Term::abs(Type::Var(0), Term::var(0)));
        let t = Term::tapp(poly.clone(), Type::Int32);
        assert_eq!(anf_transform(&t), Term::let_(None, poly, Term::tapp(Term::var(0), Type::Int32)));
    }
}
