//! Concrete-syntax printing with generated binder names.

use super::{Const, Op, Term, Type};

/// Names for the variables in scope, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub terms: Vec<String>,
    pub types: Vec<String>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    /// A scope with `terms` term variables and `types` type variables
    /// named after their level.
    pub fn generated(terms: usize, types: usize) -> Scope {
        Scope {
            terms: (0..terms).map(|i| format!("x{i}")).collect(),
            types: (0..types).map(|i| format!("X{i}")).collect(),
        }
    }

    fn fresh(taken: &[String], stem: &str) -> String {
        let mut n = taken.len();
        loop {
            let name = format!("{stem}{n}");
            if !taken.contains(&name) {
                return name;
            }
            n += 1;
        }
    }

    fn term_name(&self, i: usize) -> String {
        match self.terms.len().checked_sub(i + 1) {
            Some(k) => self.terms[k].clone(),
            None => format!("free{}", i - self.terms.len()),
        }
    }

    fn type_name(&self, i: usize) -> String {
        match self.types.len().checked_sub(i + 1) {
            Some(k) => self.types[k].clone(),
            None => format!("Free{}", i - self.types.len()),
        }
    }

    fn bind_term(&mut self) -> String {
        let name = Scope::fresh(&self.terms, "x");
        self.terms.push(name.clone());
        name
    }

    fn bind_type(&mut self) -> String {
        let name = Scope::fresh(&self.types, "X");
        self.types.push(name.clone());
        name
    }
}

pub fn show_term(t: &Term) -> String {
    show_term_in(t, &mut Scope::new())
}

pub fn show_type(ty: &Type) -> String {
    show_type_in(ty, &mut Scope::new())
}

pub fn show_term_in(t: &Term, scope: &mut Scope) -> String {
    let mut out = String::new();
    term(t, 0, scope, &mut out);
    out
}

pub fn show_type_in(ty: &Type, scope: &mut Scope) -> String {
    let mut out = String::new();
    ty_(ty, 0, scope, &mut out);
    out
}

// Term levels: 0 binders and keywords, 1 ||, 2 &&, 3 comparisons, 4 + -,
// 5 * / %, 6 application and injections, 7 type application, 8 atoms.
fn op_level(op: Op) -> u8 {
    match op {
        Op::Or => 1,
        Op::And => 2,
        Op::Eq | Op::Ne | Op::Lt | Op::Le | Op::Gt | Op::Ge => 3,
        Op::Add | Op::Sub => 4,
        Op::Mul | Op::Div | Op::Mod => 5,
    }
}

fn term_level(t: &Term) -> u8 {
    match t {
        Term::Const(Const::Int(z)) if *z < 0 => 5,
        Term::Const(_) | Term::Var(_) | Term::Pair(..) => 8,
        Term::TApp(..) => 7,
        Term::App(..) | Term::Inl(..) | Term::Inr(..) => 6,
        Term::BinOp(op, ..) => op_level(*op),
        _ => 0,
    }
}

fn term(t: &Term, min: u8, scope: &mut Scope, out: &mut String) {
    let paren = term_level(t) < min;
    if paren {
        out.push('(');
    }
    match t {
        Term::Const(c) => out.push_str(&c.to_string()),
        Term::Var(i) => out.push_str(&scope.term_name(*i)),
        Term::Abs(a, b) => {
            let mut inner = scope.clone();
            let name = inner.bind_term();
            out.push_str(&format!("fun({name}: "));
            ty_(a, 0, scope, out);
            out.push_str(") => ");
            term(b, 0, &mut inner, out);
        }
        Term::App(f, a) => {
            let fmin = if matches!(**f, Term::App(..)) { 6 } else { 7 };
            term(f, fmin, scope, out);
            out.push(' ');
            term(a, 7, scope, out);
        }
        Term::TAbs(l, u, b) => {
            let mut inner = scope.clone();
            let name = inner.bind_type();
            out.push_str(&format!("Fun({name} >: "));
            ty_(l, 0, scope, out);
            out.push_str(" <: ");
            ty_(u, 0, scope, out);
            out.push_str(") => ");
            term(b, 0, &mut inner, out);
        }
        Term::TApp(f, a) => {
            term(f, 7, scope, out);
            out.push('[');
            ty_(a, 0, scope, out);
            out.push(']');
        }
        Term::Let(ann, a, b) => {
            let mut inner = scope.clone();
            let name = inner.bind_term();
            out.push_str(&format!("let {name}"));
            if let Some(ann) = ann {
                out.push_str(": ");
                ty_(ann, 0, scope, out);
            }
            out.push_str(" = ");
            term(a, 0, scope, out);
            out.push_str(" in ");
            term(b, 0, &mut inner, out);
        }
        Term::Pair(a, b) => {
            out.push('(');
            term(a, 0, scope, out);
            out.push_str(", ");
            term(b, 0, scope, out);
            out.push(')');
        }
        Term::MatchPair(s, b) => {
            out.push_str("match ");
            term(s, 0, scope, out);
            let mut inner = scope.clone();
            let x = inner.bind_term();
            let y = inner.bind_term();
            out.push_str(&format!(" with ({x}, {y}) => "));
            term(b, 0, &mut inner, out);
        }
        Term::MatchSum(s, l, r) => {
            out.push_str("match ");
            term(s, 0, scope, out);
            let mut left = scope.clone();
            let x = left.bind_term();
            out.push_str(&format!(" with inl({x}) => "));
            // A nested match in the left arm would capture the `| inr`.
            term(l, if ends_with_match(l) { 1 } else { 0 }, &mut left, out);
            let mut right = scope.clone();
            let y = right.bind_term();
            out.push_str(&format!(" | inr({y}) => "));
            term(r, 0, &mut right, out);
        }
        Term::Inl(ty, a) | Term::Inr(ty, a) => {
            out.push_str(if matches!(t, Term::Inl(..)) { "inl[" } else { "inr[" });
            ty_(ty, 0, scope, out);
            out.push_str("] ");
            term(a, 6, scope, out);
        }
        Term::BinOp(op, a, b) => {
            let lvl = op_level(*op);
            let (lmin, rmin) = if lvl == 3 { (4, 4) } else { (lvl, lvl + 1) };
            term(a, lmin, scope, out);
            out.push_str(&format!(" {} ", op.symbol()));
            term(b, rmin, scope, out);
        }
        Term::If(c, a, b) => {
            out.push_str("if ");
            term(c, 0, scope, out);
            out.push_str(" then ");
            term(a, 0, scope, out);
            out.push_str(" else ");
            term(b, 0, scope, out);
        }
        Term::Loop(i, b) => {
            out.push_str("loop(");
            term(i, 0, scope, out);
            let mut inner = scope.clone();
            let x = inner.bind_term();
            out.push_str(&format!(") {x} => "));
            term(b, 0, &mut inner, out);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Does the printed form of `t` end in an unparenthesized sum match?
fn ends_with_match(t: &Term) -> bool {
    match t {
        Term::MatchSum(..) => true,
        Term::Abs(_, b) | Term::TAbs(_, _, b) | Term::Let(_, _, b) | Term::MatchPair(_, b) | Term::Loop(_, b) => {
            ends_with_match(b)
        }
        Term::If(_, _, b) => ends_with_match(b),
        _ => false,
    }
}

// Type levels: 0 binders, 1 |, 2 &, 3 +, 4 atoms.
fn type_level(ty: &Type) -> u8 {
    match ty {
        Type::Pi(..) | Type::Forall(..) | Type::Sigma(..) | Type::Mu(..) => 0,
        Type::Union(..) => 1,
        Type::Inter(..) => 2,
        Type::Sum(..) => 3,
        _ => 4,
    }
}

fn ty_(ty: &Type, min: u8, scope: &mut Scope, out: &mut String) {
    let paren = type_level(ty) < min;
    if paren {
        out.push('(');
    }
    match ty {
        Type::Var(i) => out.push_str(&scope.type_name(*i)),
        Type::Unit => out.push_str("Unit"),
        Type::True => out.push_str("True"),
        Type::False => out.push_str("False"),
        Type::Int32 => out.push_str("Int32"),
        Type::Top => out.push_str("Top"),
        Type::Bot => out.push_str("Bot"),
        Type::Pi(a, b) | Type::Sigma(a, b) => {
            let mut inner = scope.clone();
            let name = inner.bind_term();
            let (kw, arrow) = if matches!(ty, Type::Pi(..)) { ("Pi", "->") } else { ("Sig", "*") };
            out.push_str(&format!("{kw}({name}: "));
            ty_(a, 0, scope, out);
            out.push_str(&format!(") {arrow} "));
            ty_(b, 0, &mut inner, out);
        }
        Type::Forall(l, u, b) => {
            let mut inner = scope.clone();
            let name = inner.bind_type();
            out.push_str(&format!("All({name} >: "));
            ty_(l, 0, scope, out);
            out.push_str(" <: ");
            ty_(u, 0, scope, out);
            out.push_str(") -> ");
            ty_(b, 0, &mut inner, out);
        }
        Type::Sum(a, b) | Type::Union(a, b) | Type::Inter(a, b) => {
            let lvl = type_level(ty);
            let sym = match ty {
                Type::Sum(..) => "+",
                Type::Union(..) => "|",
                _ => "&",
            };
            ty_(a, lvl + 1, scope, out);
            out.push_str(&format!(" {sym} "));
            ty_(b, lvl, scope, out);
        }
        Type::Refine(a, p) => {
            let mut inner = scope.clone();
            let name = inner.bind_term();
            out.push_str(&format!("{{{name}: "));
            ty_(a, 0, scope, out);
            out.push_str(" with ");
            term(p, 0, &mut inner, out);
            out.push('}');
        }
        Type::Mu(b) => {
            let mut inner = scope.clone();
            let name = inner.bind_type();
            out.push_str(&format!("mu {name}. "));
            ty_(b, 0, &mut inner, out);
        }
    }
    if paren {
        out.push(')');
    }
}
