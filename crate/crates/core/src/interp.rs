//! Fuel-bounded big-step interpreter.
//!
//! Fuel bounds the *depth* of evaluation: every recursive call made while
//! evaluating one syntax node receives the same, once-decremented fuel.
//! Continuing a loop counts as one level of depth per iteration.

use std::fmt;
use std::sync::Arc;

use crate::syntax::{Const, Op, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Const(Const),
    Pair(Box<Value>, Box<Value>),
    Inl(Box<Value>),
    Inr(Box<Value>),
    /// `⟨ρ, λx. body⟩`
    Closure(Env, Box<Term>),
    /// `⟨ρ, ΛX. body⟩`
    TypeClosure(Env, Box<Term>),
}

impl Value {
    pub fn unit() -> Value {
        Value::Const(Const::Unit)
    }
    pub fn bool(b: bool) -> Value {
        Value::Const(Const::Bool(b))
    }
    pub fn int(z: i32) -> Value {
        Value::Const(Const::Int(z))
    }
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }
    pub fn inl(v: Value) -> Value {
        Value::Inl(Box::new(v))
    }
    pub fn inr(v: Value) -> Value {
        Value::Inr(Box::new(v))
    }

    /// Constants, and pairs and injections built from them.
    pub fn is_first_order(&self) -> bool {
        match self {
            Value::Const(_) => true,
            Value::Pair(a, b) => a.is_first_order() && b.is_first_order(),
            Value::Inl(v) | Value::Inr(v) => v.is_first_order(),
            Value::Closure(..) | Value::TypeClosure(..) => false,
        }
    }

    /// Encode a list of integers as `inr((h, t))` cells ending in `inl(unit)`.
    pub fn int_list(items: &[i32]) -> Value {
        items
            .iter()
            .rev()
            .fold(Value::inl(Value::unit()), |tail, &h| Value::inr(Value::pair(Value::int(h), tail)))
    }

    /// Inverse of [`Value::int_list`].
    pub fn as_int_list(&self) -> Option<Vec<i32>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Value::Inl(u) if **u == Value::unit() => return Some(out),
                Value::Inr(cell) => match &**cell {
                    Value::Pair(h, t) => {
                        let Value::Const(Const::Int(z)) = **h else {
                            return None;
                        };
                        out.push(z);
                        cur = t;
                    }
                    _ => return None,
                },
                _ => return None,
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Const(c) => write!(f, "{c}"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Inl(v) => write!(f, "inl({v})"),
            Value::Inr(v) => write!(f, "inr({v})"),
            Value::Closure(env, _) => write!(f, "<closure/{}>", env.len()),
            Value::TypeClosure(env, _) => write!(f, "<type-closure/{}>", env.len()),
        }
    }
}

/// Persistent environment, most recent binding first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Env(Option<Arc<EnvCell>>);

#[derive(Debug, PartialEq, Eq, Hash)]
struct EnvCell {
    head: Value,
    tail: Env,
    len: usize,
}

impl Env {
    pub fn empty() -> Env {
        Env(None)
    }

    /// Build an environment from values listed oldest first.
    pub fn from_values(values: impl IntoIterator<Item = Value>) -> Env {
        values.into_iter().fold(Env::empty(), |env, v| env.push(v))
    }

    pub fn push(&self, v: Value) -> Env {
        let len = self.len() + 1;
        Env(Some(Arc::new(EnvCell {
            head: v,
            tail: self.clone(),
            len,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |c| c.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn get(&self, index: usize) -> Option<&Value> {
        let mut cur = self;
        let mut i = index;
        loop {
            let cell = cur.0.as_ref()?;
            if i == 0 {
                return Some(&cell.head);
            }
            i -= 1;
            cur = &cell.tail;
        }
    }

    /// Values most recent first.
    pub fn iter(&self) -> impl Iterator<Item = &Value> {
        let mut cur = self;
        std::iter::from_fn(move || {
            let cell = cur.0.as_ref()?;
            cur = &cell.tail;
            Some(&cell.head)
        })
    }

    /// Drop the binding at `index`, keeping the others in order.
    pub fn remove(&self, index: usize) -> Env {
        let mut vals: Vec<Value> = self.iter().cloned().collect();
        if index < vals.len() {
            vals.remove(index);
        }
        Env::from_values(vals.into_iter().rev())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Timeout,
    Stuck,
    Val(Value),
}

impl Outcome {
    pub fn value(&self) -> Option<&Value> {
        match self {
            Outcome::Val(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_stuck(&self) -> bool {
        matches!(self, Outcome::Stuck)
    }

    pub fn is_timeout(&self) -> bool {
        matches!(self, Outcome::Timeout)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Timeout => f.write_str("timeout"),
            Outcome::Stuck => f.write_str("stuck"),
            Outcome::Val(v) => write!(f, "{v}"),
        }
    }
}

/// Primitive operations. `None` means the operation is stuck.
pub fn delta(op: Op, lhs: &Value, rhs: &Value) -> Option<Value> {
    use Const::{Bool, Int};
    match (op, lhs, rhs) {
        (Op::Eq, a, b) if a.is_first_order() && b.is_first_order() => Some(Value::bool(a == b)),
        (Op::Ne, a, b) if a.is_first_order() && b.is_first_order() => Some(Value::bool(a != b)),
        (Op::And, Value::Const(Bool(a)), Value::Const(Bool(b))) => Some(Value::bool(*a && *b)),
        (Op::Or, Value::Const(Bool(a)), Value::Const(Bool(b))) => Some(Value::bool(*a || *b)),
        (_, Value::Const(Int(a)), Value::Const(Int(b))) => {
            let (a, b) = (*a, *b);
            match op {
                Op::Add => Some(Value::int(a.wrapping_add(b))),
                Op::Sub => Some(Value::int(a.wrapping_sub(b))),
                Op::Mul => Some(Value::int(a.wrapping_mul(b))),
                // Truncating division; the remainder takes the dividend's sign.
                Op::Div if b != 0 => Some(Value::int(a.wrapping_div(b))),
                Op::Mod if b != 0 => Some(Value::int(a.wrapping_rem(b))),
                Op::Lt => Some(Value::bool(a < b)),
                Op::Le => Some(Value::bool(a <= b)),
                Op::Gt => Some(Value::bool(a > b)),
                Op::Ge => Some(Value::bool(a >= b)),
                _ => None,
            }
        }
        _ => None,
    }
}

macro_rules! value {
    ($e:expr) => {
        match $e {
            Outcome::Val(v) => v,
            other => return other,
        }
    };
}

/// Evaluate `term` under `env` with the given fuel.
pub fn eval(fuel: u64, env: &Env, term: &Term) -> Outcome {
    if fuel == 0 {
        return Outcome::Timeout;
    }
    let n = fuel - 1;
    match term {
        Term::Const(c) => Outcome::Val(Value::Const(*c)),
        Term::Var(i) => match env.get(*i) {
            Some(v) => Outcome::Val(v.clone()),
            None => Outcome::Stuck,
        },
        Term::Abs(_, body) => Outcome::Val(Value::Closure(env.clone(), body.clone())),
        Term::TAbs(_, _, body) => Outcome::Val(Value::TypeClosure(env.clone(), body.clone())),
        Term::App(f, a) => {
            let fv = value!(eval(n, env, f));
            let Value::Closure(fenv, body) = fv else {
                return Outcome::Stuck;
            };
            let av = value!(eval(n, env, a));
            eval(n, &fenv.push(av), &body)
        }
        Term::TApp(f, _) => {
            let fv = value!(eval(n, env, f));
            let Value::TypeClosure(fenv, body) = fv else {
                return Outcome::Stuck;
            };
            eval(n, &fenv, &body)
        }
        Term::Let(_, a, b) => {
            let av = value!(eval(n, env, a));
            eval(n, &env.push(av), b)
        }
        Term::Pair(a, b) => {
            let av = value!(eval(n, env, a));
            let bv = value!(eval(n, env, b));
            Outcome::Val(Value::pair(av, bv))
        }
        Term::MatchPair(s, body) => match value!(eval(n, env, s)) {
            Value::Pair(a, b) => eval(n, &env.push(*a).push(*b), body),
            _ => Outcome::Stuck,
        },
        Term::MatchSum(s, l, r) => match value!(eval(n, env, s)) {
            Value::Inl(v) => eval(n, &env.push(*v), l),
            Value::Inr(v) => eval(n, &env.push(*v), r),
            _ => Outcome::Stuck,
        },
        Term::Inl(_, a) => Outcome::Val(Value::inl(value!(eval(n, env, a)))),
        Term::Inr(_, a) => Outcome::Val(Value::inr(value!(eval(n, env, a)))),
        Term::BinOp(op, a, b) => {
            let av = value!(eval(n, env, a));
            let bv = value!(eval(n, env, b));
            match delta(*op, &av, &bv) {
                Some(v) => Outcome::Val(v),
                None => Outcome::Stuck,
            }
        }
        Term::If(c, t, e) => match value!(eval(n, env, c)) {
            Value::Const(Const::Bool(true)) => eval(n, env, t),
            Value::Const(Const::Bool(false)) => eval(n, env, e),
            _ => Outcome::Stuck,
        },
        Term::Loop(init, body) => {
            let mut state = value!(eval(n, env, init));
            let mut level = n;
            loop {
                match value!(eval(level, &env.push(state), body)) {
                    Value::Inr(v) => return Outcome::Val(*v),
                    Value::Inl(next) => {
                        // `loop(v1) x. b` is re-entered one level deeper.
                        if level == 0 {
                            return Outcome::Timeout;
                        }
                        level -= 1;
                        state = *next;
                    }
                    _ => return Outcome::Stuck,
                }
            }
        }
    }
}

pub const DEFAULT_FUEL: u64 = 1000;

/// Evaluate with a fixed fuel cap, on a thread with a stack large enough
/// for the deepest evaluation the cap permits.
pub fn run(max_fuel: u64, env: &Env, term: &Term) -> Outcome {
    let max_fuel = max_fuel.max(1);
    // Every level of depth costs at most a few stack frames.
    let stack = (max_fuel as usize).saturating_mul(4 * 1024).clamp(8 << 20, 1 << 30);
    let env = env.clone();
    let term = term.clone();
    std::thread::Builder::new()
        .stack_size(stack)
        .spawn(move || eval(max_fuel, &env, &term))
        .expect("spawn evaluator thread")
        .join()
        .expect("evaluator thread panicked")
}
