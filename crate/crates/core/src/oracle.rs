//! Executable, finite approximation of the semantic type interpretation,
//! for first-order types. Used by tests and by `solve --oracle`.

use std::ops::RangeInclusive;

use crate::interp::{eval, Env, Outcome, Value};
use crate::syntax::{Const, Term, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub predicate_fuel: u64,
    pub mu_depth: usize,
    pub int_domain: RangeInclusive<i32>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            predicate_fuel: 256,
            mu_depth: 8,
            int_domain: -8..=8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("the oracle does not interpret {0} types")]
    HigherOrder(&'static str),
    #[error("type variable {0} is not bound by a recursive type")]
    FreeTypeVariable(usize),
}

/// Interpretation of a type variable bound by `μ`: the `k`-th
/// approximation of the recursive type's body.
#[derive(Clone)]
struct Approx<'a> {
    body: &'a Type,
    outer: Vec<Approx<'a>>,
    level: usize,
}

fn and3(a: Option<bool>, b: impl FnOnce() -> Result<Option<bool>, OracleError>) -> Result<Option<bool>, OracleError> {
    if a == Some(false) {
        return Ok(Some(false));
    }
    let b = b()?;
    Ok(match (a, b) {
        (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    })
}

fn or3(a: Option<bool>, b: impl FnOnce() -> Result<Option<bool>, OracleError>) -> Result<Option<bool>, OracleError> {
    if a == Some(true) {
        return Ok(Some(true));
    }
    let b = b()?;
    Ok(match (a, b) {
        (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    })
}

/// Membership of `v` in the interpretation of `ty`, with the term
/// variables of `ty` bound by `env`. `None` means a predicate timed out.
pub fn vmember(cfg: &OracleConfig, ty: &Type, v: &Value, env: &Env) -> Result<Option<bool>, OracleError> {
    member(cfg, ty, v, env, &[])
}

fn member(cfg: &OracleConfig, ty: &Type, v: &Value, env: &Env, tenv: &[Approx<'_>]) -> Result<Option<bool>, OracleError> {
    Ok(match (ty, v) {
        (Type::Top, _) => Some(true),
        (Type::Bot, _) => Some(false),
        (Type::Unit, _) => Some(*v == Value::unit()),
        (Type::True, _) => Some(*v == Value::bool(true)),
        (Type::False, _) => Some(*v == Value::bool(false)),
        (Type::Int32, _) => Some(matches!(v, Value::Const(Const::Int(_)))),
        (Type::Pi(..), _) => return Err(OracleError::HigherOrder("function")),
        (Type::Forall(..), _) => return Err(OracleError::HigherOrder("polymorphic")),
        (Type::Sigma(a, b), Value::Pair(x, y)) => {
            and3(member(cfg, a, x, env, tenv)?, || member(cfg, b, y, &env.push((**x).clone()), tenv))?
        }
        (Type::Sum(a, _), Value::Inl(x)) => member(cfg, a, x, env, tenv)?,
        (Type::Sum(_, b), Value::Inr(y)) => member(cfg, b, y, env, tenv)?,
        (Type::Sigma(a, b), _) | (Type::Sum(a, b), _) => {
            // Still reject higher-order components consistently.
            check_first_order(a)?;
            check_first_order(b)?;
            Some(false)
        }
        (Type::Union(a, b), _) => or3(member(cfg, a, v, env, tenv)?, || member(cfg, b, v, env, tenv))?,
        (Type::Inter(a, b), _) => and3(member(cfg, a, v, env, tenv)?, || member(cfg, b, v, env, tenv))?,
        (Type::Refine(a, p), _) => and3(member(cfg, a, v, env, tenv)?, || {
            Ok(match eval(cfg.predicate_fuel, &env.push(v.clone()), p) {
                Outcome::Val(r) => Some(r == Value::bool(true)),
                Outcome::Stuck => Some(false),
                Outcome::Timeout => None,
            })
        })?,
        (Type::Mu(body), _) => {
            // Fⁿ(v) for every n up to the configured depth; F⁰ holds everywhere.
            let mut acc = Some(true);
            for n in 1..=cfg.mu_depth {
                let mut inner = vec![Approx {
                    body,
                    outer: tenv.to_vec(),
                    level: n - 1,
                }];
                inner.extend_from_slice(tenv);
                acc = and3(acc, || member(cfg, body, v, env, &inner))?;
                if acc == Some(false) {
                    break;
                }
            }
            acc
        }
        (Type::Var(i), _) => {
            let approx = tenv.get(*i).ok_or(OracleError::FreeTypeVariable(*i))?;
            if approx.level == 0 {
                Some(true)
            } else {
                let mut inner = vec![Approx {
                    body: approx.body,
                    outer: approx.outer.clone(),
                    level: approx.level - 1,
                }];
                inner.extend_from_slice(&approx.outer);
                member(cfg, approx.body, v, env, &inner)?
            }
        }
    })
}

fn check_first_order(ty: &Type) -> Result<(), OracleError> {
    match ty {
        Type::Pi(..) => Err(OracleError::HigherOrder("function")),
        Type::Forall(..) => Err(OracleError::HigherOrder("polymorphic")),
        _ => Ok(()),
    }
}

/// Can the oracle interpret this type (no functions or quantifiers, every
/// type variable bound by an enclosing `μ`)?
pub fn interpretable(ty: &Type) -> bool {
    fn go(ty: &Type, depth: usize) -> bool {
        match ty {
            Type::Pi(..) | Type::Forall(..) => false,
            Type::Var(i) => *i < depth,
            Type::Unit | Type::True | Type::False | Type::Int32 | Type::Top | Type::Bot => true,
            Type::Sigma(a, b) | Type::Sum(a, b) | Type::Union(a, b) | Type::Inter(a, b) => go(a, depth) && go(b, depth),
            Type::Refine(a, _) => go(a, depth),
            Type::Mu(b) => go(b, depth + 1),
        }
    }
    go(ty, 0)
}

/// Environment in which term variable `i` is `values[i]`.
pub fn env_of(values: &[Value]) -> Env {
    Env::from_values(values.iter().rev().cloned())
}

/// Search the integer domain for an assignment to `atoms` variables that
/// satisfies every fact but not the goal. Variable `i` of the predicates
/// is the `i`-th atom.
pub fn brute_countermodel(cfg: &OracleConfig, atoms: usize, facts: &[Term], goal: &Term) -> Option<Vec<i32>> {
    let domain: Vec<i32> = cfg.int_domain.clone().collect();
    if domain.is_empty() {
        return None;
    }
    let mut choice = vec![0usize; atoms];
    loop {
        let values: Vec<Value> = choice.iter().map(|&i| Value::int(domain[i])).collect();
        let env = env_of(&values);
        let holds = |t: &Term| eval(cfg.predicate_fuel, &env, t) == Outcome::Val(Value::bool(true));
        if facts.iter().all(holds) && !holds(goal) {
            return Some(choice.iter().map(|&i| domain[i]).collect());
        }
        let mut k = 0;
        loop {
            if k == atoms {
                return None;
            }
            choice[k] += 1;
            if choice[k] < domain.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Does every assignment satisfying the facts satisfy the goal? Facts
/// that get stuck count as unsatisfied; a stuck goal counts as false.
pub fn brute_entails(cfg: &OracleConfig, atoms: usize, facts: &[Term], goal: &Term) -> bool {
    brute_countermodel(cfg, atoms, facts, goal).is_none()
}
