//! Predicate entailment with an acyclic e-graph.
//!
//! `entails` decides `facts, P₁ ⇒ P₂` by inserting the goal, merging every
//! fact and the hypothesis with `true`, and checking whether the goal's
//! class became `true`. Top-level disjunctions among the assumptions are
//! split into separate cases, each solved in a fresh graph.

mod egraph;
mod expr;

pub use egraph::{EGraph, FlatSum, Id, MergeError, Rule, SNode};
pub use expr::{ConvertError, PExpr};

use crate::syntax::{Const, Op};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub merge_cap: usize,
    pub max_splits: usize,
    pub max_cases: usize,
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            merge_cap: 10_000,
            max_splits: 8,
            max_cases: 256,
            trace: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub facts: Vec<PExpr>,
    pub hypothesis: PExpr,
    pub goal: PExpr,
}

impl Query {
    pub fn new(facts: Vec<PExpr>, hypothesis: PExpr, goal: PExpr) -> Query {
        Query { facts, hypothesis, goal }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The goal became equivalent to `true` in every case.
    Proved,
    /// The assumptions of every remaining case are contradictory.
    Vacuous,
    /// Some case left the goal undecided.
    NotDerived,
    /// The goal divides by something not known to be nonzero.
    Undefined,
    SplitCap,
    MergeCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub entailed: bool,
    pub reason: Reason,
    pub cases: usize,
    pub merges: usize,
    pub trace: Vec<String>,
}

/// Insert a predicate expression into the graph.
pub fn insert(g: &mut EGraph, e: &PExpr) -> Id {
    match e {
        PExpr::Const(c) => g.constant(*c),
        PExpr::Atom(a) => g.atom(*a),
        PExpr::Bound(k) => g.add(SNode::Bound(*k)),
        PExpr::Bin(op, a, b) => {
            let (a, b) = (insert(g, a), insert(g, b));
            g.add(SNode::Bin(*op, a, b))
        }
        PExpr::Pair(a, b) => {
            let (a, b) = (insert(g, a), insert(g, b));
            g.add(SNode::Pair(a, b))
        }
        PExpr::Apply(a, b) => {
            let (a, b) = (insert(g, a), insert(g, b));
            g.add(SNode::Apply(a, b))
        }
        PExpr::Inl(a) => {
            let a = insert(g, a);
            g.add(SNode::Inl(a))
        }
        PExpr::Inr(a) => {
            let a = insert(g, a);
            g.add(SNode::Inr(a))
        }
        PExpr::Proj1(a) => {
            let a = insert(g, a);
            g.add(SNode::Proj1(a))
        }
        PExpr::Proj2(a) => {
            let a = insert(g, a);
            g.add(SNode::Proj2(a))
        }
        PExpr::Lambda(a) => {
            let a = insert(g, a);
            g.add(SNode::Lambda(a))
        }
    }
}

fn strict_divisors(e: &PExpr) -> Vec<PExpr> {
    let mut out = Vec::new();
    e.visit_strict(&mut |n| {
        if let PExpr::Bin(Op::Div | Op::Mod, _, d) = n {
            out.push((**d).clone());
        }
    });
    out
}

fn lambda_division(e: &PExpr) -> bool {
    let mut found = false;
    e.visit_strict(&mut |n| {
        if let PExpr::Lambda(body) = n {
            found |= body.contains_division();
        }
    });
    found
}

enum CaseResult {
    Proved,
    Vacuous,
    NotDerived,
    Undefined,
    Capped,
}

fn solve_case(cfg: &SolverConfig, facts: &[PExpr], goal: &PExpr, trace: &mut Vec<String>) -> (CaseResult, usize) {
    let mut g = EGraph::new(cfg.merge_cap);
    if cfg.trace {
        g = g.with_trace();
    }
    let goal_id = insert(&mut g, goal);
    for f in facts {
        let id = insert(&mut g, f);
        g.assert_true(id);
        if g.is_contradictory() || g.is_incomplete() {
            break;
        }
    }
    let merges = g.merges();
    trace.extend(g.take_trace());
    if g.is_contradictory() {
        return (CaseResult::Vacuous, merges);
    }
    if g.is_incomplete() {
        return (CaseResult::Capped, merges);
    }
    if !g.is_true(goal_id) {
        return (CaseResult::NotDerived, merges);
    }
    // Congruence identifies `x / y` with itself even when `y` is zero and
    // the goal is stuck; a goal division needs a divisor known nonzero.
    if goal.contains_division() {
        if lambda_division(goal) || (goal.contains_apply() && facts.iter().any(|f| f.contains_division())) {
            return (CaseResult::Undefined, merges);
        }
        let known: Vec<Id> = facts
            .iter()
            .flat_map(strict_divisors)
            .map(|d| {
                let id = insert(&mut g, &d);
                g.find(id)
            })
            .collect();
        for d in strict_divisors(goal) {
            let id = insert(&mut g, &d);
            let id = g.find(id);
            let nonzero = match g.node(id) {
                SNode::Const(Const::Int(z)) => *z != 0,
                _ => known.contains(&id) || g.excludes(id, 0),
            };
            if !nonzero {
                return (CaseResult::Undefined, merges);
            }
        }
    }
    (CaseResult::Proved, merges)
}

/// Decide whether the facts and hypothesis entail the goal.
pub fn entails(query: &Query, cfg: &SolverConfig) -> Verdict {
    let mut plain = Vec::new();
    let mut splits: Vec<Vec<PExpr>> = Vec::new();
    for f in query.facts.iter().chain(std::iter::once(&query.hypothesis)) {
        for c in f.clone().conjuncts() {
            let ds = c.clone().disjuncts();
            if ds.len() > 1 {
                splits.push(ds);
            } else {
                plain.push(c);
            }
        }
    }
    let total = splits.iter().try_fold(1usize, |acc, d| acc.checked_mul(d.len()));
    let mut verdict = Verdict {
        entailed: false,
        reason: Reason::SplitCap,
        cases: 0,
        merges: 0,
        trace: Vec::new(),
    };
    let Some(total) = total.filter(|&t| splits.len() <= cfg.max_splits && t <= cfg.max_cases) else {
        return verdict;
    };
    let mut all_vacuous = true;
    let mut choice = vec![0usize; splits.len()];
    for case in 0..total {
        let mut facts = plain.clone();
        for (d, &i) in splits.iter().zip(&choice) {
            facts.push(d[i].clone());
        }
        if cfg.trace && total > 1 {
            verdict.trace.push(format!("case {}/{}", case + 1, total));
        }
        let (res, merges) = solve_case(cfg, &facts, &query.goal, &mut verdict.trace);
        verdict.cases += 1;
        verdict.merges += merges;
        let failure = match res {
            CaseResult::Proved => {
                all_vacuous = false;
                None
            }
            CaseResult::Vacuous => None,
            CaseResult::NotDerived => Some(Reason::NotDerived),
            CaseResult::Undefined => Some(Reason::Undefined),
            CaseResult::Capped => Some(Reason::MergeCap),
        };
        if let Some(reason) = failure {
            verdict.reason = reason;
            return verdict;
        }
        for (slot, d) in choice.iter_mut().zip(&splits) {
            *slot += 1;
            if *slot < d.len() {
                break;
            }
            *slot = 0;
        }
    }
    verdict.entailed = true;
    verdict.reason = if all_vacuous { Reason::Vacuous } else { Reason::Proved };
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> PExpr {
        PExpr::Atom(0)
    }
    fn y() -> PExpr {
        PExpr::Atom(1)
    }
    fn b(op: Op, l: PExpr, r: PExpr) -> PExpr {
        PExpr::bin(op, l, r)
    }
    fn holds(facts: Vec<PExpr>, hyp: PExpr, goal: PExpr) -> bool {
        entails(&Query::new(facts, hyp, goal), &SolverConfig::default()).entailed
    }

    #[test]
    fn constant_folding_after_substitution() {
        let fact = b(Op::Eq, x(), PExpr::int(3));
        let goal = b(Op::Eq, b(Op::Add, x(), PExpr::int(1)), PExpr::int(4));
        assert!(holds(vec![fact], PExpr::bool(true), goal));
    }

    #[test]
    fn reflexive_equality() {
        assert!(holds(vec![], PExpr::bool(true), b(Op::Eq, x(), x())));
    }

    #[test]
    fn like_terms() {
        let five_x = b(Op::Mul, PExpr::int(5), x());
        let sum = b(Op::Add, b(Op::Mul, PExpr::int(2), x()), b(Op::Mul, PExpr::int(3), x()));
        assert!(holds(vec![b(Op::Eq, y(), sum)], PExpr::bool(true), b(Op::Eq, y(), five_x)));
    }

    #[test]
    fn case_split_on_disjunction() {
        let fact = b(Op::Or, b(Op::Eq, x(), PExpr::int(1)), b(Op::Eq, x(), PExpr::int(2)));
        let goal = b(Op::Ge, x(), PExpr::int(1));
        let v = entails(&Query::new(vec![fact], PExpr::bool(true), goal), &SolverConfig::default());
        assert!(v.entailed);
        assert_eq!(v.cases, 2);
    }

    #[test]
    fn transitivity_through_constants() {
        let hyp = b(Op::Gt, x(), PExpr::int(1));
        assert!(holds(vec![], hyp.clone(), b(Op::Gt, x(), PExpr::int(0))));
        assert!(holds(vec![], hyp, b(Op::Ge, x(), PExpr::int(2))));
        assert!(!holds(vec![], b(Op::Gt, x(), PExpr::int(0)), b(Op::Gt, x(), PExpr::int(1))));
    }

    #[test]
    fn division_needs_known_divisor() {
        let q = b(Op::Div, x(), y());
        assert!(!holds(vec![], PExpr::bool(true), b(Op::Eq, q.clone(), q.clone())));
        let nonzero = b(Op::Gt, y(), PExpr::int(0));
        assert!(holds(vec![nonzero], PExpr::bool(true), b(Op::Eq, q.clone(), q)));
    }

    #[test]
    fn too_many_splits_give_up() {
        let facts: Vec<PExpr> = (0..9)
            .map(|i| b(Op::Or, b(Op::Eq, x(), PExpr::int(i)), b(Op::Eq, y(), PExpr::int(i))))
            .collect();
        let v = entails(&Query::new(facts, PExpr::bool(true), PExpr::bool(true)), &SolverConfig::default());
        assert!(!v.entailed);
        assert_eq!(v.reason, Reason::SplitCap);
    }

    #[test]
    fn contradictory_facts_entail_anything() {
        let facts = vec![b(Op::Eq, x(), PExpr::int(1)), b(Op::Eq, x(), PExpr::int(2))];
        assert!(holds(facts, PExpr::bool(true), b(Op::Eq, y(), PExpr::int(9))));
    }

    #[test]
    fn trace_records_merges() {
        let cfg = SolverConfig {
            trace: true,
            ..SolverConfig::default()
        };
        let q = Query::new(vec![b(Op::Eq, x(), PExpr::int(3))], PExpr::bool(true), b(Op::Eq, x(), PExpr::int(3)));
        let v = entails(&q, &cfg);
        assert!(v.entailed);
        assert!(v.trace.iter().any(|l| l.starts_with("merge")));
    }
}
