//! Typing contexts and their translation into solver queries.

use crate::solver::{PExpr, Query};
use crate::syntax::{lift_type, ContextEntry, FactSide, Op, Term, Type};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypingContext {
    entries: Vec<ContextEntry>,
    term_depth: usize,
    type_depth: usize,
}

impl TypingContext {
    pub fn new() -> TypingContext {
        TypingContext::default()
    }

    pub fn entries(&self) -> &[ContextEntry] {
        &self.entries
    }

    /// Number of term bindings in scope.
    pub fn term_depth(&self) -> usize {
        self.term_depth
    }

    /// Number of type-variable bounds in scope.
    pub fn type_depth(&self) -> usize {
        self.type_depth
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: ContextEntry) {
        match &entry {
            ContextEntry::Term(_) => self.term_depth += 1,
            ContextEntry::Bound { .. } => self.type_depth += 1,
            ContextEntry::Fact { .. } => {}
        }
        self.entries.push(entry);
    }

    pub fn push_term(&mut self, ty: Type) {
        self.push(ContextEntry::Term(ty));
    }

    pub fn push_bound(&mut self, lower: Type, upper: Type) {
        self.push(ContextEntry::Bound { lower, upper });
    }

    /// Record `lhs ∼ rhs`, each side tagged with the term depth it is
    /// expressed at.
    pub fn push_fact(&mut self, lhs: (usize, Term), rhs: (usize, Term)) {
        let side = |(d, t): (usize, Term)| FactSide {
            term_depth: d,
            type_depth: self.type_depth,
            term: t,
        };
        let entry = ContextEntry::Fact {
            lhs: side(lhs),
            rhs: side(rhs),
        };
        self.push(entry);
    }

    /// Drop entries until `len` remain.
    pub fn truncate(&mut self, len: usize) {
        while self.entries.len() > len {
            match self.entries.pop() {
                Some(ContextEntry::Term(_)) => self.term_depth -= 1,
                Some(ContextEntry::Bound { .. }) => self.type_depth -= 1,
                _ => {}
            }
        }
    }

    /// Type of term variable `index`, valid at the current depth.
    pub fn lookup_term(&self, index: usize) -> Option<Type> {
        let mut seen = 0;
        let mut types_after = 0;
        for e in self.entries.iter().rev() {
            match e {
                ContextEntry::Term(ty) => {
                    if seen == index {
                        return Some(lift_type(ty, index + 1, types_after));
                    }
                    seen += 1;
                }
                ContextEntry::Bound { .. } => types_after += 1,
                ContextEntry::Fact { .. } => {}
            }
        }
        None
    }

    /// Bounds `(lower, upper)` of type variable `index`.
    pub fn lookup_type(&self, index: usize) -> Option<(Type, Type)> {
        let mut seen = 0;
        let mut terms_after = 0;
        for e in self.entries.iter().rev() {
            match e {
                ContextEntry::Bound { lower, upper } => {
                    if seen == index {
                        return Some((
                            lift_type(lower, terms_after, index + 1),
                            lift_type(upper, terms_after, index + 1),
                        ));
                    }
                    seen += 1;
                }
                ContextEntry::Term(_) => terms_after += 1,
                ContextEntry::Fact { .. } => {}
            }
        }
        None
    }

    /// Build an entailment query: every equality fact and every refinement
    /// of an in-scope variable becomes an assumption. Term variable at
    /// level `ℓ` (counting from the outermost binding) is atom `ℓ`.
    /// Assumptions outside the predicate fragment are dropped.
    pub fn query(&self, hypothesis: Option<&Term>, goal: &Term) -> Result<Query, crate::solver::ConvertError> {
        let mut facts = Vec::new();
        let mut level = 0;
        for e in &self.entries {
            match e {
                ContextEntry::Term(ty) => {
                    if let Some(p) = predicates(ty, level) {
                        facts.push(p);
                    }
                    level += 1;
                }
                ContextEntry::Bound { .. } => {}
                ContextEntry::Fact { lhs, rhs } => {
                    let l = PExpr::from_term(&lhs.term, &atoms(lhs.term_depth));
                    let r = PExpr::from_term(&rhs.term, &atoms(rhs.term_depth));
                    if let (Ok(l), Ok(r)) = (l, r) {
                        facts.push(PExpr::bin(Op::Eq, l, r));
                    }
                }
            }
        }
        let env = atoms(self.term_depth);
        let hypothesis = match hypothesis {
            Some(h) => PExpr::from_term(h, &env).unwrap_or(PExpr::bool(true)),
            None => PExpr::bool(true),
        };
        let goal = PExpr::from_term(goal, &env)?;
        Ok(Query::new(facts, hypothesis, goal))
    }
}

/// Environment for a term at depth `d`: variable `i` is atom `d − 1 − i`.
pub fn atoms(depth: usize) -> Vec<PExpr> {
    (0..depth).rev().map(|l| PExpr::Atom(l as u32)).collect()
}

/// What membership in `ty` tells about the variable at `level`.
fn predicates(ty: &Type, level: usize) -> Option<PExpr> {
    match ty {
        Type::Refine(base, p) => {
            let here = PExpr::from_term(p, &atoms(level + 1)).ok();
            match (predicates(base, level), here) {
                (Some(a), Some(b)) => Some(PExpr::bin(Op::And, a, b)),
                (a, b) => a.or(b),
            }
        }
        Type::Inter(a, b) => match (predicates(a, level), predicates(b, level)) {
            (Some(a), Some(b)) => Some(PExpr::bin(Op::And, a, b)),
            (a, b) => a.or(b),
        },
        Type::Union(a, b) => match (predicates(a, level), predicates(b, level)) {
            (Some(a), Some(b)) => Some(PExpr::bin(Op::Or, a, b)),
            _ => None,
        },
        _ => None,
    }
}
