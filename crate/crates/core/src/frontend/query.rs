//! Entailment queries written as concrete predicates over free names.

use super::diag::Diagnostic;
use super::parser::{parse_term, parse_terms, NTerm, NType};
use super::resolve::Names;
use crate::solver::{ConvertError, PExpr, Query};
use crate::syntax::Term;
use crate::typeck::atoms;

/// Facts and a goal whose free names are integer atoms. Name `k` of
/// `names` is term variable `names.len() - 1 - k`, which is also how the
/// oracle numbers its assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateQuery {
    pub names: Vec<String>,
    pub facts: Vec<Term>,
    pub goal: Term,
}

/// Every identifier used anywhere, in order of first use.
fn term_names(t: &NTerm, out: &mut Vec<String>) {
    match t {
        NTerm::Const(_) => {}
        NTerm::Name(x, _) => {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        NTerm::Abs(_, a, b) | NTerm::TAbs(_, a, _, b) => {
            type_names(a, out);
            term_names(b, out);
        }
        NTerm::App(a, b) | NTerm::Pair(a, b) | NTerm::BinOp(_, a, b) => {
            term_names(a, out);
            term_names(b, out);
        }
        NTerm::TApp(a, ty) => {
            term_names(a, out);
            type_names(ty, out);
        }
        NTerm::Let(_, _, a, b) | NTerm::MatchPair(a, _, _, b) | NTerm::Loop(a, _, b) => {
            term_names(a, out);
            term_names(b, out);
        }
        NTerm::MatchSum(s, _, a, _, b) | NTerm::If(s, a, b) => {
            term_names(s, out);
            term_names(a, out);
            term_names(b, out);
        }
        NTerm::Inl(_, a) | NTerm::Inr(_, a) => term_names(a, out),
    }
}

fn type_names(t: &NType, out: &mut Vec<String>) {
    match t {
        NType::Refine(_, a, p) => {
            type_names(a, out);
            term_names(p, out);
        }
        NType::Pi(_, a, b) | NType::Sigma(_, a, b) | NType::Sum(a, b) | NType::Union(a, b) | NType::Inter(a, b) => {
            type_names(a, out);
            type_names(b, out);
        }
        NType::Forall(_, l, u, b) => {
            type_names(l, out);
            type_names(u, out);
            type_names(b, out);
        }
        NType::Mu(_, b) => type_names(b, out),
        _ => {}
    }
}

impl PredicateQuery {
    /// Parse semicolon-separated facts and a goal.
    pub fn parse(facts: &str, goal: &str) -> Result<PredicateQuery, Diagnostic> {
        let facts = parse_terms(facts)?;
        let goal = parse_term(goal)?;
        let mut names = Vec::new();
        for t in facts.iter().chain(std::iter::once(&goal)) {
            term_names(t, &mut names);
        }
        // Names bound inside the predicates shadow these, so extras are harmless.
        let mut scope = Names::new();
        scope.terms = names.clone();
        let facts = facts.iter().map(|t| scope.term(t)).collect::<Result<Vec<_>, _>>()?;
        let goal = scope.term(&goal)?;
        Ok(PredicateQuery { names, facts, goal })
    }

    pub fn atoms(&self) -> usize {
        self.names.len()
    }

    /// The name of term variable `i`.
    pub fn name_of_var(&self, i: usize) -> &str {
        &self.names[self.names.len() - 1 - i]
    }

    pub fn to_query(&self) -> Result<Query, ConvertError> {
        let env = atoms(self.names.len());
        let facts = self
            .facts
            .iter()
            .map(|t| PExpr::from_term(t, &env))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Query::new(facts, PExpr::bool(true), PExpr::from_term(&self.goal, &env)?))
    }

    /// Pair an assignment indexed by term variable with the names.
    pub fn named(&self, values: &[i32]) -> Vec<(String, i32)> {
        let mut out: Vec<(String, i32)> = values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.name_of_var(i).to_string(), *v))
            .collect();
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{entails, SolverConfig};

    #[test]
    fn names_in_order_of_use() {
        let q = PredicateQuery::parse("y == 2*x + 3*x", "y == 5*x").unwrap();
        assert_eq!(q.names, vec!["y", "x"]);
        assert_eq!(q.name_of_var(0), "x");
        assert!(entails(&q.to_query().unwrap(), &SolverConfig::default()).entailed);
    }

    #[test]
    fn empty_facts() {
        let q = PredicateQuery::parse("", "x == x").unwrap();
        assert!(q.facts.is_empty());
        assert_eq!(q.named(&[4]), vec![("x".to_string(), 4)]);
    }
}
