//! Python bindings: parse, check, run and query programs of the calculus.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rfn_core::frontend::{self, CheckOptions, Diagnostic as CoreDiagnostic, PredicateQuery};
use rfn_core::interp::{self as core_interp, Env, Outcome as CoreOutcome};
use rfn_core::oracle::{brute_countermodel, OracleConfig};
use rfn_core::solver::{self, SolverConfig};
use rfn_core::syntax::pretty::{show_term, show_type};
use rfn_core::typeck::{self, anf_transform, TypingContext};

create_exception!(rfn, RfnError, PyValueError, "Base class for errors raised by rfn.");
create_exception!(rfn, ParseError, RfnError, "The source text does not parse or has unbound names.");
create_exception!(rfn, TypeCheckError, RfnError, "A term does not have the expected type.");

fn parse_err(d: CoreDiagnostic) -> PyErr {
    ParseError::new_err(format!("{} at {}..{}: {}", d.code, d.span.start, d.span.end, d.message))
}

fn type_err(e: typeck::TypeError) -> PyErr {
    TypeCheckError::new_err(format!("{}: {e}", e.kind.code()))
}

/// A closed type.
#[pyclass(module = "rfn", frozen, eq)]
#[derive(Clone, PartialEq)]
struct Type {
    inner: rfn_core::syntax::Type,
}

#[pymethods]
impl Type {
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Type> {
        frontend::type_of(src).map(|inner| Type { inner }).map_err(parse_err)
    }

    /// One unfolding of a recursive type, or None.
    fn unfold(&self) -> Option<Type> {
        self.inner.unfold().map(|inner| Type { inner })
    }

    fn is_subtype_of(&self, other: &Type) -> bool {
        typeck::is_subtype(&TypingContext::new(), &self.inner, &other.inner)
    }

    fn __str__(&self) -> String {
        show_type(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Type({:?})", show_type(&self.inner))
    }
}

/// A closed term.
#[pyclass(module = "rfn", frozen, eq)]
#[derive(Clone, PartialEq)]
struct Term {
    inner: rfn_core::syntax::Term,
}

#[pymethods]
impl Term {
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Term> {
        frontend::term_of(src).map(|inner| Term { inner }).map_err(parse_err)
    }

    /// Let-bind every non-variable application argument.
    fn anf(&self) -> Term {
        Term {
            inner: anf_transform(&self.inner),
        }
    }

    fn infer(&self) -> PyResult<Type> {
        typeck::infer(&TypingContext::new(), &anf_transform(&self.inner))
            .map(|inner| Type { inner })
            .map_err(type_err)
    }

    /// Raise TypeCheckError unless the term has type `ty`.
    fn check(&self, ty: &Type) -> PyResult<()> {
        typeck::check(&TypingContext::new(), &anf_transform(&self.inner), &ty.inner).map_err(type_err)
    }

    #[pyo3(signature = (fuel = core_interp::DEFAULT_FUEL))]
    fn eval(&self, fuel: u64) -> Outcome {
        Outcome {
            inner: core_interp::run(fuel, &Env::empty(), &self.inner),
        }
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __str__(&self) -> String {
        show_term(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", show_term(&self.inner))
    }
}

/// Result of running a term: a value, `timeout` or `stuck`.
#[pyclass(module = "rfn", frozen)]
struct Outcome {
    inner: CoreOutcome,
}

#[pymethods]
impl Outcome {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner {
            CoreOutcome::Val(_) => "value",
            CoreOutcome::Timeout => "timeout",
            CoreOutcome::Stuck => "stuck",
        }
    }

    #[getter]
    fn value(&self) -> Option<String> {
        self.inner.value().map(|v| v.to_string())
    }

    /// The value as a Python int, if it is an integer.
    fn as_int(&self) -> Option<i32> {
        match self.inner.value() {
            Some(core_interp::Value::Const(rfn_core::syntax::Const::Int(z))) => Some(*z),
            _ => None,
        }
    }

    /// Decode the `inl unit` / `inr (head, tail)` list encoding.
    fn as_int_list(&self) -> Option<Vec<i32>> {
        self.inner.value().and_then(|v| v.as_int_list())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Outcome({})", self.inner)
    }
}

#[pyclass(module = "rfn", frozen, get_all)]
#[derive(Clone)]
struct Diagnostic {
    code: String,
    message: String,
    start: usize,
    end: usize,
    expected: Option<String>,
    actual: Option<String>,
}

#[pymethods]
impl Diagnostic {
    fn to_json(&self) -> String {
        let mut d = CoreDiagnostic::error((self.start, self.end), &self.code, self.message.clone());
        d.expected = self.expected.clone();
        d.actual = self.actual.clone();
        d.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Diagnostic({}: {})", self.code, self.message)
    }
}

impl From<&CoreDiagnostic> for Diagnostic {
    fn from(d: &CoreDiagnostic) -> Self {
        Diagnostic {
            code: d.code.clone(),
            message: d.message.clone(),
            start: d.span.start,
            end: d.span.end,
            expected: d.expected.clone(),
            actual: d.actual.clone(),
        }
    }
}

#[pyclass(module = "rfn", frozen, get_all)]
struct CheckReport {
    ok: bool,
    diagnostics: Vec<Diagnostic>,
    main_type: Option<String>,
    trace: Vec<String>,
    queries: usize,
}

/// A source file of definitions and an optional `main`.
#[pyclass(module = "rfn", frozen)]
struct Program {
    inner: frontend::Program,
}

#[pymethods]
impl Program {
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Program> {
        frontend::load(src).map(|inner| Program { inner }).map_err(parse_err)
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names()
    }

    #[pyo3(signature = (anf = true, trace = false))]
    fn check(&self, anf: bool, trace: bool) -> CheckReport {
        let opts = CheckOptions {
            anf,
            trace_solver: trace,
            ..CheckOptions::default()
        };
        let r = frontend::check_program(&self.inner, &opts);
        CheckReport {
            ok: r.ok(),
            diagnostics: r.diagnostics.iter().map(Diagnostic::from).collect(),
            main_type: r.main_type,
            trace: r.trace,
            queries: r.queries,
        }
    }

    /// Run `main` without type-checking first.
    #[pyo3(signature = (fuel = core_interp::DEFAULT_FUEL))]
    fn eval(&self, fuel: u64) -> PyResult<Outcome> {
        frontend::eval_program(&self.inner, fuel)
            .map(|inner| Outcome { inner })
            .map_err(|d| RfnError::new_err(d.message))
    }

    fn pretty(&self) -> String {
        self.inner.pretty()
    }
}

#[pyclass(module = "rfn", frozen, get_all)]
struct Verdict {
    entailed: bool,
    reason: String,
    cases: usize,
    merges: usize,
    trace: Vec<String>,
}

#[pymethods]
impl Verdict {
    fn __bool__(&self) -> bool {
        self.entailed
    }

    fn __repr__(&self) -> String {
        format!("Verdict(entailed={}, reason={})", self.entailed, self.reason)
    }
}

fn predicate_query(facts: Vec<String>, goal: &str) -> PyResult<PredicateQuery> {
    PredicateQuery::parse(&facts.join(";"), goal).map_err(parse_err)
}

/// Decide `facts ⊢ goal`; free names are 32-bit integer atoms.
#[pyfunction]
#[pyo3(signature = (facts, goal, trace = false))]
fn entails(facts: Vec<String>, goal: &str, trace: bool) -> PyResult<Verdict> {
    let q = predicate_query(facts, goal)?;
    let query = q.to_query().map_err(|e| RfnError::new_err(e.to_string()))?;
    let cfg = SolverConfig {
        trace,
        ..SolverConfig::default()
    };
    let v = solver::entails(&query, &cfg);
    Ok(Verdict {
        entailed: v.entailed,
        reason: format!("{:?}", v.reason),
        cases: v.cases,
        merges: v.merges,
        trace: v.trace,
    })
}

/// An assignment over [lo, hi] satisfying the facts but not the goal.
#[pyfunction]
#[pyo3(signature = (facts, goal, lo = -8, hi = 8))]
fn countermodel<'py>(py: Python<'py>, facts: Vec<String>, goal: &str, lo: i32, hi: i32) -> PyResult<Option<Bound<'py, PyDict>>> {
    let q = predicate_query(facts, goal)?;
    let cfg = OracleConfig {
        int_domain: lo..=hi,
        ..OracleConfig::default()
    };
    let Some(values) = brute_countermodel(&cfg, q.atoms(), &q.facts, &q.goal) else {
        return Ok(None);
    };
    let d = PyDict::new_bound(py);
    for (name, v) in q.named(&values) {
        d.set_item(name, v)?;
    }
    Ok(Some(d))
}

#[pyfunction]
fn subtype(lhs: &Type, rhs: &Type) -> bool {
    lhs.is_subtype_of(rhs)
}

#[pymodule]
fn rfn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RfnError", m.py().get_type_bound::<RfnError>())?;
    m.add("ParseError", m.py().get_type_bound::<ParseError>())?;
    m.add("TypeCheckError", m.py().get_type_bound::<TypeCheckError>())?;
    m.add_class::<Type>()?;
    m.add_class::<Term>()?;
    m.add_class::<Outcome>()?;
    m.add_class::<Diagnostic>()?;
    m.add_class::<CheckReport>()?;
    m.add_class::<Program>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(entails, m)?)?;
    m.add_function(wrap_pyfunction!(countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(subtype, m)?)?;
    Ok(())
}
