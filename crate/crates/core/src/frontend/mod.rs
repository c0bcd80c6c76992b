//! Concrete syntax: parsing, name resolution, printing, and the
//! file-level check and eval pipelines used by the command-line tool.

pub mod diag;
pub mod lexer;
pub mod parser;
pub mod query;
pub mod resolve;

pub use diag::{Diagnostic, Span};
pub use parser::{parse_file, parse_term, parse_terms, parse_type, NTerm, NType, SourceFile};
pub use query::PredicateQuery;
pub use resolve::Names;

use crate::interp::{self, Env, Outcome};
use crate::solver::SolverConfig;
use crate::syntax::pretty::{show_term_in, show_type_in, Scope};
use crate::syntax::{Term, Type};
use crate::typeck::{anf_transform, anf_type, Checker, TypingContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramDef {
    pub name: String,
    pub ty: Type,
    pub body: Term,
    pub span: Span,
}

/// A resolved source file. Definition `i` sees definitions `0..i` as term
/// variables; `main` sees all of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub defs: Vec<ProgramDef>,
    pub main: Option<(Term, Span)>,
}

pub fn resolve_file(f: &SourceFile) -> Result<Program, Diagnostic> {
    let mut names = Names::new();
    let mut defs = Vec::new();
    for d in &f.defs {
        let ty = names.ty(&d.ty)?;
        let body = names.term(&d.body)?;
        defs.push(ProgramDef {
            name: d.name.clone(),
            ty,
            body,
            span: d.span,
        });
        names.terms.push(d.name.clone());
    }
    let main = match &f.main {
        Some((t, span)) => Some((names.term(t)?, *span)),
        None => None,
    };
    Ok(Program { defs, main })
}

/// Parse and resolve a whole file.
pub fn load(src: &str) -> Result<Program, Diagnostic> {
    resolve_file(&parse_file(src)?)
}

/// Parse and resolve a closed term.
pub fn term_of(src: &str) -> Result<Term, Diagnostic> {
    Names::new().term(&parse_term(src)?)
}

/// Parse and resolve a closed type.
pub fn type_of(src: &str) -> Result<Type, Diagnostic> {
    Names::new().ty(&parse_type(src)?)
}

impl Program {
    pub fn names(&self) -> Vec<String> {
        self.defs.iter().map(|d| d.name.clone()).collect()
    }

    /// Scope for printing at the given depths, where the outermost `defs`
    /// term variables are definitions.
    pub fn scope(&self, terms: usize, types: usize, defs: usize) -> Scope {
        let mut s = Scope::generated(terms, types);
        for (slot, d) in s.terms.iter_mut().zip(&self.defs[..defs.min(self.defs.len())]) {
            slot.clone_from(&d.name);
        }
        s
    }

    pub fn show_type(&self, ty: &Type, terms: usize) -> String {
        show_type_in(ty, &mut self.scope(terms, 0, terms))
    }

    pub fn show_term(&self, t: &Term, terms: usize) -> String {
        show_term_in(t, &mut self.scope(terms, 0, terms))
    }

    /// The entry point: the `main = …` clause, else a definition named `main`.
    pub fn entry(&self) -> Option<Term> {
        if let Some((t, _)) = &self.main {
            return Some(t.clone());
        }
        let n = self.defs.len();
        self.defs
            .iter()
            .rposition(|d| d.name == "main")
            .map(|i| Term::var(n - 1 - i))
    }

    /// The whole program as nested annotated lets around `body`.
    pub fn wrap(&self, body: Term) -> Term {
        self.defs
            .iter()
            .rev()
            .fold(body, |acc, d| Term::let_(Some(d.ty.clone()), d.body.clone(), acc))
    }

    /// Print the program in concrete syntax.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.defs.iter().enumerate() {
            out.push_str(&format!(
                "def {} : {} =\n  {}\n\n",
                d.name,
                self.show_type(&d.ty, i),
                self.show_term(&d.body, i)
            ));
        }
        if let Some((t, _)) = &self.main {
            out.push_str(&format!("main = {}\n", self.show_term(t, self.defs.len())));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub anf: bool,
    pub trace_solver: bool,
    pub solver: SolverConfig,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            anf: true,
            trace_solver: false,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub diagnostics: Vec<Diagnostic>,
    /// Inferred type of the entry point, printed with definition names.
    pub main_type: Option<String>,
    pub trace: Vec<String>,
    pub queries: usize,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Check every definition against its annotation, then infer `main`.
pub fn check_program(p: &Program, opts: &CheckOptions) -> CheckReport {
    let mut solver = opts.solver.clone();
    solver.trace = opts.trace_solver;
    let mut checker = Checker::new(solver);
    if opts.trace_solver {
        checker = checker.with_trace();
    }
    let prep = |t: &Term| if opts.anf { anf_transform(t) } else { t.clone() };
    let prep_ty = |t: &Type| if opts.anf { anf_type(t) } else { t.clone() };
    let mut report = CheckReport::default();
    let mut ctx = TypingContext::new();
    for (i, d) in p.defs.iter().enumerate() {
        let ty = prep_ty(&d.ty);
        let body = prep(&d.body);
        if let Some(trace) = &mut checker.trace {
            trace.push(format!("def {}", d.name));
        }
        let r = checker.wf_type(&mut ctx, &ty).and_then(|_| checker.check(&mut ctx, &body, &ty));
        if let Err(e) = r {
            let mut diag = Diagnostic::from_type_error(&e, d.span, render(p, &e, i));
            diag.message = format!("in `{}`: {}", d.name, diag.message);
            report.diagnostics.push(diag);
        }
        ctx.push_term(ty);
        ctx.push_fact((i + 1, Term::var(0)), (i, body));
    }
    if let Some((main, span)) = &p.main {
        match checker.infer(&mut ctx, &prep(main)) {
            Ok(ty) => report.main_type = Some(p.show_type(&ty, p.defs.len())),
            Err(e) => report.diagnostics.push(Diagnostic::from_type_error(&e, *span, render(p, &e, p.defs.len()))),
        }
    } else if let Some(d) = p.defs.iter().rev().find(|d| d.name == "main") {
        report.main_type = Some(p.show_type(&d.ty, p.defs.iter().position(|x| x.name == "main").unwrap_or(0)));
    }
    report.trace = checker.trace.take().unwrap_or_default();
    report.queries = checker.queries;
    report
}

fn render<'a>(p: &'a Program, e: &crate::typeck::TypeError, defs: usize) -> impl Fn(&Type) -> String + 'a {
    let depth = e.depth;
    move |ty| show_type_in(ty, &mut p.scope(depth.0, depth.1, defs))
}

/// Run the entry point.
pub fn eval_program(p: &Program, fuel: u64) -> Result<Outcome, Diagnostic> {
    let entry = p
        .entry()
        .ok_or_else(|| Diagnostic::error((0, 0), "E-NO-MAIN", "the file has no `main`"))?;
    Ok(interp::run(fuel, &Env::empty(), &p.wrap(entry)))
}
