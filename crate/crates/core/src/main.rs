use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use rfn_core::frontend::{self, check_program, eval_program, CheckOptions, Diagnostic, PredicateQuery};
use rfn_core::interp::{Outcome, DEFAULT_FUEL};
use rfn_core::oracle::{brute_countermodel, OracleConfig};
use rfn_core::solver::{entails, SolverConfig};

#[derive(Parser)]
#[command(name = "rfn", version, about = "Check, run and query programs of a small refinement-typed calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check every definition against its annotation.
    Check {
        file: PathBuf,
        /// Do not let-bind non-variable arguments before checking.
        #[arg(long)]
        no_anf: bool,
        /// Print every entailment query and the solver's merges.
        #[arg(long)]
        trace_solver: bool,
        #[arg(long)]
        json: bool,
    },
    /// Type-check, then run `main`.
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the facts entail the goal.
    Solve {
        /// Semicolon-separated predicates.
        #[arg(long, default_value = "")]
        facts: String,
        #[arg(long)]
        goal: String,
        /// Cross-check with brute force over [-8, 8].
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        trace_solver: bool,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_TYPE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_STUCK: u8 = 4;
const EXIT_UNSOUND: u8 = 5;

fn report(diags: &[Diagnostic], file: &str, src: &str, json: bool) {
    for d in diags {
        if json {
            println!("{}", d.to_json());
        } else {
            eprintln!("{}", d.render(file, src));
        }
    }
}

fn read(path: &PathBuf, json: bool) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        let d = Diagnostic::error((0, 0), "E-IO", format!("cannot read {}: {e}", path.display()));
        if json {
            println!("{}", d.to_json());
        } else {
            eprintln!("{}: {}", path.display(), d.message);
        }
        ExitCode::from(EXIT_USAGE)
    })
}

fn check(file: PathBuf, no_anf: bool, trace_solver: bool, json: bool) -> ExitCode {
    let src = match read(&file, json) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let name = file.display().to_string();
    let program = match frontend::load(&src) {
        Ok(p) => p,
        Err(d) => {
            report(&[d], &name, &src, json);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let opts = CheckOptions {
        anf: !no_anf,
        trace_solver,
        ..CheckOptions::default()
    };
    let r = check_program(&program, &opts);
    for line in &r.trace {
        println!("{line}");
    }
    report(&r.diagnostics, &name, &src, json);
    if !r.ok() {
        return ExitCode::from(EXIT_TYPE);
    }
    if json {
        println!("{}", json!({ "status": "ok", "definitions": program.defs.len(), "main_type": r.main_type }));
    } else {
        match &r.main_type {
            Some(t) => println!("ok: main : {t}"),
            None => println!("ok: {} definitions", program.defs.len()),
        }
    }
    ExitCode::SUCCESS
}

fn eval(file: PathBuf, fuel: u64, json: bool) -> ExitCode {
    let src = match read(&file, json) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let name = file.display().to_string();
    let program = match frontend::load(&src) {
        Ok(p) => p,
        Err(d) => {
            report(&[d], &name, &src, json);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let r = check_program(&program, &CheckOptions::default());
    if !r.ok() {
        report(&r.diagnostics, &name, &src, json);
        return ExitCode::from(EXIT_TYPE);
    }
    let outcome = match eval_program(&program, fuel) {
        Ok(o) => o,
        Err(d) => {
            report(&[d], &name, &src, json);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if json {
        let (kind, value) = match &outcome {
            Outcome::Val(v) => ("value", Some(v.to_string())),
            Outcome::Timeout => ("timeout", None),
            Outcome::Stuck => ("stuck", None),
        };
        println!("{}", json!({ "outcome": kind, "value": value, "fuel": fuel }));
    } else {
        println!("{outcome}");
    }
    match outcome {
        Outcome::Val(_) => ExitCode::SUCCESS,
        Outcome::Timeout => ExitCode::from(EXIT_TIMEOUT),
        Outcome::Stuck => ExitCode::from(EXIT_STUCK),
    }
}

fn usage_error(d: &Diagnostic, json: bool) -> ExitCode {
    if json {
        println!("{}", d.to_json());
    } else {
        eprintln!("error[{}]: {}", d.code, d.message);
    }
    ExitCode::from(EXIT_USAGE)
}

fn solve(facts: &str, goal: &str, oracle: bool, trace: bool, json: bool) -> ExitCode {
    let q = match PredicateQuery::parse(facts, goal) {
        Ok(q) => q,
        Err(d) => return usage_error(&d, json),
    };
    let query = match q.to_query() {
        Ok(query) => query,
        Err(e) => return usage_error(&Diagnostic::error((0, 0), "E-FRAGMENT", e.to_string()), json),
    };
    let cfg = SolverConfig {
        trace,
        ..SolverConfig::default()
    };
    let verdict = entails(&query, &cfg);
    for line in &verdict.trace {
        println!("{line}");
    }
    let countermodel = if oracle {
        brute_countermodel(&OracleConfig::default(), q.atoms(), &q.facts, &q.goal).map(|values| q.named(&values))
    } else {
        None
    };
    let unsound = oracle && verdict.entailed && countermodel.is_some();
    if json {
        let cm = countermodel
            .as_ref()
            .map(|c| c.iter().map(|(n, v)| (n.clone(), json!(v))).collect::<serde_json::Map<_, _>>());
        println!(
            "{}",
            json!({
                "entailed": verdict.entailed,
                "reason": format!("{:?}", verdict.reason),
                "cases": verdict.cases,
                "merges": verdict.merges,
                "oracle_entailed": if oracle { Some(countermodel.is_none()) } else { None },
                "countermodel": cm,
            })
        );
    } else {
        let word = if verdict.entailed { "entailed" } else { "not entailed" };
        println!("{word} ({:?}, {} case(s), {} merge(s))", verdict.reason, verdict.cases, verdict.merges);
        if oracle {
            match &countermodel {
                None => println!("oracle: entailed on [-8, 8]"),
                Some(c) => {
                    let shown: Vec<String> = c.iter().map(|(n, v)| format!("{n} = {v}")).collect();
                    println!("oracle: countermodel {}", shown.join(", "));
                }
            }
            if unsound {
                println!("DISAGREEMENT: the solver accepted a query the oracle refutes");
            } else if !verdict.entailed && countermodel.is_none() {
                println!("note: the oracle finds no countermodel in its domain");
            }
        }
    }
    if unsound {
        ExitCode::from(EXIT_UNSOUND)
    } else if verdict.entailed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_TYPE)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.cmd {
        Cmd::Check {
            file,
            no_anf,
            trace_solver,
            json,
        } => check(file, no_anf, trace_solver, json),
        Cmd::Eval { file, fuel, json } => eval(file, fuel, json),
        Cmd::Solve {
            facts,
            goal,
            oracle,
            trace_solver,
            json,
        } => solve(&facts, &goal, oracle, trace_solver, json),
    }
}
