//! Command-line front end: evaluate formulas on models, check frame
//! conditions and theories, run the quantifier-elimination tools, search
//! for bounded finite models, and emit the claim-comparison report.
//!
//! `--model` accepts either an embedded fixture id (see `relmt fixtures
//! list`) or a path to a model JSON file.

use clap::{Parser, Subcommand};
use relmt_core::fixtures::{fixture, fixtures};
use relmt_core::frames::{check_condition, logic_profile, Condition, ALL_CONDITIONS};
use relmt_core::models::{definable_set, Assignment, Elem, Model};
use relmt_core::qe::{normalize_qf_dlo, qe_dlo, verify_qe_candidate};
use relmt_core::reproduce::reproduce;
use relmt_core::syntax::parse_formula;
use relmt_core::theories::{find_finite_model, holds_at_s, SearchBounds, TheoryName};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "relmt",
    version,
    about = "Ternary-relation models, frame checking, and quantifier elimination for dense linear orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a world of a model.
    Eval {
        /// Fixture id or path to a model JSON file.
        #[arg(long)]
        model: String,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
        /// Comma-separated bindings, e.g. `y=2,x=5/2`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Check one named frame condition, or all of them.
    CheckFrame {
        #[arg(long)]
        model: String,
        #[arg(long)]
        condition: Option<String>,
    },
    /// Evaluate a theory's axioms at the designated world.
    CheckTheory {
        #[arg(long)]
        model: String,
        #[arg(long)]
        theory: String,
        /// Schemata are instantiated for parameters up to this bound.
        #[arg(long, default_value_t = 2)]
        schema_bound: u32,
    },
    /// Rewrite a one-variable quantifier-free formula to its normal form.
    Normalize {
        #[arg(long)]
        formula: String,
    },
    /// Eliminate quantifiers against a world-invariant dense fixture.
    Qe {
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
        /// Also verify the result under both readings.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive bounded search for a finite model of a theory.
    Search {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        max_domain: usize,
        #[arg(long)]
        max_worlds: usize,
        /// Comma-separated frame conditions the searched frames must satisfy.
        #[arg(long)]
        conditions: Option<String>,
        /// Lift the tractability guard on the bounds.
        #[arg(long)]
        force: bool,
    },
    /// List the embedded fixtures or dump one as JSON.
    Fixtures {
        #[command(subcommand)]
        action: Option<FixturesAction>,
    },
    /// Recompute every recorded claim and report matches and mismatches.
    Reproduce {
        #[arg(long)]
        json: bool,
    },
    /// Report which orbits of the designated world satisfy a
    /// one-free-variable formula.
    DefinableSet {
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    List,
    Dump { id: String },
}

fn load_model(name: &str) -> Result<Model, String> {
    if let Ok(fx) = fixture(name) {
        return Ok(fx.model);
    }
    match std::fs::read_to_string(name) {
        Ok(text) => Model::from_json_str(&text)
            .map_err(|e| format!("failed to parse model file `{}`: {}", name, e)),
        Err(io) => Err(format!(
            "`{}` is neither a fixture id nor a readable file ({})",
            name, io
        )),
    }
}

fn parse_assignment(spec: &Option<String>) -> Result<Assignment, String> {
    let mut out = Assignment::new();
    if let Some(text) = spec {
        for binding in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (name, value) = binding
                .split_once('=')
                .ok_or_else(|| format!("binding `{}` is not of the form var=value", binding))?;
            out.insert(name.trim().to_string(), Elem::parse(value.trim()));
        }
    }
    Ok(out)
}

fn parse_conditions(spec: &Option<String>) -> Result<Vec<Condition>, String> {
    match spec {
        None => Ok(vec![]),
        Some(text) => text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Condition::from_str(s.trim()).map_err(|e| e.to_string()))
            .collect(),
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Eval { model, world, formula, assign } => {
            let m = load_model(&model)?;
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            let a = parse_assignment(&assign)?;
            let verdict =
                relmt_core::models::eval(&m, &world, &f, &a).map_err(|e| e.to_string())?;
            println!("{}", verdict);
        }
        Command::CheckFrame { model, condition } => {
            let m = load_model(&model)?;
            let conditions: Vec<Condition> = match condition {
                Some(name) => vec![Condition::from_str(&name).map_err(|e| e.to_string())?],
                None => ALL_CONDITIONS.to_vec(),
            };
            for c in &conditions {
                let report = check_condition(m.frame(), *c);
                if report.satisfied {
                    println!("{}: satisfied", c);
                } else {
                    let witnesses: Vec<String> = report
                        .counterexamples
                        .iter()
                        .map(|t| format!("({})", t.join(",")))
                        .collect();
                    println!("{}: VIOLATED at {}", c, witnesses.join(" "));
                }
            }
            if conditions.len() > 1 {
                let profile = logic_profile(m.frame());
                let labels: Vec<String> = profile.labels.iter().cloned().collect();
                println!(
                    "labels: {}",
                    if labels.is_empty() { "none".to_string() } else { labels.join(", ") }
                );
            }
        }
        Command::CheckTheory { model, theory, schema_bound } => {
            let m = load_model(&model)?;
            let name = TheoryName::from_str(&theory).map_err(|e| e.to_string())?;
            let report = holds_at_s(&m, name, schema_bound).map_err(|e| e.to_string())?;
            for (id, holds) in &report.rows {
                println!("{}: {}", id, if *holds { "holds" } else { "FAILS" });
            }
            println!(
                "{}: {}",
                name,
                if report.all_hold { "all axioms hold at s" } else { "not a model at s" }
            );
        }
        Command::Normalize { formula } => {
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            let normal = normalize_qf_dlo(&f).map_err(|e| e.to_string())?;
            println!("{}", normal);
        }
        Command::Qe { model, formula, verify } => {
            let m = load_model(&model)?;
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            let eliminated = qe_dlo(&m, &f).map_err(|e| e.to_string())?;
            println!("{}", eliminated);
            if verify {
                let report =
                    verify_qe_candidate(&m, &f, &eliminated).map_err(|e| e.to_string())?;
                println!(
                    "equivalence: {}",
                    if report.equivalence.satisfied { "pass" } else { "FAIL" }
                );
                println!(
                    "interdeducibility: {}",
                    if report.interdeducibility.satisfied { "pass" } else { "FAIL" }
                );
            }
        }
        Command::Search { theory, max_domain, max_worlds, conditions, force } => {
            let name = TheoryName::from_str(&theory).map_err(|e| e.to_string())?;
            let required = parse_conditions(&conditions)?;
            let bounds = SearchBounds { max_domain, max_worlds, override_guard: force };
            match find_finite_model(name, bounds, &required).map_err(|e| e.to_string())? {
                Some(model) => println!("{}", model.to_json_pretty()),
                None => println!("no model found"),
            }
        }
        Command::Fixtures { action } => match action.unwrap_or(FixturesAction::List) {
            FixturesAction::List => {
                for fx in fixtures().map_err(|e| e.to_string())? {
                    println!("{}: {}", fx.id, fx.notes);
                }
            }
            FixturesAction::Dump { id } => {
                let fx = fixture(&id).map_err(|e| e.to_string())?;
                println!("{}", fx.model.to_json_pretty());
            }
        },
        Command::Reproduce { json } => {
            let report = reproduce().map_err(|e| e.to_string())?;
            if json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", report.render_text());
            }
        }
        Command::DefinableSet { model, formula } => {
            let m = load_model(&model)?;
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            let set = definable_set(&m, &f).map_err(|e| e.to_string())?;
            for orbit in &set.orbits {
                println!(
                    "{} (representative {}): {}",
                    orbit.orbit, orbit.representative, orbit.holds
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::FAILURE
        }
    }
}
