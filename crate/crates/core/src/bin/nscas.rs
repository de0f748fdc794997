use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nscas::algebra::{Generator, HalfInt};
use nscas::cli::checks::{run_all, run_check};
use nscas::cli::parser::{parse_element, parse_expr, parse_scalar};
use nscas::cli::report::CheckReport;
use nscas::cli::rules::load_rules;
use nscas::enveloping::{normal_form, reduce_trailing, OrderSpec};
use nscas::rewrite::act_element;
use nscas::verma;
use nscas::{bracket, VermaModule};

#[derive(Parser)]
#[command(name = "nscas", version, about = "Exact computations in the Neveu-Schwarz superalgebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registered checks.
    Verify {
        #[arg(long, conflicts_with = "check", required_unless_present = "check")]
        all: bool,
        #[arg(long)]
        check: Option<String>,
        /// One JSON record per check.
        #[arg(long)]
        json: bool,
    },
    /// PBW normal form of an expression.
    Nf {
        expr: String,
        /// Comma-separated modes to keep rightmost; also prints the quotient.
        #[arg(long)]
        trailing: Option<String>,
        #[arg(long)]
        descending: bool,
    },
    /// Super-bracket of two modes.
    Bracket { a: String, b: String },
    /// Apply an expression to a named state of a rule file.
    Act {
        expr: String,
        #[arg(long)]
        rules: std::path::PathBuf,
        #[arg(long)]
        state: String,
    },
    /// Verma module of the Neveu-Schwarz algebra.
    Verma {
        /// Highest level, e.g. 4 or 7/2.
        #[arg(long)]
        level_max: String,
        #[arg(long, default_value = "h")]
        h: String,
        #[arg(long, default_value = "chat")]
        c: String,
        /// Print dimensions only.
        #[arg(long)]
        dims: bool,
    },
    /// Parse and print an expression in canonical form.
    Parse { expr: String },
}

enum Failure {
    Usage(String),
    Checks,
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn print_reports(reports: &[CheckReport], json: bool) -> Result<(), Failure> {
    for r in reports {
        if json {
            println!("{}", r.to_json());
        } else {
            println!("{r}");
        }
    }
    if !json {
        let passed = reports.iter().filter(|r| r.passed()).count();
        println!("{passed}/{} checks passed", reports.len());
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn order_from(trailing: Option<&str>, descending: bool) -> Result<OrderSpec, Failure> {
    let mut list = Vec::new();
    for g in trailing.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        list.push(g.parse::<Generator>().map_err(usage)?);
    }
    OrderSpec::new(descending, list).map_err(usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { check, json, .. } => {
            let reports = match check {
                Some(id) => vec![run_check(&id).map_err(usage)?],
                None => run_all(),
            };
            print_reports(&reports, json)
        }
        Command::Nf {
            expr,
            trailing,
            descending,
        } => {
            let e = parse_element(&expr).map_err(usage)?;
            let order = order_from(trailing.as_deref(), descending)?;
            if order.is_trailing() {
                let (q, i) = reduce_trailing(&e, &order).map_err(usage)?;
                println!("quotient: {q}");
                println!("ideal:    {i}");
            } else {
                println!("{}", normal_form(&e, &order));
            }
            Ok(())
        }
        Command::Bracket { a, b } => {
            let a = a.parse::<Generator>().map_err(usage)?;
            let b = b.parse::<Generator>().map_err(usage)?;
            println!("{}", bracket(a, b));
            Ok(())
        }
        Command::Act { expr, rules, state } => {
            let text = std::fs::read_to_string(&rules).map_err(|e| usage(format!("{}: {e}", rules.display())))?;
            let space = load_rules(&text).map_err(usage)?;
            let e = parse_element(&expr).map_err(usage)?;
            let v = space.vector(&state).map_err(usage)?;
            match act_element(&e, &v, &space) {
                Ok(r) => {
                    println!("{}", space.render(&r));
                    Ok(())
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    Err(Failure::Checks)
                }
            }
        }
        Command::Verma { level_max, h, c, dims } => {
            let top: HalfInt = level_max.trim().parse().map_err(usage)?;
            if top < HalfInt::ZERO {
                return Err(usage("level must be nonnegative"));
            }
            let levels = HalfInt::range_inclusive(HalfInt::ZERO, top);
            if dims {
                let d: Vec<String> = levels.map(|l| verma::dim(l).to_string()).collect();
                println!("[{}]", d.join(", "));
                return Ok(());
            }
            let h = parse_scalar(&h).map_err(usage)?;
            let c = parse_scalar(&c).map_err(usage)?;
            let m = VermaModule::new(h, c);
            for l in levels {
                let basis = verma::basis(l);
                println!("level {l}: dim {}", basis.len());
                for b in &basis {
                    println!("  {b}");
                }
            }
            let bound = HalfInt::from_doubled(5);
            match m.rep_check(top, bound) {
                Ok(r) => {
                    println!("representation property: {} checks passed", r.checks);
                    Ok(())
                }
                Err(e) => {
                    println!("representation property: {e}");
                    Err(Failure::Checks)
                }
            }
        }
        Command::Parse { expr } => {
            let ast = parse_expr(&expr).map_err(usage)?;
            let e = nscas::cli::parser::elaborate(&ast).map_err(usage)?;
            println!("{e}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
