use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use asm_dpp::Problem;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cli::{criteria, table_json, Budget, CliError, Target};
use patterns::Impl;
use serde_json::json;

#[derive(Parser)]
#[command(name = "asmdpp", about = "Bijections between alternating sign matrices and descending plane partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    #[arg(long, global = true, default_value_t = 1)]
    i: usize,
    /// Parameter of the bijections; the fallback π and Γ ignore it
    #[arg(long, global = true, default_value_t = 0)]
    x: i64,
    #[arg(long = "impl", global = true, value_enum, default_value_t = ImplArg::Fallback)]
    imp: ImplArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long = "budget-sec", global = true, default_value_t = 1800.0)]
    budget_sec: f64,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sizes of ASM_n, DPP_n, B_n and their refinements, with the formulas
    Counts,
    /// Full correspondence table of one bijection
    Table {
        #[arg(value_enum)]
        problem: ProblemArg,
    },
    /// Exhaustively verify a family of sijections
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// Run the acceptance criteria
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum ImplArg {
    Fallback,
    Parti,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Main,
    Asmdpp,
}

// what to print and whether it counts as a pass
struct Output {
    text: Vec<String>,
    json: serde_json::Value,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.common;
    let budget = Budget::new(c.budget_sec)?;
    let imp = match c.imp {
        ImplArg::Fallback => Impl::Fallback,
        ImplArg::Parti => Impl::PartI,
    };
    match &cli.command {
        Command::Counts => {
            let counts = cli::counts(c.n)?;
            Ok(Output { text: counts.lines(), json: serde_json::to_value(&counts).expect("serializable"), ok: counts.ok })
        }
        Command::Table { problem } => {
            let problem = match problem {
                ProblemArg::Main => Problem::Main,
                ProblemArg::Asmdpp => Problem::AsmDpp,
            };
            let t = cli::table(problem, c.n, c.i, c.x, imp)?;
            budget.check()?;
            Ok(Output { text: t.lines(), json: table_json(&t, c.n, c.i, c.x), ok: true })
        }
        Command::Verify { target } => {
            let o = cli::verify(*target, c.n, c.x, imp, &budget)?;
            let mut text = vec![format!("{}: {} ({} points checked)", o.target, if o.ok { "pass" } else { "FAIL" }, o.checked)];
            if let Some(r) = &o.failure {
                text.push(format!("{} fails: {}", r.name, serde_json::to_string(&r.counterexample).expect("serializable")));
            }
            if let Some(note) = &o.note {
                text.push(note.clone());
            }
            Ok(Output { text, json: serde_json::to_value(&o).expect("serializable"), ok: o.ok })
        }
        Command::Selftest => {
            let verdicts = criteria::run(&budget, |_| {});
            let ok = verdicts.iter().all(|v| v.ok);
            let text = verdicts.iter().map(|v| v.to_string()).collect();
            Ok(Output { text, json: json!({ "ok": ok, "criteria": verdicts }), ok })
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> std::io::Result<()> {
    let body = match cli.common.format {
        Format::Text => out.text.iter().map(|l| format!("{l}\n")).collect::<String>(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable")),
    };
    match &cli.common.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("asmdpp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
