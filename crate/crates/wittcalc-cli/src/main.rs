//! `wittcalc`: JSON in, JSON (or a plain table) out.
//!
//! Exit codes: 0 success, 1 a verify-suite criterion failed, 2 an axiom or precondition is
//! violated, 3 the payload does not match the command's schema, 4 internal invariant breach.

mod commands;
mod report;
mod schema;

use std::io::Read;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wittcalc::suite::run_all;
use wittcalc::{Error, Result};

#[derive(Parser)]
#[command(name = "wittcalc", version, about = "Form parameters, Q-forms and their Witt groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient bound for the bounded searches.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..=16))]
    bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized criteria of `verify-suite`.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args)]
struct Payload {
    /// JSON document; read from stdin when omitted.
    json: Option<String>,
}

impl Payload {
    fn text(&self) -> Result<String> {
        match &self.json {
            Some(s) => Ok(s.clone()),
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Schema(format!("reading stdin: {e}")))?;
                Ok(s)
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Symmetry, height and complement of a form parameter.
    Classify(Payload),
    /// Maximal splitting `P ≅ Q ⊕ G` with the isomorphism.
    Split(Payload),
    /// Witt class of a nonsingular form, in witt-group coordinates.
    WittClass(Payload),
    /// `W₀(P)` with generator provenance.
    WittGroup(Payload),
    /// `GW₀(P)` and the image condition.
    GwGroup(Payload),
    /// `G ⊗_Z Q` with generator images; payload `{"G": …, "Q": …}`.
    Tensor(Payload),
    /// `W₀(α)`; payload `{"source": …, "target": …, "matrix": …}`.
    InducedMap(Payload),
    /// Stable metabolicity and a bounded lagrangian search.
    Metabolic(Payload),
    /// Bounded isometry search; payload `{"f": …, "g": …}`.
    Isometric(Payload),
    /// Whether a form is absorbing (indefinite and full).
    Absorbing(Payload),
    /// Explicit embeddings into three copies of an absorbing form; payload `{"form": …, "eta"?: …}`.
    Embed(Payload),
    /// Runs the acceptance suite and prints a pass/fail table.
    VerifySuite,
}

fn dispatch(cli: &Cli) -> Result<Value> {
    let bound = cli.bound;
    match &cli.command {
        Command::Classify(p) => commands::classify_cmd(&p.text()?),
        Command::Split(p) => commands::split(&p.text()?),
        Command::WittClass(p) => commands::witt_class_cmd(&p.text()?),
        Command::WittGroup(p) => commands::witt_group_cmd(&p.text()?),
        Command::GwGroup(p) => commands::gw_group_cmd(&p.text()?),
        Command::Tensor(p) => commands::tensor(&p.text()?),
        Command::InducedMap(p) => commands::induced_map(&p.text()?),
        Command::Metabolic(p) => commands::metabolic(&p.text()?, bound),
        Command::Isometric(p) => commands::isometric(&p.text()?, bound),
        Command::Absorbing(p) => commands::absorbing(&p.text()?),
        Command::Embed(p) => commands::embed(&p.text()?, bound),
        Command::VerifySuite => unreachable!("handled separately"),
    }
}

fn verify_suite(seed: u64, format: Format) -> ExitCode {
    let results = run_all(seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    match format {
        Format::Pretty => {
            for r in &results {
                println!("{r}");
            }
            println!("{} passed, {failed} failed (seed {seed})", results.len() - failed);
        }
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail }))
                .collect();
            println!("{}", json!({ "seed": seed, "passed": results.len() - failed, "failed": failed, "criteria": rows }));
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    if matches!(cli.command, Command::VerifySuite) {
        return verify_suite(cli.seed, cli.format);
    }
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli))) {
        Ok(Ok(report)) => {
            match cli.format {
                Format::Json => println!("{report}"),
                Format::Pretty => println!("{}", report::pretty(&report)),
            }
            ExitCode::SUCCESS
        }
        Ok(Err(Error::Validation(m))) => fail("validation", &m, 2),
        Ok(Err(Error::Schema(m))) => fail("schema", &m, 3),
        Ok(Err(e @ (Error::Internal(_) | Error::BoundExhausted(_)))) => fail("internal", &e.to_string(), 4),
        Err(_) => fail("internal", "panic in library code", 4),
    }
}
