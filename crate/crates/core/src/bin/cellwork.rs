use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cellwork::abgrp::random::Caps;
use cellwork::workbench::suite::report_lines;
use cellwork::workbench::{
    exit_code, load, run_query, run_suites, suite::with_threads, Diagnostic, Instance, RunConfig,
};

/// Cellular squares and independence on finitely generated abelian groups.
///
/// FILE may be `@builtin` for the bundled regression instance.
#[derive(Parser)]
#[command(name = "cellwork", version)]
struct Cli {
    /// Override the file's structure: torsion-free, all or perp:<group>[,<group>...].
    #[arg(long, global = true)]
    structure: Option<String>,
    /// Override the file's independence notion: cellular, indiscrete or pullback.
    #[arg(long, global = true)]
    notion: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that every entity resolves and satisfies its invariants.
    Validate { file: String },
    /// Run one operation on named entities of the file.
    Query {
        file: String,
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        query: Vec<String>,
    },
    /// Run sampled suites and print one JSON report per line.
    Suite {
        file: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Samples per suite (suite-specific defaults when omitted).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Generators, relations, entry bound.
        #[arg(long, value_parser = parse_caps)]
        caps: Option<Caps>,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [g, r, e] = parts.as_slice() else {
        return Err("expected g,r,e".into());
    };
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    let e: i64 = e.trim().parse().map_err(|err| format!("{e:?}: {err}"))?;
    if e < 0 {
        return Err("entry bound must be non-negative".into());
    }
    Ok(Caps::new(num(g)?, num(r)?, e))
}

fn print(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("plain data")));
}

// a closed pipe is not an error worth a panic
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn load_with(file: &str, cli_structure: Option<&str>, cli_notion: Option<&str>) -> Result<Instance, Vec<Diagnostic>> {
    load(file)?
        .with_overrides(cli_structure, cli_notion)
        .map_err(|d| vec![d])
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
    let (st, no) = (cli.structure.as_deref(), cli.notion.as_deref());
    let code = match cli.cmd {
        Cmd::Validate { file } => match load_with(&file, st, no) {
            Ok(inst) => {
                let f = &inst.file;
                print(&json!({
                    "valid": true,
                    "groups": f.groups.len(),
                    "homs": f.homs.len(),
                    "spans": f.spans.len(),
                    "cospans": f.cospans.len(),
                    "squares": f.squares.len(),
                    "sequences": f.sequences.len(),
                }));
                0
            }
            Err(diags) => {
                print(&json!({ "valid": false, "diagnostics": diags }));
                2
            }
        },
        Cmd::Query { file, query } => match load_with(&file, st, no) {
            Err(diags) => {
                print(&json!({ "error": { "kind": "invalid-file", "diagnostics": diags } }));
                2
            }
            Ok(inst) => match run_query(&inst, &query) {
                Ok(v) => {
                    print(&v);
                    0
                }
                Err(e) => {
                    print(&json!({ "error": e }));
                    2
                }
            },
        },
        Cmd::Suite {
            file,
            seed,
            samples,
            suites,
            caps,
            bound,
        } => {
            let inst = match load_with(&file, st, no) {
                Ok(i) => i,
                Err(diags) => {
                    print(&json!({ "error": { "kind": "invalid-file", "diagnostics": diags } }));
                    return ExitCode::from(2);
                }
            };
            let cfg = RunConfig {
                seed,
                samples,
                caps: caps.unwrap_or_default(),
                bound,
                suites,
            };
            match with_threads(|| run_suites(&inst, &cfg)).and_then(|r| r) {
                Ok(reports) => {
                    emit(&report_lines(&reports));
                    exit_code(&reports, &inst.notion)
                }
                Err(e) => {
                    print(&json!({ "error": { "kind": "input", "message": e.to_string() } }));
                    2
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
