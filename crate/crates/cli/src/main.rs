mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permcheck::harness::RunConfig;

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "permcheck",
    version,
    about = "Permutation-group checks and table reproduction"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Largest group order that is enumerated element by element.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = positive)]
    cap: u128,
    /// Largest permutation degree accepted for derived constructions.
    #[arg(long = "degree-cap", global = true, default_value_t = 10_000, value_parser = positive)]
    degree_cap: u128,
    /// Allow groups and checks beyond the default scale (M23, M24, PSL2(31) scans).
    #[arg(long, global = true)]
    extended: bool,
    /// Output format; each command has its own default and accepted set.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Manifest file: one group spec per line, `#` starts a comment.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

impl GlobalOpts {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            cap: self.cap,
            degree_cap: self.degree_cap,
            extended: self.extended,
            ..RunConfig::default()
        }
    }
}

fn positive(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, solvability, nilpotency, radical, class count and Sylow orders.
    GroupInfo {
        /// Group spec such as `S:4`, `PSL2:7` or `prod(A:5,C:2)`.
        spec: String,
    },
    /// Build a graph on the group and export it as DOT or JSON.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value_t = KindArg::Element)]
        kind: KindArg,
        #[arg(long)]
        relation: String,
    },
    /// Run harness checks over a manifest, the listed specs, or the default corpus.
    Verify {
        /// Groups to check; overrides the default corpus when no manifest is given.
        specs: Vec<String>,
        /// Comma-separated check ids; all checks when omitted.
        #[arg(long, default_value = "")]
        checks: String,
        /// Record wall-clock timings in the report (the output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Reproduce one of the tables.
    Table {
        #[arg(value_enum)]
        id: TableId,
        /// Degree range for table B, as `5..41` (inclusive).
        #[arg(long, default_value = "5..41")]
        range: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Element,
    Class,
    Expanded,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableId {
    #[value(name = "A-subset")]
    ASubset,
    #[value(name = "B")]
    B,
    #[value(name = "C-subset")]
    CSubset,
    #[value(name = "D-m11")]
    DM11,
}

/// Exit status: 0 success, 1 usage or input error, 2 a check came out inconsistent.
fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
