mod commands;
mod nspec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact continued-fraction acceleration of BBP-type series.
#[derive(Parser, Debug)]
#[command(name = "cfaccel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Also write the JSON report to this file.
    #[arg(long = "report", global = true)]
    report_path: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified digits with and without the correction.
    Compute {
        /// Catalog id or path to a `.series` file.
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value = "10")]
        n: String,
        #[arg(long, default_value_t = 10, value_parser = parse_base)]
        base: u32,
    },
    /// Coefficients of MC_k and the residual pair (K0, C_k).
    Solve {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Checks a published table, family, rate or inequality.
    Verify {
        #[arg(long)]
        fixture: String,
        /// "a,b,c" or "a..b"; defaults depend on the fixture.
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Sign certificates for a lemma, or `all`.
    Certify {
        #[arg(long)]
        lemma: String,
    },
    /// Lists the built-in series and fixtures.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

fn parse_base(s: &str) -> Result<u32, String> {
    match s {
        "10" => Ok(10),
        "16" => Ok(16),
        _ => Err("base must be 10 or 16".into()),
    }
}

/// 0: every check passed, 1: error or failed check, 2: indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDETERMINATE",
        }
    }

    /// Failure dominates indeterminacy.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Indeterminate, _) | (_, Status::Indeterminate) => Status::Indeterminate,
            _ => Status::Pass,
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Compute { .. } => "compute",
        Command::Solve { .. } => "solve",
        Command::Verify { .. } => "verify",
        Command::Certify { .. } => "certify",
        Command::Catalog => "catalog",
    };
    let result = match cli.command {
        Command::Compute { series, k, n, base } => commands::compute(&series, k, &n, base),
        Command::Solve { series, k } => commands::solve(&series, k),
        Command::Verify { fixture, n, k } => commands::verify(&fixture, n.as_deref(), k),
        Command::Certify { lemma } => commands::certify(&lemma),
        Command::Catalog => Ok(commands::catalog()),
    };
    let out = match result {
        Ok(out) => out,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut json = serde_json::json!({
        "command": name,
        "status": out.status.as_str(),
        "exit_code": out.status.code(),
    });
    if let (Some(obj), serde_json::Value::Object(body)) = (json.as_object_mut(), out.json) {
        obj.extend(body);
    }
    let pretty = serde_json::to_string_pretty(&json).expect("serialisable report");
    match cli.output {
        Output::Text => print!("{}", out.text),
        Output::Json => println!("{pretty}"),
    }
    if let Some(path) = cli.report_path {
        if let Err(e) = std::fs::write(&path, format!("{pretty}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(out.status.code())
}

#[cfg(test)]
mod tests {
    use super::Status::*;

    #[test]
    fn failure_dominates() {
        assert_eq!(Pass.combine(Indeterminate), Indeterminate);
        assert_eq!(Indeterminate.combine(Fail), Fail);
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!([Pass.code(), Fail.code(), Indeterminate.code()], [0, 1, 2]);
    }
}
