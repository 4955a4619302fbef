//! Command-line parsing and the exit-code contract: 0 when every check
//! passes, 1 when a check fails, 2 on input errors or an exceeded guard.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::commands::{self, Command, CommandConfig, Expect, GroupSource, DEFAULT_MAX_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandArg {
    Catalog,
    Geometry,
    Natural,
    Cs,
    Compare,
    Flat,
    Classify,
    Verify,
    Appendix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpectArg {
    Same,
    Differ,
}

/// Exact Saito structures on orbit spaces of reflection groups.
#[derive(Debug, Parser)]
#[command(name = "saito", version)]
pub struct Cli {
    pub command: CommandArg,
    /// Catalog group, e.g. B2, A3, Zm:5, I2:5, G3_1_2, G3_3_3.
    #[arg(long, conflicts_with = "spec")]
    pub group: Option<String>,
    /// JSON group-spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Comma-separated axiom suites for `verify`.
    #[arg(long, value_delimiter = ',')]
    pub axioms: Option<Vec<String>>,
    /// Success criterion for `compare`.
    #[arg(long, value_enum, default_value = "same")]
    pub expect: ExpectArg,
    /// Abort when an intermediate result exceeds this total degree.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
}

impl Cli {
    pub fn config(&self) -> CommandConfig {
        let command = match self.command {
            CommandArg::Catalog => Command::Catalog,
            CommandArg::Geometry => Command::Geometry,
            CommandArg::Natural => Command::Natural,
            CommandArg::Cs => Command::Cs,
            CommandArg::Compare => Command::Compare,
            CommandArg::Flat => Command::Flat,
            CommandArg::Classify => Command::Classify,
            CommandArg::Verify => Command::Verify,
            CommandArg::Appendix => Command::Appendix,
        };
        let group = match (&self.group, &self.spec) {
            (Some(name), _) => Some(GroupSource::Catalog(name.clone())),
            (None, Some(path)) => Some(GroupSource::File(path.clone())),
            (None, None) => None,
        };
        CommandConfig {
            command,
            group,
            axioms: self.axioms.clone(),
            expect: match self.expect {
                ExpectArg::Same => Expect::Same,
                ExpectArg::Differ => Expect::Differ,
            },
            max_degree: self.max_degree,
            m: self.m,
            n: self.n,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let report = match commands::run(&cli.config()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 2;
    }
    for f in report.failures() {
        let _ = writeln!(stderr, "check failed: {} {}", f.id, f.detail);
    }
    commands::exit_code(&report)
}
