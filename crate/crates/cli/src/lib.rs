//! Reads game and structure files and runs the `choicest` commands.

use std::fmt::Write as _;
use std::path::PathBuf;

use choice_structures::act::DEFAULT_ACT_CAP;
use choice_structures::search::SearchBounds;

mod commands;
pub mod spec;

pub use spec::{parse_game_spec, parse_structure_spec, ParsedStructure, SpecError, StructureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ChoiceEval,
    Hierarchy,
    Nonred,
    Embed,
    Rationalize,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ChoiceEval => "choice-eval",
            Command::Hierarchy => "hierarchy",
            Command::Nonred => "nonred",
            Command::Embed => "embed",
            Command::Rationalize => "rationalize",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    /// One tab-separated record per line: a kind, then `key=value` fields.
    Machine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `verify` accepts several files; every other command exactly one.
    pub inputs: Vec<PathBuf>,
    pub levels: usize,
    pub act_cap: usize,
    pub menu_cap: usize,
    pub samples: usize,
    pub grid: usize,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            command,
            inputs,
            levels: 3,
            act_cap: DEFAULT_ACT_CAP,
            menu_cap: 4,
            samples: 256,
            grid: 8,
            seed: 0,
            format: Format::Table,
        }
    }

    pub fn bounds(&self) -> SearchBounds {
        SearchBounds {
            act_cap: self.act_cap,
            menu_cap: self.menu_cap,
            samples: self.samples,
            seed: self.seed,
            ..SearchBounds::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    VerificationFailure = 1,
    InputError = 2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CliError {
    Input(String),
    Verification(String),
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<choice_structures::Error> for CliError {
    fn from(e: choice_structures::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub(crate) struct Out {
    format: Format,
    text: String,
}

impl Out {
    fn new(format: Format) -> Self {
        Out {
            format,
            text: String::new(),
        }
    }

    /// Table-only line.
    pub(crate) fn heading(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Table {
            self.text.push_str(line.as_ref());
            self.text.push('\n');
        }
    }

    /// Machine-only record.
    pub(crate) fn record(&mut self, kind: &str, fields: &[(&str, String)]) {
        if self.format == Format::Machine {
            self.emit("", kind, fields);
        }
    }

    pub(crate) fn raw(&mut self, table: impl AsRef<str>, machine: impl AsRef<str>) {
        let line = match self.format {
            Format::Table => table.as_ref(),
            Format::Machine => machine.as_ref(),
        };
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub(crate) fn emit(&mut self, table: impl AsRef<str>, kind: &str, fields: &[(&str, String)]) {
        match self.format {
            Format::Table => {
                self.text.push_str(table.as_ref());
                self.text.push('\n');
            }
            Format::Machine => {
                self.text.push_str(kind);
                for (k, v) in fields {
                    let _ = write!(self.text, "\t{k}={v}");
                }
                self.text.push('\n');
            }
        }
    }
}

/// Runs one command. Input problems give status 2, failed checks status 1
/// with the first counterexample on stderr.
pub fn run(config: &RunConfig) -> RunOutcome {
    let mut out = Out::new(config.format);
    let result = if config.levels == 0 || config.act_cap == 0 || config.menu_cap == 0 || config.grid == 0 {
        Err(CliError::Input(
            "--levels, --act-cap, --menu-cap and --grid must be positive".into(),
        ))
    } else {
        commands::dispatch(config, &mut out)
    };
    let (status, stderr) = match result {
        Ok(()) => (ExitStatus::Ok, String::new()),
        Err(CliError::Input(m)) => (ExitStatus::InputError, format!("input error: {m}\n")),
        Err(CliError::Verification(m)) => (
            ExitStatus::VerificationFailure,
            format!("verification failed: {m}\n"),
        ),
    };
    RunOutcome {
        status,
        stdout: out.text,
        stderr,
    }
}
