use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use choice_cli::{run, Command, Format, RunConfig};
use clap::{Parser, Subcommand, ValueEnum};

/// Choice structures, belief hierarchies and ambiguity-averse
/// rationalizability on finite games.
#[derive(Parser)]
#[command(name = "choicest", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Game or structure specification (TOML); `verify` accepts several.
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Hierarchy levels to compute.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    levels: u64,
    /// Largest act pool enumerated exhaustively.
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    act_cap: u64,
    /// Largest menu drawn from the act pool.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    menu_cap: u64,
    /// Random acts and menus drawn when a pool exceeds the caps.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,
    /// Belief grid resolution for default families.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    grid: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Choice tables over the action acts.
    ChoiceEval,
    /// Level maps of the hierarchy and their coherence.
    Hierarchy,
    /// Behavioral partition, separators and the non-redundancy verdict.
    Nonred,
    /// Preference structure as a choice structure, with injectivity report.
    Embed,
    /// Iterated elimination of unjustifiable actions.
    Rationalize,
    /// Law suite plus checks of the given fixtures.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum OutputFormat {
    Table,
    Machine,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::ChoiceEval => Command::ChoiceEval,
        Cmd::Hierarchy => Command::Hierarchy,
        Cmd::Nonred => Command::Nonred,
        Cmd::Embed => Command::Embed,
        Cmd::Rationalize => Command::Rationalize,
        Cmd::Verify => Command::Verify,
    };
    let config = RunConfig {
        command,
        inputs: cli.input,
        levels: cli.levels as usize,
        act_cap: cli.act_cap as usize,
        menu_cap: cli.menu_cap as usize,
        samples: cli.samples,
        grid: cli.grid as usize,
        seed: cli.seed,
        format: match cli.format {
            OutputFormat::Table => Format::Table,
            OutputFormat::Machine => Format::Machine,
        },
    };
    let outcome = run(&config);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
