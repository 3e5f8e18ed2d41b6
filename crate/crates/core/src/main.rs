use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use foliares::local::DEFAULT_MAX_DEGREE;
use foliares::report::Format;
use foliares::run::{run, run_local, CheckSelector, LocalRequest, RunConfig};
use foliares::scenario::Sweep;

#[derive(Parser)]
#[command(
    name = "foliares",
    version,
    about = "Verify residue formulas for maps transverse to holomorphic distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a scenario file.
    Verify(VerifyArgs),
    /// Compute one local multiplicity at the origin.
    Local(LocalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    check: CheckSelector,
    /// Parameter range `A..B` replacing the file's [sweep].
    #[arg(long, value_parser = Sweep::parse)]
    sweep: Option<Sweep>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["ideal", "milnor", "curve", "residue"]))]
struct LocalArgs {
    /// Colength of `;`-separated generators, e.g. "x1^2 - x2; x2^2".
    #[arg(long)]
    ideal: Option<String>,
    /// Milnor number of a polynomial.
    #[arg(long)]
    milnor: Option<String>,
    /// Tangency index of this curve with the vector field given by --field.
    #[arg(long, requires = "field")]
    curve: Option<String>,
    /// Vector field components `a1; a2`.
    #[arg(long, requires = "curve")]
    field: Option<String>,
    /// Intersection multiplicity of a square `;`-separated system.
    #[arg(long)]
    residue: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => run(&RunConfig {
            scenario: a.scenario,
            check: a.check,
            sweep: a.sweep,
            format: match a.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Structured => Format::Structured,
            },
            max_degree: a.max_degree,
        }),
        Command::Local(a) => {
            let req = if let Some(s) = a.ideal {
                LocalRequest::Ideal(s)
            } else if let Some(s) = a.milnor {
                LocalRequest::Milnor(s)
            } else if let Some(s) = a.residue {
                LocalRequest::Residue(s)
            } else {
                LocalRequest::Brunella { curve: a.curve.unwrap_or_default(), field: a.field.unwrap_or_default() }
            };
            run_local(&req, a.max_degree)
        }
    };
    print!("{}", outcome.output);
    ExitCode::from(outcome.exit_code as u8)
}
