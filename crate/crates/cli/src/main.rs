use std::path::PathBuf;
use std::process::ExitCode;

use bialg::parse_rational;
use bialg_cli::{run, Command, OutputFormat, RunConfig, DEFAULT_DEGREE, DEFAULT_MAXDEG};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bialg", version, about = "Exact computations for coboundary Lie bialgebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check Jacobi, antisymmetry and the coboundary condition.
    Validate(Common),
    /// Lift r to an associator φ and a twist ρ.
    Lift(Common),
    /// Co-Hochschild cohomology dimensions.
    Cohomology(Common),
    /// Centers and the derivation D of U(g) and U(g*).
    Envelope(Common),
    /// θ on the Poisson traces.
    Theta(Common),
    /// Quasitriangular checks: C_s, α, Θ and the inner derivation.
    Qt(Common),
}

#[derive(Args)]
struct Common {
    /// Input JSON file.
    input: PathBuf,
    /// Truncation degree N.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
    /// Maximal filtration degree for enveloping-algebra computations.
    #[arg(long, default_value_t = DEFAULT_MAXDEG)]
    maxdeg: usize,
    /// The scalar s of C_s, as "p/q" or an integer.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    s: String,
    /// Allow truncation degrees above 8.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Comma-separated report sections to keep (certificates are always kept).
    #[arg(long, value_delimiter = ',')]
    emit: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Lift(c) => (Command::Lift, c),
        Cmd::Cohomology(c) => (Command::Cohomology, c),
        Cmd::Envelope(c) => (Command::Envelope, c),
        Cmd::Theta(c) => (Command::Theta, c),
        Cmd::Qt(c) => (Command::Qt, c),
    };
    let Some(s) = parse_rational(&common.s) else {
        eprintln!("error: --s expects a rational, got {:?}", common.s);
        return ExitCode::from(2);
    };
    let output = match common.output {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    };
    let config = RunConfig {
        command,
        input_path: common.input,
        degree: common.degree,
        maxdeg: common.maxdeg,
        s,
        allow_large: common.allow_large,
        output,
        emit: common.emit,
    };
    let outcome = run(&config);
    print!("{}", outcome.render(output));
    ExitCode::from(outcome.exit_code as u8)
}
