use std::path::PathBuf;
use std::process::ExitCode;

use abelian_connections::cli::{run, CliError, Command, Format, Suite, Workspace};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abconn", version, about = "Line bundles, extension classes and λ-connections on complex tori")]
struct Args {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check lattice, bundle, connection and character data
    Validate { document: PathBuf },
    /// Dual lattice generators and the biduality check
    Dual { document: PathBuf },
    /// φ_L from the Hermitian form, the Chern form and translations
    Phi { document: PathBuf },
    /// Complex and real radicals of H
    Radical { document: PathBuf },
    /// Translations fixing the bundle
    Stabilizer { document: PathBuf },
    /// Certified graded dimensions of the function ring
    Ringdim {
        document: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Atiyah class against the pushed-out moduli class
    Prop1 { document: PathBuf },
    /// Monodromy character of a connection
    Monodromy { document: PathBuf },
    /// Connection with a given monodromy character
    RhInverse { document: PathBuf },
    /// Run seeded property suites
    Verify {
        document: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn load(path: &PathBuf) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok(Workspace::parse(&text)?)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, document) = match args.command {
        Cmd::Validate { document } => (Command::Validate, Some(document)),
        Cmd::Dual { document } => (Command::Dual, Some(document)),
        Cmd::Phi { document } => (Command::Phi, Some(document)),
        Cmd::Radical { document } => (Command::Radical, Some(document)),
        Cmd::Stabilizer { document } => (Command::Stabilizer, Some(document)),
        Cmd::Ringdim { document, max_degree } => (Command::Ringdim { max_degree }, Some(document)),
        Cmd::Prop1 { document } => (Command::Prop1, Some(document)),
        Cmd::Monodromy { document } => (Command::Monodromy, Some(document)),
        Cmd::RhInverse { document } => (Command::RhInverse, Some(document)),
        Cmd::Verify { document, suite, cases, seed } => (Command::Verify { suite, cases, seed }, document),
    };
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let outcome = document
        .as_ref()
        .map_or_else(|| Ok(Workspace::default_workspace()), load)
        .and_then(|ws| run(&command, &ws));
    match outcome {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
