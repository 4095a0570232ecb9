use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fuzzcrypt_cli::commands::{self, prepare_input};
use fuzzcrypt_cli::error::exit;
use fuzzcrypt_cli::{parse_config, CliError, Format};

#[derive(Parser)]
#[command(name = "fuzzcrypt", version, about = "Fuzzy feature selection and selective substitution encryption")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Pipeline configuration (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Input file (UTF-8)
    #[arg(long)]
    input: PathBuf,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Treat the input as HTML and use its visible text
    #[arg(long)]
    html: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Membership degree of every character in every category
    Fuzzify(ReportArgs),
    /// Relevance score and rank of every character
    Rank(ReportArgs),
    /// Encrypt the input into an envelope
    Encrypt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        html: bool,
    },
    /// Recover plaintext from an envelope
    Decrypt {
        #[command(flatten)]
        common: Common,
    },
    /// Encrypt and decrypt in memory and report whether the text survives
    Roundtrip(ReportArgs),
}

fn read_input(path: &Path, html: bool) -> Result<String, CliError> {
    let doc = fuzzcrypt_core::load_text(path)?;
    Ok(prepare_input(&doc.text, html))
}

fn emit(output: Option<&Path>, data: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, data).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(data.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Fuzzify(a) => {
            let config = parse_config(&a.common.config)?;
            let text = read_input(&a.common.input, a.html)?;
            emit(a.common.output.as_deref(), &commands::cmd_fuzzify(&text, &config, a.format)?)?;
        }
        Command::Rank(a) => {
            let config = parse_config(&a.common.config)?;
            let text = read_input(&a.common.input, a.html)?;
            emit(a.common.output.as_deref(), &commands::cmd_rank(&text, &config, a.format)?)?;
        }
        Command::Encrypt { common, html } => {
            let config = parse_config(&common.config)?;
            let text = read_input(&common.input, html)?;
            emit(common.output.as_deref(), &commands::cmd_encrypt(&text, &config)?)?;
        }
        Command::Decrypt { common } => {
            let config = parse_config(&common.config)?;
            let envelope = read_input(&common.input, false)?;
            emit(common.output.as_deref(), &commands::cmd_decrypt(&envelope, &config)?)?;
        }
        Command::Roundtrip(a) => {
            let config = parse_config(&a.common.config)?;
            let text = read_input(&a.common.input, a.html)?;
            let (report, ok) = commands::cmd_roundtrip(&text, &config, a.format)?;
            emit(a.common.output.as_deref(), &report)?;
            if !ok {
                return Ok(exit::FAILURE);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("fuzzcrypt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
