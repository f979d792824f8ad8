use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use olsc_cli::{bench, commands, CliError};
use olsc_mceliece::CodeParams;

#[derive(Parser)]
#[command(
    name = "olsc",
    version,
    about = "McEliece encryption over non-binary orthogonal Latin square codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Latin square order (prime)
    #[arg(long)]
    q: u32,
    /// Correctable symbol errors per block; needs 2t-2 <= q-1
    #[arg(long)]
    t: u32,
    /// Bits per symbol
    #[arg(long)]
    b: u32,
}

impl CodeArgs {
    fn params(&self) -> Result<CodeParams, CliError> {
        Ok(CodeParams::new(self.q, self.t, self.b)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair
    Keygen {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "pub")]
        pub_path: PathBuf,
        #[arg(long = "priv")]
        priv_path: PathBuf,
        #[arg(long, hide = true)]
        seed: Option<String>,
    },
    /// Encrypt a file under a public key
    Encrypt {
        #[arg(long = "pub")]
        pub_path: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[arg(long, hide = true)]
        seed: Option<String>,
    },
    /// Decrypt a file with a private key
    Decrypt {
        #[arg(long = "priv")]
        priv_path: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Time keygen/encrypt/decrypt and report decoder operation counts
    Bench {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Keygen {
            code,
            pub_path,
            priv_path,
            seed,
        } => {
            let seed = commands::parse_seed(seed.as_deref())?;
            let metrics = commands::keygen(code.params()?, &pub_path, &priv_path, seed)?;
            print!("{}", commands::format_metrics(&metrics));
        }
        Command::Encrypt {
            pub_path,
            input,
            output,
            seed,
        } => {
            let seed = commands::parse_seed(seed.as_deref())?;
            let s = commands::encrypt(&pub_path, &input, &output, seed)?;
            let p = s.params;
            println!(
                "encrypted {} bytes into {} blocks (q={} t={} b={})",
                s.bytes_in, s.blocks, p.q, p.t, p.b
            );
        }
        Command::Decrypt {
            priv_path,
            input,
            output,
        } => {
            let s = commands::decrypt(&priv_path, &input, &output)?;
            println!(
                "decrypted {} blocks into {} bytes ({} symbol corrections)",
                s.blocks, s.bytes_out, s.corrected
            );
        }
        Command::Bench { code, trials, csv } => {
            let report = bench::run(code.params()?, trials)?;
            print!("{}", report.summary());
            if let Some(path) = csv {
                bench::write_csv(&report, &path)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("olsc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
