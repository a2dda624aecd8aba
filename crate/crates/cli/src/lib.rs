//! Command-line front end: argument parsing, exit-code mapping and the
//! image/key file handling around the `caec` library.

use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use caec::rules::Boundary;

pub mod commands;
pub mod keyfile;
pub mod pbm;

use pbm::PbmForm;

/// Exit codes: 1 = usage, 2 = data/format, while verification findings map
/// to 3 without going through an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<caec::Error> for CliError {
    fn from(e: caec::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

/// What one invocation produced. Identical inputs yield identical results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "caec",
    version,
    about = "2-D cellular automaton rule matrices, attractor analysis and encompression of binary images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a rule's transformation matrix (first line "rows cols", then
    /// one 0/1 line per row)
    RuleMatrix {
        #[arg(long)]
        rule: u16,
        /// Grid dimensions: rows then columns
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        boundary: Boundary,
    },
    /// Enumerate the full state-transition diagram of a rule
    Std {
        #[arg(long)]
        rule: u16,
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        boundary: Boundary,
    },
    /// Print depth, attractor count, rank, PEF cells and compression ratio
    /// of a key
    Profile {
        #[arg(short, long)]
        key: PathBuf,
    },
    /// List the multiple-attractor rules at the given grid size
    FindMaca {
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        boundary: Boundary,
        /// Keep only rules with at least this many attractors
        #[arg(long = "min-k", default_value_t = 1)]
        min_k: u128,
    },
    /// Close the five basic matrices under the Boolean product and verify
    /// the group/monoid axioms
    Algebra {
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        boundary: Boundary,
        /// Also print the product table as rows of element indices
        #[arg(long)]
        table: bool,
    },
    /// Write a key file; picks the most compressive usable rule unless one
    /// is given
    Keygen {
        /// Block dimensions: rows then columns
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        block: Vec<usize>,
        #[arg(long)]
        boundary: Boundary,
        #[arg(long)]
        rule: Option<u16>,
        /// Encryption translation exponents
        #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = vec![1, 1])]
        enc: Vec<usize>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compress and encrypt a PBM image into a container file
    Encompress {
        #[arg(short, long)]
        key: PathBuf,
        /// Input image (PBM, P1 or P4)
        #[arg(short, long)]
        input: PathBuf,
        /// Output container
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decrypt and decompress a container back into a (lossy) PBM image
    Dencompress {
        #[arg(short, long)]
        key: PathBuf,
        /// Input container
        #[arg(short, long)]
        input: PathBuf,
        /// Output image
        #[arg(short, long)]
        output: PathBuf,
        /// Output PBM flavor
        #[arg(long, default_value = "p1", value_parser = parse_form)]
        format: PbmForm,
    },
    /// Re-check every published claim about the rule algebra and MACA
    /// structure; exits 3 when any claim deviates
    Verify {
        /// Check algebra closures for all grids up to this side length
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        /// Sweep rules exhaustively on grids with at most this many cells
        #[arg(long = "max-cells", default_value_t = 9)]
        max_cells: usize,
    },
}

fn parse_form(s: &str) -> Result<PbmForm, String> {
    match s {
        "p1" | "P1" => Ok(PbmForm::P1),
        "p4" | "P4" => Ok(PbmForm::P4),
        other => Err(format!("unknown format {other:?} (expected p1 or p4)")),
    }
}

/// Parses and runs one invocation. `args` excludes the binary name.
pub fn run<S: AsRef<str>>(args: &[S]) -> CommandResult {
    let argv = std::iter::once("caec".to_string()).chain(args.iter().map(|s| s.as_ref().to_string()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => CommandResult {
                    code: 1,
                    stdout: String::new(),
                    stderr: e.to_string(),
                },
            };
        }
    };

    let result = match cli.command {
        Command::RuleMatrix { rule, dims, boundary } => {
            commands::rule_matrix_cmd(rule, boundary, dims[0], dims[1])
        }
        Command::Std { rule, dims, boundary } => {
            commands::std_cmd(rule, boundary, dims[0], dims[1])
        }
        Command::Profile { key } => commands::profile_cmd(&key),
        Command::FindMaca { dims, boundary, min_k } => {
            commands::find_maca_cmd(boundary, dims[0], dims[1], min_k)
        }
        Command::Algebra { dims, boundary, table } => {
            commands::algebra_cmd(boundary, dims[0], dims[1], table)
        }
        Command::Keygen {
            block,
            boundary,
            rule,
            enc,
            out,
        } => commands::keygen_cmd(block[0], block[1], boundary, rule, enc[0], enc[1], &out),
        Command::Encompress { key, input, output } => {
            commands::encompress_cmd(&key, &input, &output)
        }
        Command::Dencompress {
            key,
            input,
            output,
            format,
        } => commands::dencompress_cmd(&key, &input, &output, format),
        Command::Verify { max_dim, max_cells } => commands::verify_cmd(max_dim, max_cells),
    };

    result.unwrap_or_else(|e| CommandResult {
        code: e.code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}
