//! Command-line surface over the word calculus. Words are passed as one
//! quoted argument in the canonical encoding ("-1 -2 1 2", empty word "e");
//! the argument `-` reads the word from standard input. Exit codes: 0 on
//! success, 1 when a verified property fails, 2 on usage or parse errors.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use earring::{
    oscillation_number, parse_word, phi_truncated, run_table, run_verify, TableFormat,
    VerifyConfig, Word,
};

#[derive(Parser)]
#[command(
    name = "earring",
    version,
    about = "Free-group word calculus on the wedge of countably many circles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word to its free normal form
    Reduce {
        /// Word in the canonical encoding; "-" reads it from stdin
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Count the index-1 letters of a word, as written
    Osc {
        /// Word in the canonical encoding; "-" reads it from stdin
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Image of a word in the inverse limit, truncated at a depth
    Phi {
        /// Truncation depth K; coordinates run 1..=K
        #[arg(long)]
        depth: usize,
        /// Word in the canonical encoding; "-" reads it from stdin
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Emit the witness dichotomy table
    Table {
        /// Largest witness index; rows run n = 2..=max-n
        #[arg(long, default_value_t = 64)]
        max_n: usize,
        /// Truncation depth for the distance column
        #[arg(long, default_value_t = 64)]
        depth: usize,
        /// Output format: text, json, or csv
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: TableFormat,
    },
    /// Run every property suite and report per-property outcomes
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Iterations per randomized suite
        #[arg(long, default_value_t = 10000)]
        cases: usize,
        /// Maximum word length for exhaustive sweeps over indices {1, 2}
        #[arg(long, default_value_t = 8)]
        exhaustive_len: usize,
    },
}

fn parse_format(s: &str) -> Result<TableFormat, earring::table::ParseTableFormatError> {
    s.parse()
}

fn read_word(arg: &str) -> Result<Word, Box<dyn std::error::Error>> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(parse_word(&text)?)
    } else {
        Ok(parse_word(arg)?)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Reduce { word } => {
            println!("{}", read_word(&word)?.reduce());
        }
        Command::Osc { word } => {
            println!("{}", oscillation_number(&read_word(&word)?));
        }
        Command::Phi { depth, word } => {
            println!("{}", phi_truncated(&read_word(&word)?, depth)?);
        }
        Command::Table {
            max_n,
            depth,
            format,
        } => {
            println!("{}", run_table(max_n, depth, format)?);
        }
        Command::Verify {
            seed,
            cases,
            exhaustive_len,
        } => {
            let report = run_verify(VerifyConfig {
                seed,
                cases,
                exhaustive_len,
            })?;
            println!("{}", report.render());
            eprintln!("elapsed: {:?}", report.elapsed);
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
