//! `richrt`: reproduces the searches and verifications and prints a JSON
//! certificate for each run. Exit status 0 means every reproduced value
//! matched, 2 means at least one did not, 1 means bad usage.

mod certificate;
mod commands;
mod expectations;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use richrt::Parallelism;

use commands::{CeArgs, ComplexityArgs, ForbiddenArgs, GenerateArgs, PalindromesArgs, SearchArgs, TablesArgs};

#[derive(Parser, Debug)]
#[command(name = "richrt", version, about = "Rich words and the ternary rich repetition threshold")]
struct Cli {
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true, env = "RICHRT_THREADS", default_value_t = 0)]
    threads: usize,
    /// Pretty-print the certificate.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of x, y or z.
    Generate(GenerateArgs),
    /// Longest word satisfying a set of predicates, from a preset or flags.
    Search(SearchArgs),
    /// Reproduce both prefix tables.
    VerifyTables(TablesArgs),
    /// Check the forbidden factor families and the return trees.
    VerifyForbidden(ForbiddenArgs),
    /// Factor, palindromic and right-special counts on long prefixes.
    Complexity(ComplexityArgs),
    /// Count palindromes and test richness.
    Palindromes(PalindromesArgs),
    /// Stretch sequences, closed forms and the critical exponent of z.
    Ce(CeArgs),
    /// Run every routine check and combine the results.
    CertifyAll(TablesArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let exp = expectations::load();
    let mode = Parallelism::from_threads(cli.threads);
    let (name, run) = match &cli.command {
        Command::Generate(a) => ("generate", commands::generate(a, &exp)),
        Command::Search(a) => ("search", commands::search(a, mode, &exp)),
        Command::VerifyTables(a) => ("verify-tables", commands::verify_tables(a, mode, &exp)),
        Command::VerifyForbidden(a) => ("verify-forbidden", commands::verify_forbidden(a, mode)),
        Command::Complexity(a) => ("complexity", commands::complexity(a, mode)),
        Command::Palindromes(a) => ("palindromes", commands::palindromes(a)),
        Command::Ce(a) => ("ce", commands::ce(a, mode, &exp)),
        Command::CertifyAll(a) => ("certify-all", commands::certify_all(a, mode, &exp)),
    };
    let (config, outcome) = match run {
        Ok(v) => v,
        Err(e) => {
            eprintln!("richrt {name}: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Command::Generate(a) = &cli.command {
        if a.text {
            println!("{}", outcome.results["word"].as_str().unwrap_or_default());
            return ExitCode::SUCCESS;
        }
    }
    let cert = certificate::finish(name, config, started, mode.current_threads(), exp.version, outcome);
    let text = if cli.pretty { serde_json::to_string_pretty(&cert) } else { serde_json::to_string(&cert) };
    println!("{}", text.expect("certificate serializes"));
    if cert.mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
