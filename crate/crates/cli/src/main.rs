use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weylhom::homspace::Verdict;
use weylhom::{Partition, PrimeField};
use weylhom_cli::report;
use weylhom_cli::search::{run_search, SearchConfig, DEFAULT_R_MAX};
use weylhom_cli::{exit, CliError};

#[derive(Parser)]
#[command(name = "weylhom", version, about = "Homomorphisms between Weyl modules with a two-part target")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

fn partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: weylhom::Error| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Thm31,
    Cor62,
    Example64,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of Hom(Delta(lambda), Delta(mu)).
    Homdim {
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_parser = partition)]
        mu: Partition,
        /// Include the nullspace basis in the phi_T coordinates.
        #[arg(long)]
        basis: bool,
    },
    /// Expand a bideterminant [A / B] in the standard basis of Delta(mu).
    Straighten {
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = partition)]
        mu: Partition,
        /// Exponents of the first row, e.g. 2,0,1.
        #[arg(long = "row-a", value_delimiter = ',', required = true)]
        row_a: Vec<u32>,
        /// Exponents of the second row.
        #[arg(long = "row-b", value_delimiter = ',', default_value = "0")]
        row_b: Vec<u32>,
        /// Always use the quotient engine.
        #[arg(long)]
        oracle: bool,
    },
    /// List the standard tableaux of shape mu and weight lambda.
    Tableaux {
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_parser = partition)]
        mu: Partition,
    },
    /// Verify a sufficient condition for homomorphisms.
    Check {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = partition, required_if_eq_any([("mode", "thm31"), ("mode", "cor62")]))]
        lambda: Option<Partition>,
        #[arg(long, value_parser = partition, required_if_eq_any([("mode", "thm31"), ("mode", "cor62")]))]
        mu: Option<Partition>,
    },
    /// Grid search over (p, lambda, mu), writing JSON lines and a CSV summary.
    Search {
        /// Primes to search, e.g. 2,3.
        #[arg(long = "p", value_delimiter = ',', default_value = "2")]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        r_min: u32,
        #[arg(long, default_value_t = DEFAULT_R_MAX)]
        r_max: u32,
        /// Largest number of parts of lambda.
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long)]
        require_mu2_le_lambda1: bool,
        /// Keep only instances whose sum-of-all-maps conditions hold.
        #[arg(long)]
        require_thm31: bool,
        #[arg(long, default_value_t = 0)]
        min_dim: usize,
        /// Search this lambda only.
        #[arg(long, value_parser = partition)]
        lambda: Option<Partition>,
        #[arg(long, short)]
        output: PathBuf,
        /// CSV summary path (default: output with .csv extension).
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Worker threads (default: WEYLHOM_THREADS, then all CPUs).
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn print_json<T: Serialize>(value: &T, pretty: bool) {
    let s = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", s.expect("reports serialize"));
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Homdim { p, lambda, mu, basis } => {
            print_json(&report::homdim(&lambda, &mu, PrimeField::new(p)?, basis)?, pretty);
        }
        Command::Straighten { p, mu, row_a, row_b, oracle } => {
            print_json(&report::straighten(&mu, row_a, row_b, PrimeField::new(p)?, oracle)?, pretty);
        }
        Command::Tableaux { lambda, mu } => {
            print_json(&report::tableaux(&lambda, &mu)?, pretty);
        }
        Command::Check { mode, p, lambda, mu } => {
            let field = PrimeField::new(p)?;
            let pair = || Ok::<_, CliError>((lambda.clone().unwrap(), mu.clone().unwrap()));
            let rep = match mode {
                Mode::Thm31 => {
                    let (l, m) = pair()?;
                    report::check_thm31(&l, &m, field)?
                }
                Mode::Cor62 => {
                    let (l, m) = pair()?;
                    report::check_cor62(&l, &m, field)?
                }
                Mode::Example64 => report::check_example64(field)?,
            };
            print_json(&rep, pretty);
            if rep.verdict() != Verdict::Pass {
                return Ok(exit::VERIFICATION_FAILED);
            }
        }
        Command::Search {
            primes,
            r_min,
            r_max,
            m_max,
            require_mu2_le_lambda1,
            require_thm31,
            min_dim,
            lambda,
            output,
            summary,
            threads,
        } => {
            let config = SearchConfig {
                primes,
                r_min,
                r_max,
                m_max,
                require_mu2_le_lambda1,
                require_thm31,
                min_dim,
                lambda,
                output,
                summary,
                threads,
            };
            let outcome = run_search(&config)?;
            eprintln!(
                "examined {} instances, wrote {} records to {} and {}",
                outcome.examined,
                outcome.records.len(),
                outcome.output.display(),
                outcome.summary.display()
            );
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
