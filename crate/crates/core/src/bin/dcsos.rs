use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dcsos::cli::{
    cmd_bench, cmd_decompose, cmd_verify, parse_input, parse_rational, parse_split, Algorithm, Command,
    CommandOutput, CorpusParams, OutputFormat, Params, RunConfig, FORMAT_ENV,
};
use dcsos::poly::ParityRule;

#[derive(Parser)]
#[command(name = "dcsos", version, about = "DSOS and DCSOS decompositions of polynomials")]
struct Cli {
    /// Output format: text or json
    #[arg(long, global = true, env = FORMAT_ENV, default_value = "text")]
    format: String,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose a polynomial (read from stdin when omitted) and audit the result
    Decompose(DecomposeArgs),
    /// Re-audit a JSON decomposition (read from stdin when no file is given)
    Verify {
        file: Option<std::path::PathBuf>,
    },
    /// Run all algorithms on a seeded random corpus
    Bench(BenchArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// Polynomial, e.g. "-2*x1^3*x2^5"
    #[arg(allow_hyphen_values = true)]
    polynomial: Option<String>,
    #[arg(long, default_value = "dcsos-minimal")]
    algo: String,
    /// Number of variables (default: highest index used)
    #[arg(long)]
    nvars: Option<usize>,
    /// Parameter s > 0 of dsos-parity
    #[arg(long, default_value = "1")]
    s: String,
    /// Explicit odd part for dsos-parity on a single monomial, e.g. "x1^3*x2"
    #[arg(long)]
    split: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    min_nvars: usize,
    #[arg(long, default_value_t = 4)]
    max_nvars: usize,
    #[arg(long, default_value_t = 1)]
    min_degree: u32,
    #[arg(long, default_value_t = 8)]
    max_degree: u32,
    #[arg(long, default_value_t = 8)]
    max_terms: usize,
    #[arg(long)]
    max_exponent: Option<u32>,
    #[arg(long, default_value_t = 9)]
    coeff_max: i64,
    /// Comma-separated algorithm ids (default: all)
    #[arg(long, value_delimiter = ',')]
    algos: Vec<String>,
    /// Drop the wall-time column so output is reproducible byte for byte
    #[arg(long)]
    no_timing: bool,
}

fn read_stdin() -> Result<String, String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
    Ok(s)
}

fn run(cli: Cli) -> Result<CommandOutput, String> {
    let format: OutputFormat = cli.format.parse().map_err(|e: dcsos::Error| e.to_string())?;
    let mut cfg = RunConfig {
        format,
        ..Default::default()
    };
    let err = |e: dcsos::Error| e.to_string();
    match cli.command {
        Cmd::Decompose(a) => {
            cfg.command = Command::Decompose;
            cfg.algorithm = a.algo.parse().map_err(err)?;
            cfg.nvars = a.nvars;
            let input = match a.polynomial {
                Some(p) => p,
                None => read_stdin()?,
            };
            let s = parse_rational(&a.s).map_err(err)?;
            if s <= num_traits::Zero::zero() {
                return Err(format!("s must be positive, got {s}"));
            }
            let rule = match a.split {
                Some(text) => {
                    let n = match a.nvars {
                        Some(n) => n,
                        None => parse_input(input.trim(), None).map_err(err)?.nvars(),
                    };
                    ParityRule::Explicit(parse_split(&text, n).map_err(err)?)
                }
                None => ParityRule::Minimal,
            };
            cfg.params = Params { s, rule };
            cmd_decompose(&cfg, &input).map_err(err)
        }
        Cmd::Verify { file } => {
            cfg.command = Command::Verify;
            let json = match file {
                Some(path) => std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?,
                None => read_stdin()?,
            };
            cmd_verify(&cfg, &json).map_err(err)
        }
        Cmd::Bench(b) => {
            cfg.command = Command::Bench;
            cfg.seed = b.seed;
            cfg.timing = !b.no_timing;
            cfg.corpus = CorpusParams {
                count: b.count,
                min_nvars: b.min_nvars,
                max_nvars: b.max_nvars,
                min_degree: b.min_degree,
                max_degree: b.max_degree,
                max_terms: b.max_terms,
                max_exponent: b.max_exponent,
                coeff_max: b.coeff_max,
            };
            cfg.bench_algorithms = b
                .algos
                .iter()
                .map(|s| s.parse::<Algorithm>())
                .collect::<Result<_, _>>()
                .map_err(err)?;
            cmd_bench(&cfg).map_err(err)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(out) => {
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &out.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
