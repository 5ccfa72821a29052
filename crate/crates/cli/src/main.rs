use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use khroma_core::arith::{json_int, BigradedSeries};
use khroma_core::chromatic::{chromatic_homology, koszul_chromatic, SignRule};
use khroma_core::dichromatic::dichromatic_homology;
use khroma_core::poly::{chromatic, dichromatic};
use khroma_core::verify::{run_all, VerifyOptions};
use khroma_core::{parse_graph, Error, Graph};

#[derive(Parser)]
#[command(
    name = "khroma",
    version,
    about = "Chromatic and dichromatic graph homology"
)]
struct Cli {
    /// Worker threads (defaults to the number of processors).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the chromatic or dichromatic polynomial.
    Poly {
        kind: Kind,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print χ_G(1/(1-q)) or D_G(t,q) up to q^D.
    Series {
        kind: Kind,
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_q: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print homology dimensions up to q^D.
    Homology {
        kind: Kind,
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_q: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Chromatic only: build the complex from rightmost Koszul cohomology.
        #[arg(long)]
        koszul: bool,
    },
    /// Run every consistency check and report PASS/FAIL per check.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flip the sign of one face of the cube.
        #[arg(long, hide = true)]
        inject_sign_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Chromatic,
    Dichromatic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

enum Failure {
    Input(String),
    Budget(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::BudgetExceeded { .. } => Failure::Budget(err.to_string()),
            Error::Parse { .. } | Error::InvalidEdge { .. } | Error::EndpointOutOfRange { .. } => {
                Failure::Input(err.to_string())
            }
            _ => Failure::Verification(err.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {}", path.display(), e)))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("json serializes"));
}

fn render_series(series: &BigradedSeries) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>4} |", "a");
    for d in 0..=series.max_q() {
        let _ = write!(out, " {:>6}", format!("d={}", d));
    }
    out.push('\n');
    for a in 0..=series.support_a() {
        let _ = write!(out, "{:>4} |", a);
        for d in 0..=series.max_q() {
            let _ = write!(out, " {:>6}", series.coeff(a, d));
        }
        out.push('\n');
    }
    out
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Poly { kind, file, format } => {
            let g = load(&file)?;
            match (kind, format) {
                (Kind::Chromatic, Format::Table) => println!("{}", chromatic(&g, 0)?.classical),
                (Kind::Chromatic, Format::Json) => {
                    let p = chromatic(&g, 0)?.classical;
                    let coeffs: Vec<_> = p.coeffs().iter().map(json_int).collect();
                    print_json(&json!({ "polynomial": p.to_string(), "coefficients": coeffs }));
                }
                (Kind::Dichromatic, Format::Table) => println!("{}", dichromatic(&g, 0)?.poly),
                (Kind::Dichromatic, Format::Json) => {
                    let p = dichromatic(&g, 0)?.poly;
                    let terms: Vec<_> = p
                        .terms()
                        .map(|((q, v), c)| json!({ "q": q, "v": v, "c": json_int(c) }))
                        .collect();
                    print_json(&json!({ "polynomial": p.to_string(), "terms": terms }));
                }
            }
        }
        Command::Series {
            kind,
            file,
            max_q,
            format,
        } => {
            let g = load(&file)?;
            let series = match kind {
                Kind::Chromatic => chromatic(&g, max_q)?.series,
                Kind::Dichromatic => dichromatic(&g, max_q)?.dseries,
            };
            match format {
                Format::Table => print!("{}", render_series(&series)),
                Format::Json => {
                    print_json(&serde_json::to_value(&series).expect("series serializes"))
                }
            }
        }
        Command::Homology {
            kind,
            file,
            max_q,
            format,
            koszul,
        } => {
            let g = load(&file)?;
            let (text, value) = match kind {
                Kind::Chromatic => {
                    let table = if koszul {
                        koszul_chromatic(&g, max_q)?
                    } else {
                        chromatic_homology(&g, max_q)?
                    };
                    (table.render(), table.to_json())
                }
                Kind::Dichromatic => {
                    let table = dichromatic_homology(&g, max_q)?;
                    (table.render(), table.to_json())
                }
            };
            match format {
                Format::Table => print!("{}", text),
                Format::Json => print_json(&value),
            }
        }
        Command::Verify {
            file,
            max_q,
            seed,
            inject_sign_fault,
        } => {
            let g = load(&file)?;
            let signs = if inject_sign_fault {
                SignRule::FlipFirstSquare
            } else {
                SignRule::Standard
            };
            let outcomes = run_all(&g, &VerifyOptions { max_q, seed, signs })?;
            for outcome in &outcomes {
                println!("{}", outcome);
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(Failure::Verification(format!(
                    "{} of {} checks failed",
                    failed,
                    outcomes.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
