use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use omega_trace::groebner::DEFAULT_MAX_STEPS;
use omega_trace_cli::commands::{self, render_text, Options};

#[derive(Parser)]
#[command(name = "omegatrace", version, about = "Trace ideals of exterior powers of Kähler differentials")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Bound on reduction steps per Gröbner computation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
}

#[derive(Subcommand)]
enum Command {
    /// tr(Ω^K) of a ring.
    Trace {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        power: usize,
    },
    /// Dimension, all traces, nearly-regularity, regularity and p.rk.
    Classify {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Singular locus from the top trace and from the Jacobian.
    Singular {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        cross_check: bool,
    },
    /// Polynomial rank with a slice witness.
    Prank {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Tensor product over ℚ.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        verify_formula: bool,
    },
    /// Fiber product over ℚ.
    Fiber {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        verify_formula: bool,
    },
    /// Stanley–Reisner ring of a complex given as "1 2; 3 4".
    Sr {
        #[arg(long)]
        facets: String,
        #[arg(long)]
        verify_algebraic: bool,
    },
    /// Veronese subring of a polynomial ring.
    Veronese {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Order::Grevlex = cli.order;
    let opts = Options { max_steps: cli.max_steps };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Trace { ring, power } => commands::trace(ring, *power, opts),
        Command::Classify { ring } => commands::classify(ring, opts),
        Command::Singular { ring, cross_check } => commands::singular(ring, *cross_check, opts),
        Command::Prank { ring } => commands::prank(ring, opts),
        Command::Tensor { a, b, verify_formula } => commands::tensor(a, b, *verify_formula, opts),
        Command::Fiber { a, b, verify_formula } => commands::fiber(a, b, *verify_formula, opts),
        Command::Sr { facets, verify_algebraic } => commands::sr(facets, *verify_algebraic, opts),
        Command::Veronese { ring, degree } => commands::veronese(ring, *degree, opts),
    };
    match result {
        Ok(mut report) => {
            if cli.timing {
                report["elapsed_ms"] = serde_json::json!(start.elapsed().as_millis() as u64);
            }
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
            } else {
                render_text(&report)
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
