//! `gwa`: exact computations and verification suites for generalized Weyl algebras.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gwa", version, about = "Generalized Weyl algebras: products, complexes, deformations, H_0")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON algebra config: {"lambda": "2", "eta": "0", "phi": ["-1", "1"], "label": "..."}
    #[arg(long, global = true, env = "GWA_CONFIG")]
    pub config: Option<PathBuf>,
    /// λ, used when no config file is given
    #[arg(long, global = true, env = "GWA_LAMBDA", allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// η, used when no config file is given
    #[arg(long, global = true, env = "GWA_ETA", allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Coefficients of φ from the constant term up, comma separated
    #[arg(long, global = true, env = "GWA_PHI", allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Print the machine-readable JSON report
    #[arg(long, global = true, env = "GWA_JSON")]
    pub json: bool,
    #[arg(long, global = true, env = "GWA_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Filtration window for sweeps (command-specific default)
    #[arg(long, global = true, env = "GWA_WINDOW")]
    pub window: Option<usize>,
    /// Truncation order of star products, 1..=8
    #[arg(long, global = true, env = "GWA_ORDER", default_value_t = 4)]
    pub order: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Defining relations, associativity, and the homotopy double complex
    CheckAlgebra,
    /// Product of two elements, e.g. `gwa mul "z*x" "y"`
    Mul { u: String, v: String },
    /// τ-expansion of u*v up to the truncation order
    Star { u: String, v: String },
    /// Cochains of the periodic complex
    Cohomology {
        #[command(subcommand)]
        op: CohomologyOp,
    },
    /// H_0(A, A^ν): predicted basis against windowed commutator spans
    H0,
    /// Star-product checks: relations, obstructions, associativity, Γ-preservation, F_1 evidence
    DeformVerify {
        /// Random triples for the associativity check
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Skip recomputing the second-order data from the obstruction cocycle
        #[arg(long)]
        no_discovery: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Payload {
    /// Cochain as JSON {"degree": n, "module": "A", "components": ["z*x", ...]}, or @path
    #[arg(long)]
    pub cochain: Option<String>,
    /// Coefficient module
    #[arg(long, value_enum, default_value_t = ModuleArg::A)]
    pub module: ModuleArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleArg {
    #[value(name = "A")]
    A,
    #[value(name = "A^nu", alias = "nu")]
    ANu,
}

#[derive(Subcommand, Debug)]
pub enum CohomologyOp {
    /// The degree-2 cocycle f(m)
    F {
        element: String,
        #[arg(long, value_enum, default_value_t = ModuleArg::A)]
        module: ModuleArg,
    },
    /// g(c) for a degree-2 cocycle c (generated from the seed if omitted)
    G(Payload),
    /// A degree-2 preimage of a degree-3 cocycle (generated from the seed if omitted)
    Contract3(Payload),
    /// c = ∂¹(u) + f(n2) for a degree-2 cocycle (generated from the seed if omitted)
    Split2(Payload),
    /// The differential of a cochain (generated from the seed if omitted)
    Diff {
        #[command(flatten)]
        payload: Payload,
        /// Degree of the generated cochain
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut report) => {
            report.timing.total_ms = start.elapsed().as_millis();
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
