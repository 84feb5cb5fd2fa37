use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cli;

use cli::report::Exit;

#[derive(Parser, Debug)]
#[command(name = "mixfp", version, about = "Mixed frame potential toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a frame-pair document.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Evaluate the potential directly and as a trace.
    Potential {
        input: PathBuf,
        /// Allowed relative gap between the two forms.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Critical-pair test, spectral bounds and scaled-identity test.
    Check {
        input: PathBuf,
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Tolerance for classifying eigenvalues as real or imaginary.
        #[arg(long, default_value_t = 1e-8)]
        class_tol: f64,
    },
    /// Eigenvalue groups and the decomposition of a critical pair.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        cluster_tol: f64,
    },
    /// Dual-pair conditions of a pair, or the Σα = d arithmetic alone.
    Corollary {
        #[arg(required_unless_present = "alpha_only", conflicts_with = "alpha_only")]
        input: Option<PathBuf>,
        #[command(flatten)]
        alpha: AlphaArg,
        /// Comma-separated α; needs --d and --N.
        #[arg(long, value_name = "ALPHA", requires_all = ["d", "n"])]
        alpha_only: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "N", id = "n")]
        n: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Search the constraint set for critical pairs.
    Optimize(OptimizeArgs),
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// One of FX-ONB2, FX-SCALE, FX-D1, FX-MB, FX-IMAG, FX-MIX.
    Fixture {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Standard normal entries, optionally retracted onto --alpha.
    Random {
        #[arg(long)]
        field: String,
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct AlphaArg {
    /// Comma-separated α (entries like 1, -0.5, 1+2i); overrides the document.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Critical,
    Potential,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Real,
    Imag,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    field: String,
    #[arg(long)]
    d: usize,
    /// JSON optimizer configuration; flags given explicitly override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    objective: Option<ObjectiveArg>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    merit_tol: Option<f64>,
    #[arg(long)]
    divergence_bound: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Attach critical-pair and decomposition checks of the result.
    #[arg(long)]
    verify: bool,
    /// Tolerance of the attached checks.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    cluster_tol: f64,
    /// Path for the final pair document.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let exit = match args.command {
        Command::Gen { kind } => match kind {
            GenKind::Fixture { name, output } => cli::gen_fixture(&name, output.as_deref()),
            GenKind::Random {
                field,
                d,
                n,
                seed,
                alpha,
                output,
            } => cli::gen_random(&field, d, n, seed, alpha.as_deref(), output.as_deref()),
        },
        Command::Potential { input, tol } => cli::potential(&input, tol),
        Command::Check {
            input,
            alpha,
            tol,
            class_tol,
        } => cli::check(&input, alpha.alpha.as_deref(), tol, class_tol),
        Command::Decompose {
            input,
            alpha,
            tol,
            cluster_tol,
        } => cli::decompose(&input, alpha.alpha.as_deref(), tol, cluster_tol),
        Command::Corollary {
            input,
            alpha,
            alpha_only,
            d,
            n,
            tol,
        } => match (input, alpha_only) {
            (_, Some(a)) => cli::corollary_alpha_only(&a, d.unwrap_or(0), n.unwrap_or(0), tol),
            (Some(input), None) => cli::corollary(&input, alpha.alpha.as_deref(), tol),
            (None, None) => Exit::Invalid,
        },
        Command::Optimize(o) => cli::optimize(cli::OptimizeRequest {
            alpha: o.alpha,
            field: o.field,
            d: o.d,
            config: o.config,
            mode: o.mode.map(|m| match m {
                ModeArg::Critical => mixed_frame::optimizer::Mode::CriticalSearch,
                ModeArg::Potential => mixed_frame::optimizer::Mode::PotentialDescent,
            }),
            objective: o.objective.map(|m| match m {
                ObjectiveArg::Real => mixed_frame::optimizer::Objective::RealPart,
                ObjectiveArg::Imag => mixed_frame::optimizer::Objective::ImagPart,
            }),
            step: o.step,
            max_iters: o.max_iters,
            grad_tol: o.grad_tol,
            merit_tol: o.merit_tol,
            divergence_bound: o.divergence_bound,
            seed: o.seed,
            restarts: o.restarts,
            verify: o.verify,
            tol: o.tol,
            cluster_tol: o.cluster_tol,
            output: o.output,
        }),
    };
    ExitCode::from(exit as u8)
}
