use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use momentary::spacetime::BoundaryCondition;
use momentary_cli::{
    cmd_dca, cmd_demos, cmd_fractional_mae, cmd_spacetime_norms, cmd_spacetime_singvals,
    cmd_tau_bounds, Ell, RunConfig, Table,
};

#[derive(Parser)]
#[command(name = "momentary", version, about = "Spectral tables of structured matrices as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-norm of the scaled space-time matrix with its τ bounds.
    SpacetimeNorms(Params),
    /// Exact space-time singular values next to the symbol samplings.
    SpacetimeSingvals(Params),
    /// Distributed-order eigenvalues against GLT, momentary and MAE approximations.
    FractionalMae(Params),
    /// τ-algebra grid, sampled and dense eigenvalues.
    TauBounds(Params),
    /// Diffusion-convection-reaction spectrum against its symbol samplings.
    DcaAssemble(Params),
    /// Eigenvalues of the shift, perturbed shift and weighted perturbed shift.
    ExampleDemos(Params),
}

#[derive(Clone, Copy, ValueEnum)]
enum Bc {
    Periodic,
    Dirichlet,
}

#[derive(Args)]
struct Params {
    /// Time steps, comma separated.
    #[arg(long, value_delimiter = ',')]
    nt: Option<Vec<usize>>,
    /// Space points.
    #[arg(long)]
    nx: Option<usize>,
    /// Mesh ratios h_x²/h_t, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ch: Option<Vec<f64>>,
    /// Number of orders, or `n` to tie it to the size.
    #[arg(long)]
    ell: Option<Ell>,
    /// Expansion depth.
    #[arg(long)]
    nu: Option<usize>,
    /// Coarsest expansion grid.
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Corner perturbation exponent.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    bc: Option<Bc>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Params {
    fn config(&self, base: RunConfig) -> RunConfig {
        RunConfig {
            nt: self.nt.clone().unwrap_or(base.nt),
            nx: self.nx.unwrap_or(base.nx),
            ch: self.ch.clone().unwrap_or(base.ch),
            ell: self.ell.unwrap_or(base.ell),
            nu: self.nu.unwrap_or(base.nu),
            n1: self.n1.unwrap_or(base.n1),
            n: self.n.unwrap_or(base.n),
            alpha: self.alpha.unwrap_or(base.alpha),
            bc: match self.bc {
                Some(Bc::Periodic) => BoundaryCondition::Periodic,
                Some(Bc::Dirichlet) => BoundaryCondition::Dirichlet,
                None => base.bc,
            },
            a: self.a.unwrap_or(base.a),
            b: self.b.unwrap_or(base.b),
            c: self.c.unwrap_or(base.c),
            eps: self.eps.unwrap_or(base.eps),
            phi: self.phi.unwrap_or(base.phi),
            tol: self.tol.unwrap_or(base.tol),
        }
    }
}

type Report = fn(&RunConfig) -> Result<Table>;

fn run(cli: Cli) -> Result<()> {
    let d = RunConfig::default();
    let (params, report, base): (&Params, Report, RunConfig) = match &cli.command {
        Command::SpacetimeNorms(p) => (p, cmd_spacetime_norms, d),
        Command::SpacetimeSingvals(p) => (
            p,
            cmd_spacetime_singvals,
            RunConfig { nt: vec![10], nx: 10, ch: vec![1.0], ..d },
        ),
        Command::FractionalMae(p) => (p, cmd_fractional_mae, d),
        Command::TauBounds(p) => (p, cmd_tau_bounds, RunConfig { n: 8, ..d }),
        Command::DcaAssemble(p) => (p, cmd_dca, RunConfig { a: 1.0, b: 1.0, c: 1.0, ..d }),
        Command::ExampleDemos(p) => (p, cmd_demos, d),
    };
    let cfg = params.config(base);
    report(&cfg)?.emit(params.out.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
