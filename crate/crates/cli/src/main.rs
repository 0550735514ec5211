//! `colorsos` command line.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use colorsos::config::Budget;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "colorsos", version, about = "Pseudo-expectations for independent set and colouring on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample G(n, p) and write an edge list.
    GenGraph(commands::GenGraphArgs),
    /// Build a pseudo-expectation table for a graph.
    BuildPe(commands::BuildPeArgs),
    /// Covering certificate and moment-matrix PSD check for a table.
    CertifyPe(commands::CertifyArgs),
    /// Independent-set table to colouring table, with every constraint check.
    Reduce(commands::ReduceArgs),
    /// Exact k-colourability search.
    CheckColoring(commands::CheckColoringArgs),
    /// Few-colour refutation check and the power-chain audit.
    Refute(commands::RefuteArgs),
    /// Moments of character sums over shape families.
    ExperimentChiconc(commands::ChiconcArgs),
    /// Concentration of calibrated singleton values.
    ExperimentXi(commands::XiArgs),
    /// Pass rates of the calibrated pipeline against a distribution control.
    Survey(commands::SurveyArgs),
}

/// Resource limits; unset flags keep the library defaults.
#[derive(Args, Debug, Clone, Serialize)]
pub struct BudgetArgs {
    #[arg(long)]
    exact_limit: Option<usize>,
    #[arg(long)]
    indicator_limit: Option<usize>,
    #[arg(long)]
    calib_max_n: Option<usize>,
    #[arg(long)]
    calib_max_tau: Option<usize>,
    #[arg(long)]
    calib_max_d: Option<usize>,
    #[arg(long)]
    calib_max_work: Option<u64>,
    #[arg(long)]
    max_matrix_dim: Option<usize>,
    #[arg(long)]
    explicit_dim_limit: Option<usize>,
    #[arg(long)]
    symmetric_above: Option<usize>,
    #[arg(long)]
    max_enumeration: Option<u64>,
}

impl BudgetArgs {
    pub fn resolve(&self) -> Budget {
        let mut b = Budget::default();
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { b.$f = v; })* };
        }
        take!(
            exact_limit,
            indicator_limit,
            calib_max_n,
            calib_max_tau,
            calib_max_d,
            calib_max_work,
            max_matrix_dim,
            explicit_dim_limit,
            symmetric_above,
            max_enumeration
        );
        b
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::GenGraph(a) => commands::gen_graph(a),
        Command::BuildPe(a) => commands::build_pe(a),
        Command::CertifyPe(a) => commands::certify_pe(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::CheckColoring(a) => commands::check_coloring(a),
        Command::Refute(a) => commands::refute(a),
        Command::ExperimentChiconc(a) => commands::chiconc(a),
        Command::ExperimentXi(a) => commands::xi(a),
        Command::Survey(a) => commands::survey(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
