//! `mvsc` — experiment runner for joint multi-view subspace clustering.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
//! failure.

mod args;
mod config;
mod experiment;
mod presets;

use clap::error::ErrorKind;
use clap::Parser;

use mvsc_core::dataset;
use mvsc_core::metrics::MetricsReport;
use mvsc_core::Result;

use args::{Cli, Command, EvalArgs, SynthArgs};
use experiment::error_exit_code;

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let outcome = match cli.command {
        Command::Run(run_args) => {
            config::resolve(&run_args).and_then(|cfg| experiment::execute_run(&cfg))
        }
        Command::Grid(grid_args) => config::resolve_grid(&grid_args)
            .and_then(|(cfg, grid)| experiment::execute_grid(&cfg, &grid)),
        Command::Synth(synth_args) => synth(&synth_args),
        Command::Eval(eval_args) => eval(&eval_args),
    };

    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(error_exit_code(&e));
        }
    }
}

fn synth(args: &SynthArgs) -> Result<i32> {
    let spec = dataset::SynthSpec {
        k: args.k,
        per_cluster: args.per_cluster,
        ambient_dims: config::parse_list(&args.dims, "ambient dims")?,
        subspace_dim: args.subspace_dim,
        noise_sigma: args.noise,
        seed: args.seed,
    };
    let ds = dataset::synthesize(&spec)?;
    let manifest = dataset::save(&ds, &args.out)?;
    println!("{}", manifest.display());
    Ok(0)
}

fn eval(args: &EvalArgs) -> Result<i32> {
    let pred = dataset::read_labels_csv(&args.pred)?;
    let truth = dataset::read_labels_csv(&args.truth)?;
    let report = MetricsReport::compute(&pred, &truth)?;
    println!("{}", MetricsReport::csv_header());
    println!("{}", report.to_csv_row());
    Ok(0)
}
