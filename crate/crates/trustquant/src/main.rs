//! Thin CLI over the pipeline: train, predict, audit, run-all.
//!
//! Exit codes: 0 success, 1 validation/config error, 2 i/o error. All
//! configuration is explicit flags; no environment variables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use trustquant::dataset::{BalanceMode, SplitSpec};
use trustquant::density::{DensityConfig, GroupBy};
use trustquant::model::TrainConfig;
use trustquant::pipeline::{
    run_all, run_audit, run_predict, run_train, AuditOptions, RunAllOptions, TrainOptions,
};
use trustquant::trust::TrustConfig;

#[derive(Parser)]
#[command(name = "trustquant", version, about = "Trust quantification for credit-default models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train the credit-default MLP and persist it as JSON.
    Train {
        /// Client records CSV in the documented column schema.
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        model_out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        epochs: usize,
        #[arg(long, default_value_t = 1e-3)]
        lr: f64,
        #[arg(long, default_value_t = 0.96)]
        decay: f64,
        #[arg(long, default_value_t = 32)]
        batch_size: usize,
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
        /// Class balancing before the split: undersample or none.
        #[arg(long, default_value = "undersample")]
        balance: String,
    },
    /// Run a persisted model over a records CSV, writing a predictions CSV.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the trust report (and densities) from a predictions CSV.
    Audit {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        report_out: PathBuf,
        /// Directory for per-scenario density TSVs; omitted = no densities.
        #[arg(long)]
        density_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 1000)]
        grid_points: usize,
        /// Scenario grouping for densities: predicted or oracle.
        #[arg(long, default_value = "predicted")]
        group_by: String,
    },
    /// Chain train, predict, and audit under one seed.
    RunAll {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a seeded synthetic records CSV in the documented schema.
    GenData {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 30_000)]
        records: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> trustquant::Result<()> {
    match cli.command {
        Command::Train {
            data,
            model_out,
            seed,
            epochs,
            lr,
            decay,
            batch_size,
            train_fraction,
            balance,
        } => {
            let balance_mode = match balance.as_str() {
                "undersample" => BalanceMode::Undersample,
                "none" => BalanceMode::None,
                other => {
                    return Err(trustquant::Error::Validation(format!(
                        "unknown balance mode `{other}`"
                    )))
                }
            };
            let opts = TrainOptions {
                data,
                model_out,
                train: TrainConfig {
                    epochs,
                    lr0: lr,
                    decay,
                    batch_size,
                    seed,
                    ..TrainConfig::default()
                },
                split: SplitSpec { train_fraction, seed, balance_mode },
            };
            let outcome = run_train(&opts)?;
            for e in &outcome.history {
                println!(
                    "epoch {:>3}  lr {:.6e}  loss {:.6}  accuracy {:.4}",
                    e.epoch, e.learning_rate, e.loss, e.accuracy
                );
            }
            println!(
                "trained on {} records ({} raw, {} balanced), model written to {}",
                outcome.counts.train.unwrap_or(0),
                outcome.counts.raw.unwrap_or(0),
                outcome.counts.balanced.unwrap_or(0),
                opts.model_out.display()
            );
            Ok(())
        }
        Command::Predict { model, data, out } => {
            let n = run_predict(&model, &data, &out)?;
            println!("wrote {n} predictions to {}", out.display());
            Ok(())
        }
        Command::Audit {
            predictions,
            report_out,
            density_dir,
            alpha,
            beta,
            gamma,
            grid_points,
            group_by,
        } => {
            let opts = AuditOptions {
                predictions,
                report_out,
                density_dir,
                trust: TrustConfig { alpha, beta },
                density: DensityConfig {
                    gamma,
                    grid_points,
                    group_by: group_by.parse::<GroupBy>()?,
                },
            };
            let outcome = run_audit(&opts)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "accuracy {:.6}  net_trust_score {:.6}",
                outcome.report.accuracy, outcome.report.net_trust_score
            );
            println!("report written to {}", opts.report_out.display());
            Ok(())
        }
        Command::RunAll { data, out_dir, seed } => {
            let opts = RunAllOptions::with_defaults(data, out_dir.clone(), seed);
            let outcome = run_all(&opts)?;
            for e in &outcome.history {
                println!(
                    "epoch {:>3}  lr {:.6e}  loss {:.6}  accuracy {:.4}",
                    e.epoch, e.learning_rate, e.loss, e.accuracy
                );
            }
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "accuracy {:.6}  net_trust_score {:.6}  t_correct {:?}  t_incorrect {:?}",
                outcome.report.accuracy,
                outcome.report.net_trust_score,
                outcome.report.conditional_trust.correct,
                outcome.report.conditional_trust.incorrect
            );
            println!("artifacts written to {}", out_dir.display());
            Ok(())
        }
        Command::GenData { out, records, seed } => {
            let cfg = trustquant::synth::SynthConfig {
                n_records: records,
                seed,
                ..trustquant::synth::SynthConfig::default()
            };
            let generated = trustquant::synth::generate_records(&cfg);
            trustquant::dataset::save_records(&generated, &out)?;
            println!("wrote {} records to {}", generated.len(), out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
