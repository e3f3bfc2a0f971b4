//! End-to-end orchestration shared by the CLI and the examples: train,
//! predict, audit, and the chained run-all with its output manifest.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dataset::{self, BalanceMode, SplitSpec};
use crate::density::{self, DensityConfig};
use crate::error::{Error, Result};
use crate::model::{self, EpochStats, TrainConfig};
use crate::predictions::{self, PredictionRecord};
use crate::report::{self, DatasetCounts, ReportConfig, TrustReport};
use crate::trust::{self, TrustConfig};

#[derive(Debug, Clone)]
pub struct TrainOptions {
    pub data: PathBuf,
    pub model_out: PathBuf,
    pub train: TrainConfig,
    pub split: SplitSpec,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub history: Vec<EpochStats>,
    pub counts: DatasetCounts,
}

/// Load, balance, split, standardize, train, and persist the model.
pub fn run_train(opts: &TrainOptions) -> Result<TrainOutcome> {
    opts.train.validate()?;
    opts.split.validate()?;

    let raw = dataset::load_records(&opts.data)?;
    let balanced = match opts.split.balance_mode {
        BalanceMode::Undersample => dataset::balance(&raw, opts.split.seed)?,
        BalanceMode::None => raw.clone(),
    };
    let (train_split, test_split) = dataset::split(&balanced, &opts.split)?;
    let (train_features, _, params) = dataset::standardize(&train_split, &test_split)?;
    let labels: Vec<u8> = train_split.iter().map(|r| r.label).collect();

    let (model, history) = model::train(&train_features, &labels, &opts.train)?;
    model::save_model(&model, &params, &opts.train, &opts.model_out)?;

    Ok(TrainOutcome {
        history,
        counts: DatasetCounts {
            raw: Some(raw.len()),
            balanced: Some(balanced.len()),
            train: Some(train_split.len()),
            test: Some(test_split.len()),
            predictions: test_split.len(),
        },
    })
}

/// Predict every record in `data` with a persisted model; write the
/// predictions CSV. Returns the number of rows written.
pub fn run_predict(model_path: &Path, data_path: &Path, out_path: &Path) -> Result<usize> {
    let (model, params, _) = model::load_model(model_path)?;
    if model.input_dim() != dataset::NUM_FEATURES {
        return Err(Error::Validation(format!(
            "model expects {} features but the ingestion schema provides {}",
            model.input_dim(),
            dataset::NUM_FEATURES
        )));
    }
    let records = dataset::load_records(data_path)?;
    let preds: Vec<PredictionRecord> = records
        .iter()
        .map(|r| model::predict(&model, r, &params))
        .collect::<Result<_>>()?;
    predictions::write_predictions_csv(&preds, out_path)?;
    Ok(preds.len())
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub predictions: PathBuf,
    pub report_out: PathBuf,
    /// Where to write per-scenario density TSVs; `None` skips densities.
    pub density_dir: Option<PathBuf>,
    pub trust: TrustConfig,
    pub density: DensityConfig,
}

#[derive(Debug, Clone)]
pub struct AuditOutcome {
    pub report: TrustReport,
    pub density_files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

/// Score a predictions CSV and emit the report plus per-scenario densities.
pub fn run_audit(opts: &AuditOptions) -> Result<AuditOutcome> {
    opts.trust.validate()?;
    opts.density.validate()?;
    let preds = predictions::read_predictions_csv(&opts.predictions)?;
    if preds.is_empty() {
        return Err(Error::Validation(format!(
            "{} contains no predictions",
            opts.predictions.display()
        )));
    }
    let config = ReportConfig::audit_only(&opts.trust, &opts.density);
    let counts = DatasetCounts::predictions_only(preds.len());
    audit_predictions(&preds, config, counts, &opts.report_out, opts.density_dir.as_deref(), &opts.trust, &opts.density)
}

fn audit_predictions(
    preds: &[PredictionRecord],
    config: ReportConfig,
    counts: DatasetCounts,
    report_out: &Path,
    density_dir: Option<&Path>,
    trust_cfg: &TrustConfig,
    density_cfg: &DensityConfig,
) -> Result<AuditOutcome> {
    let scored = trust::score_all(preds, trust_cfg)?;
    let report = report::build_report(&scored, config, counts)?;
    if let Some(parent) = report_out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    report::write_report(&report, report_out)?;

    let mut density_files = Vec::new();
    let mut warnings = Vec::new();
    if let Some(dir) = density_dir {
        std::fs::create_dir_all(dir)?;
        for scenario in [0u8, 1u8] {
            let name = trust::scenario_name(scenario);
            match density::scenario_densities(&scored, scenario, density_cfg) {
                Ok(curve) => {
                    let path = dir.join(format!("{name}.tsv"));
                    density::write_density_tsv(&curve, &path)?;
                    density_files.push(path);
                }
                Err(_) => warnings.push(format!(
                    "scenario `{name}` has no records; density skipped"
                )),
            }
        }
    }
    Ok(AuditOutcome { report, density_files, warnings })
}

#[derive(Debug, Clone)]
pub struct RunAllOptions {
    pub data: PathBuf,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub train: TrainConfig,
    pub split: SplitSpec,
    pub trust: TrustConfig,
    pub density: DensityConfig,
}

impl RunAllOptions {
    /// Default hyperparameters with one seed driving every stage.
    pub fn with_defaults(data: PathBuf, out_dir: PathBuf, seed: u64) -> RunAllOptions {
        RunAllOptions {
            data,
            out_dir,
            seed,
            train: TrainConfig { seed, ..TrainConfig::default() },
            split: SplitSpec { seed, ..SplitSpec::default() },
            trust: TrustConfig::default(),
            density: DensityConfig::default(),
        }
    }
}

/// Relative paths of everything a `run-all` produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub model: String,
    pub predictions: String,
    pub report: String,
    pub densities: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunAllOutcome {
    pub report: TrustReport,
    pub history: Vec<EpochStats>,
    pub manifest: Manifest,
    pub warnings: Vec<String>,
}

/// Chain train -> predict -> audit under one seed, writing a manifest of the
/// produced files into the output directory.
pub fn run_all(opts: &RunAllOptions) -> Result<RunAllOutcome> {
    std::fs::create_dir_all(&opts.out_dir)?;
    let model_path = opts.out_dir.join("model.json");
    let predictions_path = opts.out_dir.join("predictions.csv");
    let report_path = opts.out_dir.join("report.json");
    let density_dir = opts.out_dir.join("densities");

    // train
    let train_outcome = run_train(&TrainOptions {
        data: opts.data.clone(),
        model_out: model_path.clone(),
        train: opts.train.clone(),
        split: opts.split,
    })?;

    // predict the held-out split (re-derived; the split is seed-deterministic)
    let raw = dataset::load_records(&opts.data)?;
    let balanced = match opts.split.balance_mode {
        BalanceMode::Undersample => dataset::balance(&raw, opts.split.seed)?,
        BalanceMode::None => raw.clone(),
    };
    let (_, test_split) = dataset::split(&balanced, &opts.split)?;
    let (model, params, _) = model::load_model(&model_path)?;
    let preds: Vec<PredictionRecord> = test_split
        .iter()
        .map(|r| model::predict(&model, r, &params))
        .collect::<Result<_>>()?;
    predictions::write_predictions_csv(&preds, &predictions_path)?;

    // audit from the file just written, exactly like a standalone audit
    let file_preds = predictions::read_predictions_csv(&predictions_path)?;
    let config = ReportConfig {
        alpha: opts.trust.alpha,
        beta: opts.trust.beta,
        gamma: opts.density.gamma,
        grid_points: opts.density.grid_points,
        group_by: opts.density.group_by,
        seed: Some(opts.seed),
        train_fraction: Some(opts.split.train_fraction),
        balance_mode: Some(opts.split.balance_mode),
    };
    let counts = DatasetCounts { predictions: file_preds.len(), ..train_outcome.counts };
    let audit = audit_predictions(
        &file_preds,
        config,
        counts,
        &report_path,
        Some(&density_dir),
        &opts.trust,
        &opts.density,
    )?;

    let rel = |p: &Path| -> String {
        p.strip_prefix(&opts.out_dir).unwrap_or(p).to_string_lossy().into_owned()
    };
    let manifest = Manifest {
        model: rel(&model_path),
        predictions: rel(&predictions_path),
        report: rel(&report_path),
        densities: audit.density_files.iter().map(|p| rel(p)).collect(),
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(opts.out_dir.join("manifest.json"), manifest_json + "\n")?;

    Ok(RunAllOutcome {
        report: audit.report,
        history: train_outcome.history,
        manifest,
        warnings: audit.warnings,
    })
}
