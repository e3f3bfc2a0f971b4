//! Assembly and serialization of the full trust/fairness report.
//!
//! The JSON layout (key order) is fixed by the struct definitions below, and
//! serialization is deterministic: the same report always produces identical
//! bytes. Undefined coefficients serialize as `null`, never as 0.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::BalanceMode;
use crate::density::{DensityConfig, GroupBy};
use crate::error::{Error, Result};
use crate::trust::{
    self, ConditionalTrust, DemographicAxis, DemographicSpectrum, ScoredPrediction,
    SpectrumEntry, TrustConfig, TrustMatrix,
};

/// Difference between two spectrum coefficients, in absolute units and as a
/// percentage of the larger one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustGap {
    pub group_a: String,
    pub group_b: String,
    pub absolute: f64,
    pub pct_of_larger: f64,
}

/// Gaps along one demographic axis: the max-min spread plus every pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisGaps {
    pub max_min_absolute: f64,
    pub max_min_pct_of_larger: f64,
    pub pairwise: Vec<TrustGap>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemographicSpectra {
    pub gender: DemographicSpectrum,
    pub education: DemographicSpectrum,
    pub age: DemographicSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gaps {
    pub gender: AxisGaps,
    pub education: AxisGaps,
    pub age: AxisGaps,
}

/// Effective configuration echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub grid_points: usize,
    pub group_by: GroupBy,
    pub seed: Option<u64>,
    pub train_fraction: Option<f64>,
    pub balance_mode: Option<BalanceMode>,
}

impl ReportConfig {
    pub fn audit_only(trust: &TrustConfig, density: &DensityConfig) -> ReportConfig {
        ReportConfig {
            alpha: trust.alpha,
            beta: trust.beta,
            gamma: density.gamma,
            grid_points: density.grid_points,
            group_by: density.group_by,
            seed: None,
            train_fraction: None,
            balance_mode: None,
        }
    }
}

/// Record counts at each pipeline stage. Audit-only runs know just the
/// prediction count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetCounts {
    pub raw: Option<usize>,
    pub balanced: Option<usize>,
    pub train: Option<usize>,
    pub test: Option<usize>,
    pub predictions: usize,
}

impl DatasetCounts {
    pub fn predictions_only(n: usize) -> DatasetCounts {
        DatasetCounts { raw: None, balanced: None, train: None, test: None, predictions: n }
    }
}

/// Every scalar and tabular trust metric for one prediction set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustReport {
    pub accuracy: f64,
    pub net_trust_score: f64,
    pub conditional_trust: ConditionalTrustFields,
    pub trust_matrix: TrustMatrix,
    pub trust_spectrum: Vec<SpectrumEntry>,
    pub demographic_spectra: DemographicSpectra,
    pub gaps: Gaps,
    pub config: ReportConfig,
    pub counts: DatasetCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTrustFields {
    pub correct: Option<f64>,
    pub incorrect: Option<f64>,
}

fn axis_gaps(spectrum: &DemographicSpectrum) -> AxisGaps {
    let mut pairwise = Vec::new();
    for i in 0..spectrum.entries.len() {
        for j in (i + 1)..spectrum.entries.len() {
            let (a, b) = (&spectrum.entries[i], &spectrum.entries[j]);
            let absolute = (a.trust - b.trust).abs();
            let larger = a.trust.max(b.trust);
            pairwise.push(TrustGap {
                group_a: a.key.clone(),
                group_b: b.key.clone(),
                absolute,
                pct_of_larger: if larger > 0.0 { 100.0 * absolute / larger } else { 0.0 },
            });
        }
    }
    let lo = spectrum.entries.iter().map(|e| e.trust).fold(f64::INFINITY, f64::min);
    let hi = spectrum.entries.iter().map(|e| e.trust).fold(f64::NEG_INFINITY, f64::max);
    let (max_min_absolute, max_min_pct) = if spectrum.entries.is_empty() {
        (0.0, 0.0)
    } else {
        let absolute = hi - lo;
        (absolute, if hi > 0.0 { 100.0 * absolute / hi } else { 0.0 })
    };
    AxisGaps { max_min_absolute, max_min_pct_of_larger: max_min_pct, pairwise }
}

/// Compute every trust metric over the scored set and assemble the report.
pub fn build_report(
    scored: &[ScoredPrediction],
    config: ReportConfig,
    counts: DatasetCounts,
) -> Result<TrustReport> {
    if scored.is_empty() {
        return Err(Error::Validation("cannot build a report from zero predictions".to_string()));
    }
    let net = trust::net_trust_score(scored)?;
    let ConditionalTrust { correct, incorrect, accuracy } =
        trust::conditional_net_trust_scores(scored)?;
    let gender = trust::demographic_trust_spectrum(scored, DemographicAxis::Gender);
    let education = trust::demographic_trust_spectrum(scored, DemographicAxis::Education);
    let age = trust::demographic_trust_spectrum(scored, DemographicAxis::Age);

    Ok(TrustReport {
        accuracy,
        net_trust_score: net,
        conditional_trust: ConditionalTrustFields { correct, incorrect },
        trust_matrix: trust::trust_matrix(scored),
        trust_spectrum: trust::trust_spectrum(scored),
        gaps: Gaps {
            gender: axis_gaps(&gender),
            education: axis_gaps(&education),
            age: axis_gaps(&age),
        },
        demographic_spectra: DemographicSpectra { gender, education, age },
        config,
        counts,
    })
}

pub fn write_report(report: &TrustReport, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<TrustReport> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("report file {}: {e}", path.display())))
}
