//! Multi-scale trust metrics over a set of audited predictions.
//!
//! Per-prediction question-answer trust rewards confidence on correct answers
//! (C^alpha) and penalizes confidence on incorrect ones ((1-C)^beta). The
//! aggregate metrics are empirical means of that score conditioned on the
//! oracle/model answer pair, the oracle answer, or a demographic group.
//!
//! All reductions use compensated (Neumaier) summation so results agree to
//! well below 1e-12 regardless of input order or size.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{AgeGroup, Education, Gender};
use crate::error::{Error, Result};
use crate::predictions::PredictionRecord;

/// Reward/penalty relaxation exponents for question-answer trust.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrustConfig {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for TrustConfig {
    fn default() -> Self {
        TrustConfig { alpha: 1.0, beta: 1.0 }
    }
}

impl TrustConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) || !(self.beta >= 0.0) {
            return Err(Error::Validation(format!(
                "alpha and beta must be nonnegative, got {} / {}",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }
}

/// A prediction together with its question-answer trust score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredPrediction {
    pub prediction: PredictionRecord,
    pub qa_trust: f64,
}

impl ScoredPrediction {
    pub fn is_correct(&self) -> bool {
        self.prediction.is_correct()
    }
}

/// Human-readable name for a binary answer scenario.
pub fn scenario_name(label: u8) -> &'static str {
    if label == 1 {
        "payment_default"
    } else {
        "no_default"
    }
}

/// Demographic axis selector for demographic trust spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemographicAxis {
    Gender,
    Education,
    Age,
}

impl DemographicAxis {
    pub const ALL: [DemographicAxis; 3] =
        [DemographicAxis::Gender, DemographicAxis::Education, DemographicAxis::Age];

    /// All group labels on this axis, in fixed report order.
    pub fn groups(&self) -> Vec<String> {
        match self {
            DemographicAxis::Gender => Gender::ALL.iter().map(|g| g.to_string()).collect(),
            DemographicAxis::Education => Education::ALL.iter().map(|e| e.to_string()).collect(),
            DemographicAxis::Age => AgeGroup::ALL.iter().map(|a| a.to_string()).collect(),
        }
    }

    pub fn group_of(&self, p: &PredictionRecord) -> String {
        match self {
            DemographicAxis::Gender => p.demographics.gender.to_string(),
            DemographicAxis::Education => p.demographics.education.to_string(),
            DemographicAxis::Age => p.demographics.age_group.to_string(),
        }
    }
}

impl std::str::FromStr for DemographicAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gender" => Ok(DemographicAxis::Gender),
            "education" => Ok(DemographicAxis::Education),
            "age" => Ok(DemographicAxis::Age),
            other => Err(Error::Validation(format!("unknown demographic axis `{other}`"))),
        }
    }
}

impl fmt::Display for DemographicAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DemographicAxis::Gender => "gender",
            DemographicAxis::Education => "education",
            DemographicAxis::Age => "age",
        })
    }
}

/// Expected question-answer trust per (oracle, predicted) pair.
///
/// Cells with no samples are `None`, never 0: zero means maximal distrust,
/// not absence of data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustMatrix {
    /// Indexed `cells[oracle z][predicted y]`.
    pub cells: [[Option<f64>; 2]; 2],
    pub counts: [[usize; 2]; 2],
}

/// One coefficient of a trust spectrum: a group key (answer scenario or
/// demographic group), its expected trust, sample count, and empirical weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub key: String,
    pub trust: f64,
    pub count: usize,
    pub weight: f64,
}

/// A demographic spectrum plus the groups absent from the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemographicSpectrum {
    pub axis: DemographicAxis,
    pub entries: Vec<SpectrumEntry>,
    pub absent: Vec<String>,
}

/// NetTrustScore decomposed over correct and incorrect answers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTrust {
    pub correct: Option<f64>,
    pub incorrect: Option<f64>,
    pub accuracy: f64,
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn compensated_mean(values: impl Iterator<Item = f64>) -> Option<(f64, usize)> {
    let mut n = 0usize;
    let sum = compensated_sum(values.inspect(|_| n += 1));
    if n == 0 {
        None
    } else {
        Some((sum / n as f64, n))
    }
}

/// Question-answer trust for one prediction: C^alpha if correct, (1-C)^beta
/// if not, clamped to [0, 1] against rounding.
pub fn question_answer_trust(correct: bool, confidence: f64, cfg: &TrustConfig) -> Result<f64> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&confidence) {
        return Err(Error::Domain(format!("confidence {confidence} outside [0, 1]")));
    }
    let q = if correct {
        confidence.powf(cfg.alpha)
    } else {
        (1.0 - confidence).powf(cfg.beta)
    };
    Ok(q.clamp(0.0, 1.0))
}

/// Score every prediction, preserving order.
pub fn score_all(predictions: &[PredictionRecord], cfg: &TrustConfig) -> Result<Vec<ScoredPrediction>> {
    predictions
        .iter()
        .map(|p| {
            let q = question_answer_trust(p.is_correct(), p.confidence, cfg).map_err(|e| {
                Error::Domain(format!("prediction id {}: {e}", p.id))
            })?;
            Ok(ScoredPrediction { prediction: p.clone(), qa_trust: q })
        })
        .collect()
}

/// Expected question-answer trust for every (oracle, predicted) scenario.
pub fn trust_matrix(scored: &[ScoredPrediction]) -> TrustMatrix {
    let mut cells = [[None; 2]; 2];
    let mut counts = [[0usize; 2]; 2];
    for z in 0..2u8 {
        for y in 0..2u8 {
            let qs = scored.iter().filter(|s| {
                s.prediction.true_label == z && s.prediction.predicted_label == y
            });
            if let Some((mean, n)) = compensated_mean(qs.map(|s| s.qa_trust)) {
                cells[z as usize][y as usize] = Some(mean);
                counts[z as usize][y as usize] = n;
            }
        }
    }
    TrustMatrix { cells, counts }
}

/// Trust spectrum: expected trust per oracle answer, weighted by its
/// empirical frequency.
pub fn trust_spectrum(scored: &[ScoredPrediction]) -> Vec<SpectrumEntry> {
    let total = scored.len();
    let mut entries = Vec::new();
    for z in 0..2u8 {
        let qs = scored.iter().filter(|s| s.prediction.true_label == z);
        if let Some((mean, n)) = compensated_mean(qs.map(|s| s.qa_trust)) {
            entries.push(SpectrumEntry {
                key: scenario_name(z).to_string(),
                trust: mean,
                count: n,
                weight: n as f64 / total as f64,
            });
        }
    }
    entries
}

/// Demographic trust spectrum along one axis. Groups without records are
/// omitted from the entries and listed as absent.
pub fn demographic_trust_spectrum(
    scored: &[ScoredPrediction],
    axis: DemographicAxis,
) -> DemographicSpectrum {
    let total = scored.len();
    let mut entries = Vec::new();
    let mut absent = Vec::new();
    for group in axis.groups() {
        let qs = scored.iter().filter(|s| axis.group_of(&s.prediction) == group);
        match compensated_mean(qs.map(|s| s.qa_trust)) {
            Some((mean, n)) => entries.push(SpectrumEntry {
                key: group,
                trust: mean,
                count: n,
                weight: n as f64 / total as f64,
            }),
            None => absent.push(group),
        }
    }
    DemographicSpectrum { axis, entries, absent }
}

/// NetTrustScore: the frequency-weighted sum over the trust spectrum, which
/// equals the grand mean of question-answer trust.
pub fn net_trust_score(scored: &[ScoredPrediction]) -> Result<f64> {
    if scored.is_empty() {
        return Err(Error::Validation("cannot score an empty prediction set".to_string()));
    }
    let spectrum = trust_spectrum(scored);
    Ok(compensated_sum(spectrum.iter().map(|e| e.weight * e.trust)))
}

/// Conditional NetTrustScores for correct and incorrect answers, plus accuracy.
pub fn conditional_net_trust_scores(scored: &[ScoredPrediction]) -> Result<ConditionalTrust> {
    if scored.is_empty() {
        return Err(Error::Validation("cannot score an empty prediction set".to_string()));
    }
    let correct = compensated_mean(scored.iter().filter(|s| s.is_correct()).map(|s| s.qa_trust));
    let incorrect =
        compensated_mean(scored.iter().filter(|s| !s.is_correct()).map(|s| s.qa_trust));
    let n_correct = scored.iter().filter(|s| s.is_correct()).count();
    Ok(ConditionalTrust {
        correct: correct.map(|(m, _)| m),
        incorrect: incorrect.map(|(m, _)| m),
        accuracy: n_correct as f64 / scored.len() as f64,
    })
}
