//! Trust density estimation: Gaussian KDE on [0, 1] with boundary reflection.
//!
//! Bandwidth is gamma / sqrt(N) with N the size of the scenario group being
//! estimated. Reflection about both endpoints is the explicit three-term
//! kernel sum K(g - q) + K(g + q) + K(g - (2 - q)), which keeps probability
//! mass from leaking outside the unit interval.
//!
//! Conditional curves (correct / incorrect answers) reuse the parent group's
//! bandwidth and carry the within-group correct/incorrect fractions as
//! weights, so they sum pointwise to the total density.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trust::ScoredPrediction;

/// Which label selects a scenario group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBy {
    /// Group by the model's predicted answer.
    Predicted,
    /// Group by the oracle (ground-truth) answer.
    Oracle,
}

impl std::str::FromStr for GroupBy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "predicted" => Ok(GroupBy::Predicted),
            "oracle" => Ok(GroupBy::Oracle),
            other => Err(Error::Validation(format!("unknown group-by `{other}`"))),
        }
    }
}

impl std::fmt::Display for GroupBy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupBy::Predicted => "predicted",
            GroupBy::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DensityConfig {
    pub gamma: f64,
    pub grid_points: usize,
    pub group_by: GroupBy,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig { gamma: 0.5, grid_points: 1000, group_by: GroupBy::Predicted }
    }
}

impl DensityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) {
            return Err(Error::Validation(format!("gamma must be positive, got {}", self.gamma)));
        }
        if self.grid_points < 2 {
            return Err(Error::Validation(format!(
                "grid_points must be at least 2, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }
}

/// Density values on a uniform grid over [0, 1], with the conditional
/// decomposition into correct/incorrect components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub scenario: String,
    pub grid: Vec<f64>,
    pub total: Vec<f64>,
    pub cond_correct: Vec<f64>,
    pub cond_incorrect: Vec<f64>,
    pub n_samples: usize,
    pub bandwidth: f64,
    pub weight_correct: f64,
    pub weight_incorrect: f64,
}

/// KDE bandwidth: gamma / sqrt(n).
pub fn bandwidth(n: usize, gamma: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Validation("bandwidth needs at least one sample".to_string()));
    }
    Ok(gamma / (n as f64).sqrt())
}

/// Uniform grid over [0, 1] including both endpoints.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    let step = 1.0 / (points - 1) as f64;
    (0..points).map(|i| i as f64 * step).collect()
}

/// Weighted reflected-Gaussian density of `samples` on `grid`.
///
/// f(g) = (weight / n) * sum_i [K_h(g - q_i) + K_h(g + q_i) + K_h(g - (2 - q_i))]
pub fn estimate_density(samples: &[f64], weight: f64, h: f64, grid: &[f64]) -> Result<Vec<f64>> {
    for &q in samples {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain(format!("sample {q} outside [0, 1]")));
        }
    }
    if samples.is_empty() {
        return Ok(vec![0.0; grid.len()]);
    }
    let norm = 1.0 / (h * (2.0 * PI).sqrt());
    let scale = weight / samples.len() as f64;
    let kernel = |d: f64| norm * (-d * d / (2.0 * h * h)).exp();

    Ok(grid
        .iter()
        .map(|&g| {
            let sum: f64 = samples
                .iter()
                .map(|&q| kernel(g - q) + kernel(g + q) + kernel(g - (2.0 - q)))
                .sum();
            scale * sum
        })
        .collect())
}

/// Trust density and conditional trust densities for one answer scenario.
pub fn scenario_densities(
    scored: &[ScoredPrediction],
    scenario: u8,
    cfg: &DensityConfig,
) -> Result<DensityCurve> {
    cfg.validate()?;
    let in_group = |s: &&ScoredPrediction| match cfg.group_by {
        GroupBy::Predicted => s.prediction.predicted_label == scenario,
        GroupBy::Oracle => s.prediction.true_label == scenario,
    };
    let group: Vec<&ScoredPrediction> = scored.iter().filter(in_group).collect();
    if group.is_empty() {
        return Err(Error::Validation(format!(
            "no records in scenario `{}` (group-by {})",
            crate::trust::scenario_name(scenario),
            cfg.group_by
        )));
    }

    let n = group.len();
    let h = bandwidth(n, cfg.gamma)?;
    let grid = uniform_grid(cfg.grid_points);

    let all_q: Vec<f64> = group.iter().map(|s| s.qa_trust).collect();
    let correct_q: Vec<f64> =
        group.iter().filter(|s| s.is_correct()).map(|s| s.qa_trust).collect();
    let incorrect_q: Vec<f64> =
        group.iter().filter(|s| !s.is_correct()).map(|s| s.qa_trust).collect();
    let w_correct = correct_q.len() as f64 / n as f64;
    let w_incorrect = incorrect_q.len() as f64 / n as f64;

    let total = estimate_density(&all_q, 1.0, h, &grid)?;
    let cond_correct = estimate_density(&correct_q, w_correct, h, &grid)?;
    let cond_incorrect = estimate_density(&incorrect_q, w_incorrect, h, &grid)?;

    Ok(DensityCurve {
        scenario: crate::trust::scenario_name(scenario).to_string(),
        grid,
        total,
        cond_correct,
        cond_incorrect,
        n_samples: n,
        bandwidth: h,
        weight_correct: w_correct,
        weight_incorrect: w_incorrect,
    })
}

/// Plot-ready TSV: `q  total  cond_correct  cond_incorrect`, one grid point
/// per row, 11 significant digits.
pub fn write_density_tsv(curve: &DensityCurve, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "q\ttotal\tcond_correct\tcond_incorrect")?;
    for i in 0..curve.grid.len() {
        writeln!(
            out,
            "{:.10e}\t{:.10e}\t{:.10e}\t{:.10e}",
            curve.grid[i], curve.total[i], curve.cond_correct[i], curve.cond_incorrect[i]
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Trapezoidal integral of `values` over `grid`.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{AgeGroup, DemographicProfile, Education, Gender};
    use crate::predictions::PredictionRecord;
    use crate::trust::{score_all, TrustConfig};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn prediction(id: u64, z: u8, y: u8, c: f64) -> PredictionRecord {
        PredictionRecord {
            id,
            true_label: z,
            predicted_label: y,
            confidence: c,
            demographics: DemographicProfile {
                gender: Gender::Male,
                education: Education::HighSchool,
                age_group: AgeGroup::From40To49,
            },
        }
    }

    #[test]
    fn bandwidth_substitutions() {
        assert_eq!(bandwidth(1, 0.5).unwrap(), 0.5);
        assert_eq!(bandwidth(100, 0.5).unwrap(), 0.05);
        assert_eq!(bandwidth(4, 1.0).unwrap(), 0.5);
        assert!(bandwidth(0, 0.5).is_err());
    }

    #[test]
    fn single_sample_at_zero_matches_closed_form() {
        let h = 0.5;
        let grid = [0.0];
        let f = estimate_density(&[0.0], 1.0, h, &grid).unwrap();
        let k = |d: f64| (-d * d / (2.0 * h * h)).exp() / (h * (2.0 * PI).sqrt());
        // base kernel and its 0-reflection coincide; 1-reflection sits at distance 2
        let expected = k(0.0) + k(0.0) + k(2.0);
        assert!((f[0] - expected).abs() < 1e-14);
    }

    #[test]
    fn symmetric_samples_give_symmetric_density() {
        let grid = uniform_grid(101);
        let f = estimate_density(&[0.3, 0.7], 1.0, 0.1, &grid).unwrap();
        for i in 0..grid.len() {
            let j = grid.len() - 1 - i;
            assert!((f[i] - f[j]).abs() < 1e-12, "asymmetry at {i}");
        }
    }

    #[test]
    fn estimate_rejects_out_of_range_sample() {
        assert!(estimate_density(&[1.5], 1.0, 0.1, &[0.0]).is_err());
    }

    #[test]
    fn scenario_weights_and_additivity() {
        let cfg = TrustConfig::default();
        let scored = score_all(
            &[
                prediction(1, 0, 0, 0.9),
                prediction(2, 0, 0, 0.8),
                prediction(3, 1, 0, 0.7),
                prediction(4, 0, 0, 0.6),
            ],
            &cfg,
        )
        .unwrap();
        let curve = scenario_densities(&scored, 0, &DensityConfig::default()).unwrap();
        assert_eq!(curve.n_samples, 4);
        assert_eq!(curve.weight_correct, 0.75);
        assert_eq!(curve.weight_incorrect, 0.25);
        for i in 0..curve.grid.len() {
            let sum = curve.cond_correct[i] + curve.cond_incorrect[i];
            assert!((sum - curve.total[i]).abs() < 1e-9, "mismatch at grid point {i}");
        }
    }

    #[test]
    fn all_correct_group_has_zero_incorrect_curve() {
        let cfg = TrustConfig::default();
        let scored =
            score_all(&[prediction(1, 0, 0, 0.9), prediction(2, 0, 0, 0.7)], &cfg).unwrap();
        let curve = scenario_densities(&scored, 0, &DensityConfig::default()).unwrap();
        assert!(curve.cond_incorrect.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn empty_scenario_is_an_error_naming_it() {
        let cfg = TrustConfig::default();
        let scored = score_all(&[prediction(1, 0, 0, 0.9)], &cfg).unwrap();
        let err = scenario_densities(&scored, 1, &DensityConfig::default()).unwrap_err();
        assert!(err.to_string().contains("payment_default"), "{err}");
    }

    #[test]
    fn total_matches_naive_triple_sum_oracle() {
        let cfg = TrustConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let preds: Vec<PredictionRecord> = (0..30)
            .map(|i| prediction(i, rng.gen_range(0..2), 0, rng.gen_range(0.0..1.0)))
            .collect();
        let scored = score_all(&preds, &cfg).unwrap();
        let dcfg = DensityConfig::default();
        let curve = scenario_densities(&scored, 0, &dcfg).unwrap();

        let qs: Vec<f64> = scored.iter().map(|s| s.qa_trust).collect();
        let h = dcfg.gamma / (qs.len() as f64).sqrt();
        for _ in 0..10 {
            let idx = rng.gen_range(0..curve.grid.len());
            let g = curve.grid[idx];
            let mut oracle = 0.0;
            for &q in &qs {
                for d in [g - q, g + q, g - (2.0 - q)] {
                    oracle += (-d * d / (2.0 * h * h)).exp() / (h * (2.0 * PI).sqrt());
                }
            }
            oracle /= qs.len() as f64;
            assert!((curve.total[idx] - oracle).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_grouping_toggle_selects_by_true_label() {
        let cfg = TrustConfig::default();
        let scored = score_all(
            &[prediction(1, 1, 0, 0.9), prediction(2, 0, 0, 0.8)],
            &cfg,
        )
        .unwrap();
        let dcfg = DensityConfig { group_by: GroupBy::Oracle, ..DensityConfig::default() };
        let curve = scenario_densities(&scored, 1, &dcfg).unwrap();
        assert_eq!(curve.n_samples, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        // n >= 4 keeps the bandwidth small enough that mass past the far
        // boundary (which a single reflection cannot recover) stays below
        // the 1e-3 budget
        #[test]
        fn mass_is_conserved(samples in proptest::collection::vec(0.0f64..=1.0, 4..40)) {
            let h = bandwidth(samples.len(), 0.5).unwrap();
            let grid = uniform_grid(1000);
            let f = estimate_density(&samples, 1.0, h, &grid).unwrap();
            let mass = trapezoid(&grid, &f);
            prop_assert!((mass - 1.0).abs() < 1e-3, "mass {mass}");
            prop_assert!(f.iter().all(|&v| v >= 0.0));
        }

        #[test]
        fn doubling_multiplicity_keeps_unit_mass(
            samples in proptest::collection::vec(0.0f64..=1.0, 2..20),
        ) {
            let doubled: Vec<f64> = samples.iter().chain(&samples).cloned().collect();
            let h = bandwidth(doubled.len(), 0.5).unwrap();
            let grid = uniform_grid(1000);
            let f = estimate_density(&doubled, 1.0, h, &grid).unwrap();
            prop_assert!((trapezoid(&grid, &f) - 1.0).abs() < 1e-3);
        }
    }
}
