//! Trust density estimation with boundary reflection: estimate the density
//! of question-answer trust for one prediction scenario and decompose it into
//! correct/incorrect conditional curves.
//!
//!     cargo run --example trust_densities

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trustquant::dataset::{AgeGroup, DemographicProfile, Education, Gender};
use trustquant::density::{scenario_densities, trapezoid, write_density_tsv, DensityConfig};
use trustquant::predictions::PredictionRecord;
use trustquant::trust::{score_all, TrustConfig};

fn main() -> trustquant::Result<()> {
    // a synthetic scenario: 300 predictions of "no default", mostly correct
    // and confident, with an overconfident minority of mistakes
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let predictions: Vec<PredictionRecord> = (0..300)
        .map(|i| {
            let correct = rng.gen_bool(0.75);
            let confidence = if correct {
                0.7 + 0.3 * rng.gen::<f64>()
            } else {
                0.55 + 0.4 * rng.gen::<f64>()
            };
            PredictionRecord {
                id: i,
                true_label: if correct { 0 } else { 1 },
                predicted_label: 0,
                confidence,
                demographics: DemographicProfile {
                    gender: Gender::Female,
                    education: Education::University,
                    age_group: AgeGroup::From30To39,
                },
            }
        })
        .collect();

    let scored = score_all(&predictions, &TrustConfig::default())?;
    let cfg = DensityConfig::default(); // gamma 0.5, 1000 grid points
    let curve = scenario_densities(&scored, 0, &cfg)?;

    println!("scenario        {}", curve.scenario);
    println!("samples         {}", curve.n_samples);
    println!("bandwidth       {:.5}  (gamma / sqrt(n))", curve.bandwidth);
    println!("weight correct  {:.4}", curve.weight_correct);
    println!("weight incorrect {:.4}", curve.weight_incorrect);
    println!("total mass      {:.6}", trapezoid(&curve.grid, &curve.total));

    // coarse terminal sketch of the three curves
    println!("\n   q      total   correct incorrect");
    for i in (0..curve.grid.len()).step_by(100) {
        println!(
            "  {:.2}   {:7.3} {:7.3} {:7.3}",
            curve.grid[i], curve.total[i], curve.cond_correct[i], curve.cond_incorrect[i]
        );
    }

    let out = std::env::temp_dir().join("trustquant_density_no_default.tsv");
    write_density_tsv(&curve, &out)?;
    println!("\nplot-ready TSV written to {}", out.display());
    Ok(())
}
