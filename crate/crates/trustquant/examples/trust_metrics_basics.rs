//! The trust metric suite on a small hand-made prediction set: per-prediction
//! question-answer trust, the trust matrix, trust spectrum, demographic trust
//! spectra, and NetTrustScore with its conditionals.
//!
//!     cargo run --example trust_metrics_basics

use trustquant::dataset::{AgeGroup, DemographicProfile, Education, Gender};
use trustquant::predictions::PredictionRecord;
use trustquant::trust::{
    conditional_net_trust_scores, demographic_trust_spectrum, net_trust_score, score_all,
    trust_matrix, trust_spectrum, DemographicAxis, TrustConfig,
};

fn prediction(
    id: u64,
    true_label: u8,
    predicted_label: u8,
    confidence: f64,
    gender: Gender,
    education: Education,
    age_group: AgeGroup,
) -> PredictionRecord {
    PredictionRecord {
        id,
        true_label,
        predicted_label,
        confidence,
        demographics: DemographicProfile { gender, education, age_group },
    }
}

fn main() -> trustquant::Result<()> {
    use AgeGroup::*;
    use Education::*;
    use Gender::*;

    let predictions = vec![
        prediction(1, 0, 0, 0.92, Female, University, From20To29),
        prediction(2, 0, 0, 0.71, Male, GraduateSchool, From30To39),
        prediction(3, 1, 1, 0.88, Female, HighSchool, From40To49),
        prediction(4, 1, 0, 0.64, Male, University, From50),
        prediction(5, 0, 1, 0.55, Female, GraduateSchool, From20To29),
        prediction(6, 1, 1, 0.97, Male, HighSchool, From30To39),
    ];

    let cfg = TrustConfig::default(); // alpha = beta = 1
    let scored = score_all(&predictions, &cfg)?;

    println!("question-answer trust per prediction:");
    for s in &scored {
        println!(
            "  id {}  z={} y={}  C={:.2}  {}  q = {:.4}",
            s.prediction.id,
            s.prediction.true_label,
            s.prediction.predicted_label,
            s.prediction.confidence,
            if s.is_correct() { "correct  " } else { "incorrect" },
            s.qa_trust
        );
    }

    let matrix = trust_matrix(&scored);
    println!("\ntrust matrix (rows: oracle z, cols: predicted y):");
    for z in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|y| match matrix.cells[z][y] {
                Some(v) => format!("{v:.4} (n={})", matrix.counts[z][y]),
                None => "  --  (n=0)".to_string(),
            })
            .collect();
        println!("  z={z}:  {}", row.join("   "));
    }

    println!("\ntrust spectrum:");
    for entry in trust_spectrum(&scored) {
        println!("  T({}) = {:.4}  weight {:.3}", entry.key, entry.trust, entry.weight);
    }

    println!("\ndemographic trust spectra:");
    for axis in DemographicAxis::ALL {
        let spectrum = demographic_trust_spectrum(&scored, axis);
        for entry in &spectrum.entries {
            println!("  {axis}/{:<15} T = {:.4}  (n={})", entry.key, entry.trust, entry.count);
        }
        if !spectrum.absent.is_empty() {
            println!("  {axis}: absent groups {:?}", spectrum.absent);
        }
    }

    let net = net_trust_score(&scored)?;
    let cond = conditional_net_trust_scores(&scored)?;
    println!("\nNetTrustScore      = {net:.4}");
    println!("T | correct        = {:.4}", cond.correct.unwrap());
    println!("T | incorrect      = {:.4}", cond.incorrect.unwrap());
    println!("accuracy           = {:.4}", cond.accuracy);
    println!(
        "decomposition      = {:.4} (accuracy * T_correct + (1 - accuracy) * T_incorrect)",
        cond.accuracy * cond.correct.unwrap() + (1.0 - cond.accuracy) * cond.incorrect.unwrap()
    );
    Ok(())
}
