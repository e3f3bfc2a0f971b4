//! The model-agnostic audit path: score any predictions CSV (written by this
//! crate or by a third-party model) and emit the trust report plus
//! per-scenario density TSVs.
//!
//!     cargo run --example audit_predictions [predictions.csv]

use std::path::PathBuf;

use trustquant::density::DensityConfig;
use trustquant::pipeline::{run_audit, AuditOptions};
use trustquant::trust::TrustConfig;

fn main() -> trustquant::Result<()> {
    let predictions: PathBuf = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            // a tiny self-contained fixture
            let p = std::env::temp_dir().join("trustquant_audit_example.csv");
            std::fs::write(
                &p,
                "id,true_label,predicted_label,confidence,gender,education,age_group\n\
                 1,0,0,0.91,female,university,20-29\n\
                 2,0,0,0.84,male,graduate_school,30-39\n\
                 3,1,1,0.88,female,high_school,40-49\n\
                 4,1,0,0.67,male,university,50+\n\
                 5,0,1,0.58,female,graduate_school,20-29\n\
                 6,1,1,0.95,male,high_school,30-39\n\
                 7,0,0,0.73,female,others,40-49\n\
                 8,1,1,0.79,male,university,20-29\n",
            )?;
            println!("no path given; using fixture at {}", p.display());
            p
        }
    };

    let out_dir = std::env::temp_dir().join("trustquant_audit_out");
    let outcome = run_audit(&AuditOptions {
        predictions,
        report_out: out_dir.join("report.json"),
        density_dir: Some(out_dir.join("densities")),
        trust: TrustConfig::default(),
        density: DensityConfig::default(),
    })?;

    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let r = &outcome.report;
    println!("accuracy          {:.4}", r.accuracy);
    println!("net trust score   {:.4}", r.net_trust_score);
    println!("education gap     {:.4} abs, {:.2}% of larger", r.gaps.education.max_min_absolute, r.gaps.education.max_min_pct_of_larger);
    println!("age gap           {:.4} abs, {:.2}% of larger", r.gaps.age.max_min_absolute, r.gaps.age.max_min_pct_of_larger);
    println!("report at {}", out_dir.join("report.json").display());
    for d in &outcome.density_files {
        println!("density at {}", d.display());
    }
    Ok(())
}
