//! End-to-end run: synthesize client records, train the credit-default MLP,
//! predict the held-out split, and audit it with the full trust suite.
//!
//!     cargo run --release --example full_pipeline [seed]

use trustquant::dataset::save_records;
use trustquant::pipeline::{run_all, RunAllOptions};
use trustquant::synth::{generate_records, SynthConfig};

fn main() -> trustquant::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);

    let dir = std::env::temp_dir().join(format!("trustquant_full_pipeline_{seed}"));
    std::fs::create_dir_all(&dir)?;
    let data = dir.join("clients.csv");
    save_records(&generate_records(&SynthConfig::default()), &data)?;
    println!("synthesized 30000 client records at {}", data.display());

    let outcome = run_all(&RunAllOptions::with_defaults(data, dir.clone(), seed))?;
    for e in &outcome.history {
        println!(
            "epoch {:>3}  lr {:.6e}  loss {:.6}  accuracy {:.4}",
            e.epoch, e.learning_rate, e.loss, e.accuracy
        );
    }

    let r = &outcome.report;
    println!("\nseed {seed}");
    println!("accuracy          {:.4}", r.accuracy);
    println!("net trust score   {:.4}", r.net_trust_score);
    println!("trust | correct   {:.4}", r.conditional_trust.correct.unwrap_or(f64::NAN));
    println!("trust | incorrect {:.4}", r.conditional_trust.incorrect.unwrap_or(f64::NAN));
    for entry in &r.trust_spectrum {
        println!("T({:<15}) = {:.4}  (weight {:.3})", entry.key, entry.trust, entry.weight);
    }
    println!("artifacts in {}", dir.display());
    Ok(())
}
