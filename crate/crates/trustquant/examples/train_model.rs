//! Train the six-layer credit-default classifier on a records CSV and persist
//! it as JSON. Generates a small synthetic dataset when no path is given.
//!
//!     cargo run --release --example train_model [clients.csv]

use std::path::PathBuf;

use trustquant::dataset::{save_records, SplitSpec};
use trustquant::model::TrainConfig;
use trustquant::pipeline::{run_train, TrainOptions};
use trustquant::synth::{generate_records, SynthConfig};

fn main() -> trustquant::Result<()> {
    let data: PathBuf = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = std::env::temp_dir().join("trustquant_train_example.csv");
            let cfg = SynthConfig { n_records: 8000, ..SynthConfig::default() };
            save_records(&generate_records(&cfg), &p)?;
            println!("no data path given; synthesized 8000 records at {}", p.display());
            p
        }
    };
    let model_out = std::env::temp_dir().join("trustquant_model.json");

    let outcome = run_train(&TrainOptions {
        data,
        model_out: model_out.clone(),
        train: TrainConfig::default(), // Adam, 20 epochs, lr 1e-3, decay 0.96
        split: SplitSpec::default(),   // balance by undersampling, 80/20 split
    })?;

    for e in &outcome.history {
        println!(
            "epoch {:>3}  lr {:.6e}  loss {:.6}  accuracy {:.4}",
            e.epoch, e.learning_rate, e.loss, e.accuracy
        );
    }
    println!(
        "counts: raw {:?}, balanced {:?}, train {:?}, test {:?}",
        outcome.counts.raw, outcome.counts.balanced, outcome.counts.train, outcome.counts.test
    );
    println!("model written to {}", model_out.display());
    Ok(())
}
