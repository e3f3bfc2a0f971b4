//! Generate a seeded synthetic client-records CSV in the same column schema
//! as the Taiwan credit-card default file.
//!
//!     cargo run --release --example synthesize_data [path] [n_records] [seed]

use trustquant::dataset::save_records;
use trustquant::synth::{generate_records, SynthConfig};

fn main() -> trustquant::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "clients.csv".to_string());
    let n_records = args.next().and_then(|s| s.parse().ok()).unwrap_or(30_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let cfg = SynthConfig { n_records, seed, ..SynthConfig::default() };
    let records = generate_records(&cfg);
    let defaults = records.iter().filter(|r| r.label == 1).count();
    save_records(&records, std::path::Path::new(&path))?;
    println!(
        "wrote {} records ({} defaults, rate {:.3}) to {path}",
        records.len(),
        defaults,
        defaults as f64 / records.len() as f64
    );
    Ok(())
}
