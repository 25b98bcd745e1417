//! Pooled digit statistics: the regular CF compared against the
//! Gauss–Kuzmin law, and the Hurwitz CF's conjugation symmetry.
//!
//! ```sh
//! cargo run --release --example digit_frequencies
//! ```

use iwasawa_cf::experiments::{digit_frequency, ExperimentConfig};
use iwasawa_cf::lattice::PresetId;

fn main() {
    let cfg = ExperimentConfig::new(PresetId::Regular, 5_000, 200, 42);
    let r = digit_frequency(&cfg).unwrap();
    println!("regular CF, {} pooled digits (drops {}):", r.total_digits, r.dropped_orbits);
    for k in 1..=6u32 {
        let expect = (1.0 + 1.0 / (k as f64 * (k as f64 + 2.0))).log2();
        let got = r.frequency_of(&format!("({k})"));
        println!("  digit {k}: {got:.5}  (Gauss–Kuzmin {expect:.5})");
    }
    let cfg = ExperimentConfig::new(PresetId::Hurwitz, 3_000, 120, 43);
    let rh = digit_frequency(&cfg).unwrap();
    println!("\nhurwitz CF, top digits ({} pooled):", rh.total_digits);
    for (label, count, freq) in rh.frequencies.iter().take(8) {
        println!("  {label:<9} {count:>8}  {freq:.5}");
    }
}
