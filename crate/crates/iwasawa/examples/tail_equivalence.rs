//! Tail equivalence under modular translates: exact expansions of `x` and
//! of the domain representative of `M(x)` share a tail.
//!
//! ```sh
//! cargo run --release --example tail_equivalence
//! ```

use iwasawa_cf::experiments::{tail_experiment, ExperimentConfig};
use iwasawa_cf::lattice::PresetId;

fn main() {
    for id in [PresetId::FoldedHurwitz, PresetId::FoldedNearestInteger, PresetId::Hurwitz] {
        let cfg = ExperimentConfig::new(id, 60, 64, 11);
        let r = tail_experiment(&cfg, 6, 50, 8).unwrap();
        println!(
            "{id}: {} matched / {} failed / {} skipped; offset histogram {:?}",
            r.successes, r.failures, r.skipped, r.offset_histogram
        );
    }
}
