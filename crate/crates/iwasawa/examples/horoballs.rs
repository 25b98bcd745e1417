//! Ford-style horoball heights: the exact height constants `C_M` of short
//! words and the pairwise disjointness sweep.
//!
//! ```sh
//! cargo run --release --example horoballs
//! ```

use iwasawa_cf::experiments::horoball_probe;
use iwasawa_cf::lattice::PresetId;

fn main() {
    for id in [PresetId::Hurwitz, PresetId::NearestIntegerMinus, PresetId::Heisenberg] {
        let r = horoball_probe(id, 6, 1, 200, 23).unwrap();
        println!(
            "{id}: {} words moving ∞, max C_M = {:.6}{}, min C_M = {:.3e}, pairwise disjoint at C₀: {}",
            r.words,
            r.max_c_m,
            if r.max_is_one_exact { " (exactly 1)" } else { "" },
            r.min_c_m,
            r.pairwise_ok
        );
    }
}
