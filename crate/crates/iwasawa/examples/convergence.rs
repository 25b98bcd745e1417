//! Convergent error decay: median Cygan error per index and the geometric
//! per-step ratio, plus exact reconstruction of terminating points.
//!
//! ```sh
//! cargo run --release --example convergence
//! ```

use iwasawa_cf::experiments::{convergence_stats, ExperimentConfig};
use iwasawa_cf::lattice::PresetId;

fn main() {
    for id in [PresetId::Hurwitz, PresetId::Heisenberg, PresetId::NearestIntegerMinus] {
        let mut cfg = ExperimentConfig::new(id, 300, 40, 7);
        cfg.tolerance = 1e-8;
        let r = convergence_stats(&cfg, 30, 100).unwrap();
        println!("{id}:");
        println!("  median per-step error ratio = {:.4}", r.median_step_ratio);
        println!("  fraction below 1e-8 at depth 30 = {:.3}", r.fraction_converged);
        println!(
            "  exact reconstruction at termination: {}/{}",
            r.exact_reconstructed, r.exact_samples
        );
        print!("  median errors: ");
        for (i, e) in r.median_errors.iter().enumerate().step_by(6) {
            print!("e[{}]={:.2e} ", i + 1, e);
        }
        println!();
    }
}
