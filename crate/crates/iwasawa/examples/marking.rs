//! Geodesic marking: calibrate the wall constants, mark a random geodesic,
//! and verify the marking properties.
//!
//! ```sh
//! cargo run --release --example marking
//! ```

use iwasawa_cf::experiments::seeded_rng;
use iwasawa_cf::geodesic::{
    calibrate_constants, compute_marking, sample_markable_ray, verify_marking,
};
use iwasawa_cf::lattice::{Preset, PresetId};

fn main() {
    let preset = Preset::<f64>::build(PresetId::NearestIntegerMinus).unwrap();
    let consts = calibrate_constants(&preset, 1.0, 300, 3).unwrap();
    println!(
        "calibrated: ε = {:.3}, h₂ = {:.3}, h₁ = {:.3}, h₀ = {:.3}",
        consts.epsilon, consts.h2, consts.h1, consts.h0
    );
    let mut rng = seeded_rng(5, 0);
    loop {
        let Some(g) = sample_markable_ray(&preset, consts.epsilon, &mut rng) else { continue };
        let Ok(m) = compute_marking(&preset, &g, &consts, 6) else { continue };
        if m.indices.len() < 5 {
            continue;
        }
        println!("marking of a random geodesic:");
        println!("  indices i_j = {:?}", m.indices);
        println!("  times   t_j = {:?}", m.times.iter().map(|t| (t * 1e3).round() / 1e3).collect::<Vec<_>>());
        let digits: Vec<String> = m.expansion.digits.iter().take(8).map(|d| d.key().label()).collect();
        println!("  digits of γ₊ = [{} …]", digits.join(", "));
        let v = verify_marking(&preset, &g, &m, 0.01).unwrap();
        println!(
            "  verification: min gap {:.4}, gauge defect {:.2e}, cusp violations {}, intersection violations {}, equivariance residual {:.2e}",
            v.min_gap, v.max_gauge_defect, v.cusp_violations, v.intersection_violations, v.equivariance_residual
        );
        break;
    }
}
