//! Expand points into Iwasawa continued fractions across several presets.
//!
//! ```sh
//! cargo run --release --example expand
//! ```

use iwasawa_cf::algebra::Exq;
use iwasawa_cf::cf::{convergent_point, expand, normalize_into_domain, CfAlgorithm};
use iwasawa_cf::lattice::{Preset, PresetId};
use iwasawa_cf::literal;
use iwasawa_cf::space::Ext;

fn show(preset_id: &str, x: &str) {
    let id = PresetId::parse(preset_id).unwrap();
    let preset = Preset::<Exq>::build(id).unwrap();
    let point = literal::parse_point::<Exq>(preset.space, x).unwrap();
    let (_, rep) = normalize_into_domain(&preset, &point);
    let alg = CfAlgorithm::with_max_digits(preset.clone(), 16);
    let e = expand(&alg, &rep).unwrap();
    let digits: Vec<String> = e.digits.iter().map(|d| d.key().label()).collect();
    println!("{preset_id}: x = {x}");
    println!("  digits     = [{}]{}", digits.join(", "), if e.terminated { " (terminated)" } else { "" });
    for i in 1..=e.digits.len().min(4) {
        if let Ext::Finite(c) = convergent_point(&preset, &e.digits, i) {
            println!("  M_{i}(0)    = {}", literal::format_point(preset.space, &c));
        }
    }
}

fn main() {
    show("nearest_integer_plus", "5/12");
    show("hurwitz", "2/5+1/5i");
    show("heisenberg", "1/3+1/4i+1/5t");
    show("rosen(5)", "2/7");
    show("octonionic", "1/3+1/4e1-1/5e4+1/7e7");
}
