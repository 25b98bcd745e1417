//! Walk the full Table-style preset catalog: space, inversion, exact radius
//! and properness margin.
//!
//! ```sh
//! cargo run --release --example presets_catalog
//! ```

use iwasawa_cf::algebra::Exq;
use iwasawa_cf::lattice::{Preset, PresetId};

fn main() {
    println!("{:<26} {:<8} {:>10} {:>8}  rad⁴ (exact)", "preset", "space", "radius", "proper");
    for id in PresetId::catalog() {
        let p = Preset::<Exq>::build(id).unwrap();
        let (proper, margin) = p.properness_check();
        println!(
            "{:<26} X^{}_{:<4} {:>10.6} {:>8}  {}",
            id.to_string(),
            p.space.n,
            p.space.kind.to_string(),
            p.radius(),
            if proper { format!("Y ({margin:.3})") } else { "N".into() },
            p.radius4(),
        );
    }
}
