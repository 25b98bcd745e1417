//! Central-symmetry word search: witnesses for the incomplete presets,
//! empty censuses for the complete ones, and the mod-4 exclusion for the
//! J. Hurwitz algorithm.
//!
//! ```sh
//! cargo run --release --example symmetries
//! ```

use iwasawa_cf::algebra::Exq;
use iwasawa_cf::lattice::{Preset, PresetId};
use iwasawa_cf::modular::{
    find_central_symmetries, mod_q_symmetry_search, small::RingSpec, target_negation,
};

fn main() {
    for (id, len) in [
        (PresetId::NearestIntegerPlus, 8),
        (PresetId::Hurwitz, 8),
        (PresetId::Heisenberg, 6),
        (PresetId::Backwards, 12),
        (PresetId::FoldedHurwitz, 12),
        (PresetId::Rosen(5), 12),
    ] {
        let p = Preset::<Exq>::build(id).unwrap();
        let rep = find_central_symmetries(&p, len, 1).unwrap();
        println!("{id} (len ≤ {len}, |digit| ≤ 1, {} words):", rep.words_visited);
        if rep.rotations.is_empty() {
            println!("  none found up to the bound");
        }
        for r in &rep.rotations {
            println!("  z ↦ ({:+.0}{:+.0}i)·z   via {}", r.unit.0, r.unit.1, r.word);
        }
    }
    let pj = Preset::<Exq>::build(PresetId::JHurwitz).unwrap();
    let r = mod_q_symmetry_search(&pj, 4, 2, &target_negation(RingSpec::GAUSS)).unwrap();
    println!("j_hurwitz mod 4: {:?} (closure of {} residue matrices)", r.verdict, r.closure_size);
}
