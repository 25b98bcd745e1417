use iwasawa_cf::algebra::Exq;
use iwasawa_cf::cf::*;
use iwasawa_cf::experiments::seeded_rng;
use iwasawa_cf::lattice::{Preset, PresetId};
use iwasawa_cf::modular::digits_within;
use iwasawa_cf::space::{Ext, Point};
use rand::Rng;

fn main() {
    let preset = Preset::<Exq>::build(PresetId::NearestIntegerPlus).unwrap();
    let digits = digits_within(&preset, 1);
    println!("digits: {:?}", digits.iter().map(|d| d.key().label()).collect::<Vec<_>>());
    let mut fails = 0;
    for i in 0..200u64 {
        let mut rng = seeded_rng(404 ^ 0x9e3779b97f4a7c15, i);
        let len = rng.gen_range(1..=5usize);
        let mut letters = Vec::new();
        for _ in 0..len {
            letters.push(Letter::Dig(digits[rng.gen_range(0..digits.len())].clone()));
            letters.push(Letter::Inversion);
        }
        let w = Word::<Exq> { letters };
        let img = w.apply_boundary(&preset, &Ext::Finite(Point::origin(preset.space)));
        let Ext::Finite(x0) = img else { println!("{i}: inf image"); continue };
        if x0.is_zero() { println!("{i}: zero image"); continue; }
        let x = normalize_into_domain(&preset, &x0).1;
        let alg = CfAlgorithm::with_max_digits(preset.clone(), 64);
        let e = expand(&alg, &x).unwrap();
        if !e.terminated {
            fails += 1;
            if fails < 4 {
                println!("{i}: NOT TERMINATED, x = {:?}, {} digits, truncated={}", x.z[0].coords[0], e.digits.len(), e.truncated);
            }
            continue;
        }
        let back = convergent_point(&preset, &e.digits, e.digits.len()).finite().unwrap();
        if back != x { fails += 1; println!("{i}: MISMATCH"); }
    }
    println!("fails: {fails}/200");
}
