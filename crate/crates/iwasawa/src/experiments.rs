//! Seeded Monte-Carlo experiments: digit statistics, convergence rates,
//! cylinder-cell geometry, tail equivalence, skew-product structure, the
//! horoball disjointness probe, and the denominator gap.
//!
//! Reproducibility contract: identical `(config, seed)` produce
//! bit-identical reports, independent of worker count — samples draw from
//! counter-split streams and merge in index order.

use crate::algebra::{Coef, Exq};
use crate::cf::{
    convergent_matrices, convergent_point, expand, gauss_step, tail_equal, CfAlgorithm, Letter,
    Word,
};
use crate::error::{Error, Result};
use crate::lattice::{point_from_coords, Digit, DigitKey, Preset, PresetId};
use crate::space::{cygan_distance, gauge4, invert_boundary, Ext, Point};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Counter-split deterministic RNG: one independent stream per sample.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// FNV-1a of a canonical parameter string; embedded in every report.
pub fn config_hash(s: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Common report header.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub experiment: String,
    pub preset: String,
    pub seed: u64,
    pub version: String,
    pub config_hash: String,
    pub params: BTreeMap<String, String>,
}

pub fn meta(experiment: &str, preset: &str, seed: u64, params: &[(&str, String)]) -> Meta {
    let mut map = BTreeMap::new();
    for (k, v) in params {
        map.insert(k.to_string(), v.clone());
    }
    let canon = format!(
        "{experiment}|{preset}|{seed}|{}",
        map.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    );
    Meta {
        experiment: experiment.to_string(),
        preset: preset.to_string(),
        seed,
        version: crate::VERSION.to_string(),
        config_hash: config_hash(&canon),
        params: map,
    }
}

/// Shared experiment parameters.
#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub preset: PresetId,
    pub samples: usize,
    pub orbit: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl ExperimentConfig {
    pub fn new(preset: PresetId, samples: usize, orbit: usize, seed: u64) -> Self {
        assert!(samples > 0 && orbit > 0);
        ExperimentConfig { preset, samples, orbit, seed, tolerance: 1e-9 }
    }
}

/// Uniform sample in `K` (float backend) by rejection from the coordinate
/// bounding box.
pub fn sample_in_domain(preset: &Preset<f64>, rng: &mut impl Rng) -> Point<f64> {
    let (zb, tb) = preset.bounding_box();
    loop {
        let zc: Vec<f64> = zb.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        let tc: Vec<f64> = tb.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        let p = point_from_coords(preset.space, &zc, &tc);
        if preset.contains(&p) {
            return p;
        }
    }
}

/// Random exact point of `K`: small rational coordinates, optionally with a
/// √2-irrational part (which keeps the expansion from terminating), then
/// normalized into the domain.
pub fn sample_exact_in_domain(
    preset: &Preset<Exq>,
    rng: &mut impl Rng,
    irrational: bool,
) -> Point<Exq> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let dz = preset.space.n * preset.space.kind.dim();
    let dt = preset.space.kind.dim() - 1;
    let rad = preset.radius();
    let mut coord = |scale: f64| -> Exq {
        let den = rng.gen_range(40..97) * 2 + 1;
        let lim = (scale * den as f64) as i64;
        let num = rng.gen_range(-lim..=lim);
        let mut v = Exq::rational(BigRational::new(BigInt::from(num), BigInt::from(den)));
        if irrational {
            let den2 = rng.gen_range(300..997) * 2 + 1;
            let num2 = rng.gen_range(1..23);
            v = v.add(&Exq::sqrt2().mul(&Exq::rational(BigRational::new(
                BigInt::from(num2),
                BigInt::from(den2),
            ))));
        }
        v
    };
    let zc: Vec<Exq> = (0..dz).map(|_| coord(rad)).collect();
    let tc: Vec<Exq> = (0..dt).map(|_| coord(rad * rad)).collect();
    let x = point_from_coords(preset.space, &zc, &tc);
    crate::cf::normalize_into_domain(preset, &x).1
}

// ---------------------------------------------------------------------------
// digit frequencies

#[derive(Clone, Debug, Serialize)]
pub struct DigitFreqReport {
    pub meta: Meta,
    pub total_digits: u64,
    pub orbits: usize,
    pub dropped_orbits: usize,
    pub drop_rate: f64,
    /// Digit label → count, sorted by decreasing count.
    pub frequencies: Vec<(String, u64, f64)>,
}

impl DigitFreqReport {
    pub fn frequency_of(&self, label: &str) -> f64 {
        self.frequencies
            .iter()
            .find(|(l, _, _)| l == label)
            .map(|(_, _, f)| *f)
            .unwrap_or(0.0)
    }
}

/// Pooled empirical digit frequencies over float orbits; orbits with a
/// boundary-ambiguous digit decision are dropped and counted.
pub fn digit_frequency(cfg: &ExperimentConfig) -> Result<DigitFreqReport> {
    let preset = Preset::<f64>::build(cfg.preset)?;
    let alg = CfAlgorithm::with_max_digits(preset.clone(), cfg.orbit);
    let per_sample: Vec<Option<Vec<DigitKey>>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.seed, i as u64);
            let x = sample_in_domain(&preset, &mut rng);
            let e = expand(&alg, &x).ok()?;
            if e.ambiguous {
                None
            } else {
                Some(e.keys())
            }
        })
        .collect();
    let mut tallies: BTreeMap<DigitKey, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut dropped = 0usize;
    for s in per_sample {
        match s {
            None => dropped += 1,
            Some(keys) => {
                for k in keys {
                    *tallies.entry(k).or_insert(0) += 1;
                    total += 1;
                }
            }
        }
    }
    let mut frequencies: Vec<(String, u64, f64)> = tallies
        .into_iter()
        .map(|(k, c)| (k.label(), c, c as f64 / total.max(1) as f64))
        .collect();
    frequencies.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(DigitFreqReport {
        meta: meta(
            "digit_frequency",
            &preset.id.to_string(),
            cfg.seed,
            &[("samples", cfg.samples.to_string()), ("orbit", cfg.orbit.to_string())],
        ),
        total_digits: total,
        orbits: cfg.samples,
        dropped_orbits: dropped,
        drop_rate: dropped as f64 / cfg.samples as f64,
        frequencies,
    })
}

// ---------------------------------------------------------------------------
// convergence statistics

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub meta: Meta,
    /// Median error per index over the float samples.
    pub median_errors: Vec<f64>,
    /// Median of per-step error ratios (< 1 means geometric decay).
    pub median_step_ratio: f64,
    /// Fraction of samples with error below `tolerance` at the final index.
    pub fraction_converged: f64,
    pub depth: usize,
    pub float_samples: usize,
    /// Exact part: terminating samples that reconstructed exactly.
    pub exact_samples: usize,
    pub exact_reconstructed: usize,
    pub dropped: usize,
}

/// Error decay over float orbits plus exact reconstruction at termination.
pub fn convergence_stats(cfg: &ExperimentConfig, depth: usize, exact_samples: usize) -> Result<ConvergenceReport> {
    let preset = Preset::<f64>::build(cfg.preset)?;
    let alg = CfAlgorithm::with_max_digits(preset.clone(), depth);
    let rows: Vec<Option<Vec<f64>>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.seed, i as u64);
            let x = sample_in_domain(&preset, &mut rng);
            let e = expand(&alg, &x).ok()?;
            if e.ambiguous || e.digits.len() < depth {
                return None;
            }
            let mut errs = Vec::with_capacity(depth);
            for i in 1..=depth {
                errs.push(
                    crate::cf::convergent_error(&preset, &e.digits, i, &x).ok()?,
                );
            }
            Some(errs)
        })
        .collect();
    let kept: Vec<&Vec<f64>> = rows.iter().flatten().collect();
    let dropped = cfg.samples - kept.len();
    let mut median_errors = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut col: Vec<f64> = kept.iter().map(|r| r[i]).collect();
        col.sort_by(|a, b| a.partial_cmp(b).unwrap());
        median_errors.push(col.get(col.len() / 2).copied().unwrap_or(f64::NAN));
    }
    let mut ratios: Vec<f64> = Vec::new();
    for r in &kept {
        for w in r.windows(2) {
            if w[0] > 0.0 && w[1] > 0.0 {
                ratios.push(w[1] / w[0]);
            }
        }
    }
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median_step_ratio = ratios.get(ratios.len() / 2).copied().unwrap_or(f64::NAN);
    let fraction_converged = kept
        .iter()
        .filter(|r| *r.last().unwrap() < cfg.tolerance)
        .count() as f64
        / kept.len().max(1) as f64;

    // exact part: terminating points constructed as M(0), re-expanded
    let exact_preset = Preset::<Exq>::build(cfg.preset)?;
    let exact_ok: usize = (0..exact_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.seed ^ 0x9e3779b97f4a7c15, i as u64);
            exact_reconstruction_trial(&exact_preset, &mut rng) as usize
        })
        .sum();
    Ok(ConvergenceReport {
        meta: meta(
            "convergence_stats",
            &preset.id.to_string(),
            cfg.seed,
            &[
                ("samples", cfg.samples.to_string()),
                ("depth", depth.to_string()),
                ("exact_samples", exact_samples.to_string()),
            ],
        ),
        median_errors,
        median_step_ratio,
        fraction_converged,
        depth,
        float_samples: kept.len(),
        exact_samples,
        exact_reconstructed: exact_ok,
        dropped,
    })
}

/// One exact trial: build a terminating point as the image of 0 under a
/// random word, expand it, and require exact reconstruction at termination.
fn exact_reconstruction_trial(preset: &Preset<Exq>, rng: &mut impl Rng) -> bool {
    let digits = crate::modular::digits_within(preset, 1);
    if digits.is_empty() {
        return false;
    }
    let len = rng.gen_range(1..=5usize);
    let mut letters = Vec::new();
    for _ in 0..len {
        letters.push(Letter::Dig(digits[rng.gen_range(0..digits.len())].clone()));
        letters.push(Letter::Inversion);
    }
    let w = Word::<Exq> { letters };
    let img = w.apply_boundary(preset, &Ext::Finite(Point::origin(preset.space)));
    let Ext::Finite(x0) = img else { return false };
    let x = crate::cf::normalize_into_domain(preset, &x0).1;
    let alg = CfAlgorithm::with_max_digits(preset.clone(), 64);
    let Ok(e) = expand(&alg, &x) else { return false };
    if !e.terminated {
        return false;
    }
    match convergent_point(preset, &e.digits, e.digits.len()) {
        Ext::Finite(back) => back == x,
        Ext::Infinity => false,
    }
}

// ---------------------------------------------------------------------------
// cylinder cells

/// Per-pixel label of the rank-1 cylinder decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum PixelLabel {
    Outside,
    Unlabeled,
    Cell(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct CellGrid {
    pub meta: Meta,
    pub resolution: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    /// Fixed values of the remaining coordinates (slice directive).
    pub slice: Vec<f64>,
    pub labels: Vec<PixelLabel>,
    pub inside: usize,
    pub unlabeled: usize,
    pub distinct_cells: usize,
}

impl CellGrid {
    pub fn unlabeled_fraction(&self) -> f64 {
        self.unlabeled as f64 / self.inside.max(1) as f64
    }

    pub fn label_at(&self, ix: usize, iy: usize) -> &PixelLabel {
        &self.labels[iy * self.resolution + ix]
    }
}

/// Label every grid pixel of a 2-d slice of `K` with its first digit
/// `⌊ι(x)⌋`. For spaces with more than two real coordinates a slice
/// (values for the remaining coordinates) must be given.
pub fn cylinder_cells(
    preset_id: PresetId,
    resolution: usize,
    slice: Option<Vec<f64>>,
    seed: u64,
) -> Result<CellGrid> {
    let preset = Preset::<f64>::build(preset_id)?;
    let dz = preset.space.n * preset.space.kind.dim();
    let dt = preset.space.kind.dim() - 1;
    let extra = dz + dt - 2;
    let slice = match slice {
        None if extra == 0 => Vec::new(),
        None => {
            return Err(Error::InvalidParameter(format!(
                "{preset_id} has {} coordinates; a slice directive for {} of them is required",
                dz + dt,
                extra
            )))
        }
        Some(s) => {
            if s.len() != extra {
                return Err(Error::InvalidParameter(format!(
                    "slice needs {extra} values, got {}",
                    s.len()
                )));
            }
            s
        }
    };
    let (zb, _) = preset.bounding_box();
    let (x_range, y_range) = (zb[0], zb[1]);
    let inv = &preset.inversion;
    let mut labels = Vec::with_capacity(resolution * resolution);
    let mut inside = 0usize;
    let mut unlabeled = 0usize;
    let mut distinct: BTreeMap<DigitKey, usize> = BTreeMap::new();
    for iy in 0..resolution {
        for ix in 0..resolution {
            let x = x_range.0 + (ix as f64 + 0.5) / resolution as f64 * (x_range.1 - x_range.0);
            let y = y_range.0 + (iy as f64 + 0.5) / resolution as f64 * (y_range.1 - y_range.0);
            let mut zc = vec![x, y];
            let mut tc = Vec::new();
            for (k, v) in slice.iter().enumerate() {
                if 2 + k < dz {
                    zc.push(*v);
                } else {
                    tc.push(*v);
                }
            }
            let p = point_from_coords(preset.space, &zc, &tc);
            if !preset.contains(&p) {
                labels.push(PixelLabel::Outside);
                continue;
            }
            inside += 1;
            if crate::space::gauge(&p) < crate::cf::FLOAT_ZERO_GAUGE {
                unlabeled += 1;
                labels.push(PixelLabel::Unlabeled);
                continue;
            }
            let y_pt = invert_boundary(preset.space, inv, &Ext::Finite(p));
            let Some(y_pt) = y_pt.finite() else {
                unlabeled += 1;
                labels.push(PixelLabel::Unlabeled);
                continue;
            };
            let fl = preset.floor(&y_pt);
            if fl.ambiguous {
                unlabeled += 1;
                labels.push(PixelLabel::Unlabeled);
                continue;
            }
            let key = fl.digit.key();
            *distinct.entry(key.clone()).or_insert(0) += 1;
            labels.push(PixelLabel::Cell(key.label()));
        }
    }
    Ok(CellGrid {
        meta: meta(
            "cylinder_cells",
            &preset_id.to_string(),
            seed,
            &[("resolution", resolution.to_string())],
        ),
        resolution,
        x_range,
        y_range,
        slice,
        labels,
        inside,
        unlabeled,
        distinct_cells: distinct.len(),
    })
}

// ---------------------------------------------------------------------------
// tail equivalence

#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    pub meta: Meta,
    pub pairs: usize,
    pub successes: usize,
    pub failures: usize,
    pub skipped: usize,
    pub window: usize,
    pub min_overlap: usize,
    /// Histogram of found offsets `k + k'`.
    pub offset_histogram: BTreeMap<usize, usize>,
}

/// Sample pairs `(x, K-representative of M x)` for random short words `M`
/// and test tail equality of the exact digit sequences.
pub fn tail_experiment(
    cfg: &ExperimentConfig,
    word_len: usize,
    window: usize,
    min_overlap: usize,
) -> Result<TailReport> {
    let preset = Preset::<Exq>::build(cfg.preset)?;
    let horizon = window + min_overlap + 8;
    let alg = CfAlgorithm::with_max_digits(preset.clone(), horizon);
    let results: Vec<Option<Option<(usize, usize)>>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.seed, i as u64);
            tail_trial(&preset, &alg, word_len, window, min_overlap, &mut rng)
        })
        .collect();
    let mut successes = 0;
    let mut failures = 0;
    let mut skipped = 0;
    let mut offset_histogram = BTreeMap::new();
    for r in results {
        match r {
            None => skipped += 1,
            Some(None) => failures += 1,
            Some(Some((k, kp))) => {
                successes += 1;
                *offset_histogram.entry(k + kp).or_insert(0) += 1;
            }
        }
    }
    Ok(TailReport {
        meta: meta(
            "tail_experiment",
            &preset.id.to_string(),
            cfg.seed,
            &[
                ("pairs", cfg.samples.to_string()),
                ("word_len", word_len.to_string()),
                ("window", window.to_string()),
            ],
        ),
        pairs: cfg.samples,
        successes,
        failures,
        skipped,
        window,
        min_overlap,
        offset_histogram,
    })
}

fn tail_trial(
    preset: &Preset<Exq>,
    alg: &CfAlgorithm<Exq>,
    word_len: usize,
    window: usize,
    min_overlap: usize,
    rng: &mut impl Rng,
) -> Option<Option<(usize, usize)>> {
    let digits = crate::modular::digits_within(preset, 1);
    let x = sample_exact_in_domain(preset, rng, true);
    let ex = expand(alg, &x).ok()?;
    if ex.terminated {
        return None;
    }
    // random alternating word of length ≤ word_len
    let mut letters = Vec::new();
    let mut expect_digit = rng.gen_bool(0.5);
    while letters.len() < word_len {
        if expect_digit {
            letters.push(Letter::Dig(digits[rng.gen_range(0..digits.len())].clone()));
        } else {
            letters.push(Letter::Inversion);
        }
        expect_digit = !expect_digit;
    }
    let w = Word { letters };
    let y = match w.apply_boundary(preset, &Ext::Finite(x.clone())) {
        Ext::Finite(y) => y,
        Ext::Infinity => return None,
    };
    let xp = crate::cf::normalize_into_domain(preset, &y).1;
    let exp = expand(alg, &xp).ok()?;
    if exp.terminated {
        return None;
    }
    Some(tail_equal(&ex.keys(), &exp.keys(), window, min_overlap))
}

// ---------------------------------------------------------------------------
// skew product

/// The incomplete/folded preset pairs related by a skew product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewPair {
    Hurwitz,
    NearestInteger,
    Heisenberg,
}

impl SkewPair {
    pub fn presets(&self) -> (PresetId, PresetId) {
        match self {
            SkewPair::Hurwitz => (PresetId::Hurwitz, PresetId::FoldedHurwitz),
            SkewPair::NearestInteger => {
                (PresetId::NearestIntegerPlus, PresetId::FoldedNearestInteger)
            }
            SkewPair::Heisenberg => (PresetId::Heisenberg, PresetId::FoldedHeisenberg),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hurwitz" => Ok(SkewPair::Hurwitz),
            "nearest_integer" => Ok(SkewPair::NearestInteger),
            "heisenberg" => Ok(SkewPair::Heisenberg),
            _ => Err(Error::Parse(format!("unknown skew pair `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewReport {
    pub meta: Meta,
    pub samples: usize,
    pub checked: usize,
    pub skipped: usize,
    pub factor_mismatches: usize,
    pub cocycle_failures: usize,
}

/// Verify `T(r·z) = f(z,r) · T_c(z)` exactly on random samples, and that
/// `r ↦ f(z, r)` is a bijection of the rotation set for each sampled `z`.
pub fn skew_product_check(pair: SkewPair, samples: usize, seed: u64) -> Result<SkewReport> {
    let (full_id, folded_id) = pair.presets();
    let full = Preset::<Exq>::build(full_id)?;
    let folded = Preset::<Exq>::build(folded_id)?;
    let alg_full = CfAlgorithm::new(full.clone());
    let alg_folded = CfAlgorithm::new(folded.clone());
    let rows: Vec<(usize, usize, usize)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed, i as u64);
            let z = sample_exact_in_domain(&folded, &mut rng, true);
            let Ok(Some((_, tc_z, _))) = gauss_step(&alg_folded, &z) else {
                return (0, 1, 0);
            };
            let mut seen = std::collections::HashSet::new();
            let mut mism = 0usize;
            let mut skip = 0usize;
            for rot in &folded.rotations {
                // x = r·z
                let zc = rot.sperm.apply(&crate::lattice::z_coords(&z));
                let x = point_from_coords(full.space, &zc, &crate::lattice::t_coords(&z));
                if !full.contains(&x) {
                    skip += 1;
                    continue;
                }
                let Ok(Some((_, tx, _))) = gauss_step(&alg_full, &x) else {
                    skip += 1;
                    continue;
                };
                // find r_next with T(rz) = r_next · T_c(z)
                let mut matched = None;
                for (ri, rn) in folded.rotations.iter().enumerate() {
                    let rc = rn.sperm.apply(&crate::lattice::z_coords(&tc_z));
                    let cand =
                        point_from_coords(full.space, &rc, &crate::lattice::t_coords(&tc_z));
                    if cand == tx {
                        matched = Some(ri);
                        break;
                    }
                }
                match matched {
                    None => mism += 1,
                    Some(ri) => {
                        if !seen.insert(ri) {
                            // cocycle not injective for this z
                            mism += 1;
                        }
                    }
                }
            }
            let cocycle_fail =
                usize::from(skip == 0 && mism == 0 && seen.len() != folded.rotations.len());
            (mism, skip, cocycle_fail)
        })
        .collect();
    let mut factor_mismatches = 0;
    let mut skipped = 0;
    let mut cocycle_failures = 0;
    let mut checked = 0;
    for (m, s, c) in rows {
        factor_mismatches += m;
        skipped += s;
        cocycle_failures += c;
        if s == 0 {
            checked += 1;
        }
    }
    Ok(SkewReport {
        meta: meta(
            "skew_product_check",
            &format!("{}/{}", full_id, folded_id),
            seed,
            &[("samples", samples.to_string())],
        ),
        samples,
        checked,
        skipped,
        factor_mismatches,
        cocycle_failures,
    })
}

// ---------------------------------------------------------------------------
// horoball disjointness

#[derive(Clone, Debug, Serialize)]
pub struct HoroballReport {
    pub meta: Meta,
    pub words: usize,
    /// Maximal height constant `C_M` over the sampled words (`M∞ ≠ ∞`).
    pub max_c_m: f64,
    /// Whether `max C_M` equals 1 exactly (the Ford-circle value).
    pub max_is_one_exact: bool,
    /// Smallest sampled `C_M`.
    pub min_c_m: f64,
    /// Pairwise disjointness of the horoballs at `C₀ = max C_M`: requires
    /// `C_{M₁⁻¹M₂} ≤ C₀²` over sampled pairs.
    pub pairwise_ok: bool,
    pub pairs_checked: usize,
}

/// The height constant: `ht_∞(M(B_∞(h))) = C_M / h` with
/// `C_M = Π ‖x_i‖⁻²`, `x_i = (a_i ι ⋯ a_1 ι)(∞)`; computed exactly.
/// Returns `None` when the word fixes ∞.
pub fn word_height_constant(preset: &Preset<Exq>, word: &Word<Exq>) -> Option<Exq> {
    // strip leading/trailing digit letters (they do not affect horoheight)
    let letters: Vec<&Letter<Exq>> = word.letters.iter().collect();
    let mut lo = 0usize;
    let mut hi = letters.len();
    while lo < hi && matches!(letters[lo], Letter::Dig(_)) {
        lo += 1;
    }
    while hi > lo && matches!(letters[hi - 1], Letter::Dig(_)) {
        hi -= 1;
    }
    if lo >= hi {
        return None; // pure translation fixes ∞
    }
    // apply letters in application order starting from ∞, tracking the
    // product of gauge⁴ values at each digit-followed-by-ι stage
    let mut cur: Ext<Point<Exq>> = Ext::Infinity;
    let mut c4 = Exq::from_int(1); // Π gauge⁴(x_i); C_M² = 1/c4
    for letter in &letters[lo..hi] {
        match letter {
            Letter::Inversion => {
                // before inverting at a nonzero point x_i, multiply in its
                // gauge⁴; inverting at 0 resets the product (the prefix
                // fixes B_∞ heights)
                match &cur {
                    Ext::Infinity => {}
                    Ext::Finite(p) => {
                        if p.is_zero() {
                            c4 = Exq::from_int(1);
                        } else {
                            c4 = c4.mul(&gauge4(p));
                        }
                    }
                }
                cur = invert_boundary(preset.space, &preset.inversion, &cur);
            }
            Letter::Dig(d) => {
                cur = match cur {
                    Ext::Infinity => Ext::Infinity,
                    Ext::Finite(p) => Ext::Finite(preset.apply_digit(d, &p)),
                };
            }
        }
    }
    if cur.is_infinity() {
        return None; // word fixes ∞ overall
    }
    // C_M = Π ‖x_i‖⁻² so C_M² = 1 / Π gauge⁴
    c4.recip()
}

/// Probe Ford-ball disjointness: compute `C_M` over all reduced words up to
/// the bounds, report the extremes, and check pairwise disjointness at
/// `C₀ = max C_M`.
pub fn horoball_probe(
    preset_id: PresetId,
    max_len: usize,
    digit_bound: i64,
    pair_sample: usize,
    seed: u64,
) -> Result<HoroballReport> {
    let preset = Preset::<Exq>::build(preset_id)?;
    let digits = crate::modular::digits_within(&preset, digit_bound);
    let mut c2_values: Vec<(Exq, Vec<crate::modular::GenLetter>)> = Vec::new();
    crate::modular::for_each_word(digits.len(), max_len, |letters| {
        let w = crate::modular::word_from_letters(&digits, letters);
        if let Some(c2) = word_height_constant(&preset, &w) {
            c2_values.push((c2, letters.to_vec()));
        }
    });
    if c2_values.is_empty() {
        return Err(Error::BadExpansion("no words moving ∞ in range".into()));
    }
    let one = Exq::from_int(1);
    let mut max_c2 = c2_values[0].0.clone();
    let mut min_c2 = c2_values[0].0.clone();
    for (c2, _) in &c2_values {
        if c2.cmp_real(&max_c2) == std::cmp::Ordering::Greater {
            max_c2 = c2.clone();
        }
        if c2.cmp_real(&min_c2) == std::cmp::Ordering::Less {
            min_c2 = c2.clone();
        }
    }
    let max_c_m = max_c2.to_f64().sqrt();
    // pairwise disjointness at C₀ = max C_M: C_{M₁⁻¹M₂} ≤ C₀², i.e.
    // C²_{M₁⁻¹M₂} ≤ (C₀²)² = max_c2²
    let mut rng = seeded_rng(seed, 0);
    let mut pairwise_ok = true;
    let mut pairs_checked = 0usize;
    let c0_sq_bound = max_c2.mul(&max_c2);
    for _ in 0..pair_sample {
        let (_, l1) = &c2_values[rng.gen_range(0..c2_values.len())];
        let (_, l2) = &c2_values[rng.gen_range(0..c2_values.len())];
        let w1 = crate::modular::word_from_letters(&digits, l1);
        let w2 = crate::modular::word_from_letters(&digits, l2);
        // M₁⁻¹ M₂: invert w1 (reverse letters, invert digits) then append w2
        let mut letters = Vec::new();
        letters.extend(w2.letters.iter().cloned()); // applied first
        for letter in w1.letters.iter() {
            // inverse word in application order: reversed-original becomes
            // plain order with inverted digits appended after w2
            let _ = letter;
        }
        let mut inv_letters = Vec::new();
        for letter in w1.letters.iter().rev() {
            inv_letters.push(match letter {
                Letter::Inversion => Letter::Inversion,
                Letter::Dig(d) => Letter::Dig(preset.digit_inverse(d)),
            });
        }
        // application order of M₁⁻¹∘M₂: w2 letters first, then inverse-w1
        letters.extend(inv_letters);
        let w = Word { letters };
        if let Some(c2) = word_height_constant(&preset, &w) {
            pairs_checked += 1;
            if c2.cmp_real(&c0_sq_bound) == std::cmp::Ordering::Greater {
                pairwise_ok = false;
            }
        }
    }
    Ok(HoroballReport {
        meta: meta(
            "horoball_probe",
            &preset_id.to_string(),
            seed,
            &[
                ("max_len", max_len.to_string()),
                ("digit_bound", digit_bound.to_string()),
            ],
        ),
        words: c2_values.len(),
        max_c_m,
        max_is_one_exact: max_c2 == one,
        min_c_m: min_c2.to_f64().sqrt(),
        pairwise_ok,
        pairs_checked,
    })
}

// ---------------------------------------------------------------------------
// denominator gap

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorGapReport {
    pub meta: Meta,
    pub samples: usize,
    /// Minimal `‖q_m‖` over all samples and indices `m ≥ 0`. The zeroth
    /// convergent `M_0(0) = 0/1` has `q_0 = 1`, so 1 is always attained and
    /// this reports whether anything smaller ever appears (it must not).
    pub min_norm: f64,
    /// Exact flag: the minimum over `m ≥ 0` equals 1 exactly.
    pub min_is_one_exact: bool,
    /// The sharper empirical gap over `m ≥ 1` only (for the Hurwitz preset
    /// this is 2 in the (n+2)-representation: the first digit is never a
    /// unit, and the top-left entry carries the squared classical modulus).
    pub min_norm_tail: f64,
    /// `‖q‖²` of the tail minimum, exactly.
    pub min_tail_norm_sq: String,
    pub zero_denominators: usize,
}

/// Empirical denominator gap over exact expansions.
pub fn denominator_gap(cfg: &ExperimentConfig) -> Result<DenominatorGapReport> {
    let preset = Preset::<Exq>::build(cfg.preset)?;
    if !preset.matrix_route {
        return Err(Error::Unsupported(
            "denominators are not representable for this preset".into(),
        ));
    }
    let alg = CfAlgorithm::with_max_digits(preset.clone(), cfg.orbit);
    // per sample: (min ‖q‖² over m ≥ 0, min over m ≥ 1, zero-q count)
    let mins: Vec<Option<(Exq, Exq, usize)>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.seed, i as u64);
            let x = sample_exact_in_domain(&preset, &mut rng, false);
            let e = expand(&alg, &x).ok()?;
            if e.digits.is_empty() {
                return None;
            }
            let mats = convergent_matrices(&preset, &e.digits).ok()?;
            let mut tail: Option<Exq> = None;
            let mut zeros = 0usize;
            for m in mats.iter().skip(1) {
                let n2 = m.at(0, 0).norm_sq();
                if n2.is_zero() {
                    zeros += 1;
                    continue;
                }
                tail = Some(match tail {
                    None => n2,
                    Some(b) => {
                        if n2.cmp_real(&b) == std::cmp::Ordering::Less {
                            n2
                        } else {
                            b
                        }
                    }
                });
            }
            let tail = tail?;
            // q_0 = 1 (first coordinate of φ(0) under the identity)
            let all = if tail.cmp_real(&Exq::from_int(1)) == std::cmp::Ordering::Less {
                tail.clone()
            } else {
                Exq::from_int(1)
            };
            Some((all, tail, zeros))
        })
        .collect();
    let mut dropped = 0usize;
    let mut zero = 0usize;
    let mut global: Option<Exq> = None;
    let mut global_tail: Option<Exq> = None;
    for m in mins.into_iter() {
        match m {
            None => dropped += 1,
            Some((all, tail, z)) => {
                zero += z;
                let fold = |acc: Option<Exq>, v: Exq| -> Option<Exq> {
                    Some(match acc {
                        None => v,
                        Some(g) => {
                            if v.cmp_real(&g) == std::cmp::Ordering::Less {
                                v
                            } else {
                                g
                            }
                        }
                    })
                };
                global = fold(global, all);
                global_tail = fold(global_tail, tail);
            }
        }
    }
    let _ = dropped;
    let g = global.ok_or_else(|| Error::BadExpansion("no denominators sampled".into()))?;
    let gt = global_tail.ok_or_else(|| Error::BadExpansion("no denominators sampled".into()))?;
    Ok(DenominatorGapReport {
        meta: meta(
            "denominator_gap",
            &preset.id.to_string(),
            cfg.seed,
            &[("samples", cfg.samples.to_string())],
        ),
        samples: cfg.samples,
        // ‖q‖ = norm_sq^{1/2}
        min_norm: g.to_f64().sqrt(),
        min_is_one_exact: g == Exq::from_int(1),
        min_norm_tail: gt.to_f64().sqrt(),
        min_tail_norm_sq: format!("{gt}"),
        zero_denominators: zero,
    })
}
