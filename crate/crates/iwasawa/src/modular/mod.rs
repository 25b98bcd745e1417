//! Word enumeration in the modular group `M = ⟨Z, ι⟩`, projective
//! canonicalization, stabilizer-of-∞ analysis, central-symmetry detection,
//! and the quotient-ring exhaustive search.
//!
//! Two cross-checked representations are used: 2×2 (or 3×3 Heisenberg)
//! matrices over small quadratic integer rings where the classical proofs
//! live, and the general (n+2)-dimensional representation over the exact
//! backend.

pub mod small;

use crate::algebra::matrix::Matrix;
use crate::algebra::{AlgebraKind, Coef, Exq};
use crate::cf::{Letter, Word};
use crate::error::{Error, Result};
use crate::lattice::{decode::DirichletLattice, Digit, Preset, PresetId, ZFloor};
use crate::space::{rotation_matrix, Point, SpaceParams};
use small::{mod_mul, quotient_units, reduce_mod, Qelem, RingSpec, SmallMat};
use std::collections::{HashMap, HashSet};

/// Default search bounds: every catalog-asserted symmetry is realized by
/// words of length ≤ 9 with digit coordinates ≤ 1.
pub const DEFAULT_MAX_LEN: usize = 12;
pub const DEFAULT_DIGIT_BOUND: i64 = 3;

/// All lattice digits with index coordinates bounded by `bound` (all
/// rotations included; the global identity excluded), in a deterministic
/// order.
pub fn digits_within<C: Coef>(preset: &Preset<C>, bound: i64) -> Vec<Digit<C>> {
    let z_lists: Vec<Vec<i64>> = match &preset.zfloor {
        ZFloor::Frame(fb) => cube(fb.dim(), bound),
        ZFloor::Cells { lattice, .. } => cube(lattice.dim(), bound),
        ZFloor::Dirichlet(DirichletLattice::Basis2 { .. }) => cube(2, bound),
        ZFloor::Dirichlet(DirichletLattice::HurwitzQuat) => doubled_cube(4, bound, None),
        ZFloor::Dirichlet(DirichletLattice::Octavian) => {
            doubled_cube(8, bound, Some(&crate::lattice::octavian::halving_code()))
        }
    };
    let t_lists: Vec<Vec<i64>> = match &preset.tbox {
        None => vec![Vec::new()],
        Some(tb) => cube(tb.dim(), bound),
    };
    let mut out = Vec::new();
    for rot in 0..preset.rotations.len() {
        for z in &z_lists {
            for t in &t_lists {
                let d = preset.digit_from_indices(rot, z, t);
                if !d.is_identity() {
                    out.push(d);
                }
            }
        }
    }
    out.sort_by(|a, b| a.key().cmp(&b.key()));
    out
}

fn cube(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::new();
        for pref in &out {
            for v in -bound..=bound {
                let mut p = pref.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Doubled-coordinate vectors of the Hurwitz/octavian lattices with
/// coordinate magnitude ≤ bound: all-even plus admissible half-integer
/// patterns.
fn doubled_cube(dim: usize, bound: i64, code: Option<&[u8]>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for v in cube(dim, bound) {
        out.push(v.iter().map(|x| 2 * x).collect());
    }
    // odd (half-integer) vectors with |value| ≤ bound: doubled odd entries
    let odd_max = 2 * bound - 1;
    if odd_max >= 1 {
        let odds: Vec<i64> = (-odd_max..=odd_max).filter(|v| v % 2 != 0).collect();
        match code {
            None => {
                let mut stack = vec![Vec::new()];
                for _ in 0..dim {
                    let mut next = Vec::new();
                    for pref in &stack {
                        for &v in &odds {
                            let mut p = pref.clone();
                            p.push(v);
                            next.push(p);
                        }
                    }
                    stack = next;
                }
                out.extend(stack);
            }
            Some(code) => {
                // mixed patterns allowed: odd support must be a codeword
                for &mask in code {
                    if mask == 0 {
                        continue;
                    }
                    let idx: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 1).collect();
                    let evens: Vec<i64> = (-bound..=bound).map(|x| 2 * x).collect();
                    let mut stack = vec![vec![0i64; dim]];
                    for pos in 0..dim {
                        let choices: &[i64] = if idx.contains(&pos) { &odds } else { &evens };
                        let mut next = Vec::new();
                        for pref in &stack {
                            for &v in choices {
                                let mut p = pref.clone();
                                p[pos] = v;
                                next.push(p);
                            }
                        }
                        stack = next;
                    }
                    out.extend(stack);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A letter index: the inversion or a digit from the generator list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenLetter {
    Inv,
    Dig(usize),
}

/// Enumerate all reduced words (alternating inversion/digit letters, no
/// identity digits) of length ≤ `max_len` over the bounded digit set,
/// calling `visit` once per word with letters in composition order.
pub fn for_each_word<F: FnMut(&[GenLetter])>(digit_count: usize, max_len: usize, mut visit: F) {
    let mut path: Vec<GenLetter> = Vec::with_capacity(max_len);
    fn rec<F: FnMut(&[GenLetter])>(
        path: &mut Vec<GenLetter>,
        digit_count: usize,
        max_len: usize,
        visit: &mut F,
    ) {
        if !path.is_empty() {
            visit(path);
        }
        if path.len() >= max_len {
            return;
        }
        let last_is_digit = matches!(path.last(), Some(GenLetter::Dig(_)));
        let last_is_inv = matches!(path.last(), Some(GenLetter::Inv));
        if !last_is_inv {
            path.push(GenLetter::Inv);
            rec(path, digit_count, max_len, visit);
            path.pop();
        }
        if !last_is_digit {
            for i in 0..digit_count {
                path.push(GenLetter::Dig(i));
                rec(path, digit_count, max_len, visit);
                path.pop();
            }
        }
    }
    rec(&mut path, digit_count, max_len, &mut visit);
}

/// Materialize a generator-letter path as a boundary word (application
/// order is the reverse of composition order).
pub fn word_from_letters<C: Coef>(digits: &[Digit<C>], letters: &[GenLetter]) -> Word<C> {
    let mut ls = Vec::with_capacity(letters.len());
    for l in letters.iter().rev() {
        ls.push(match l {
            GenLetter::Inv => Letter::Inversion,
            GenLetter::Dig(i) => Letter::Dig(digits[*i].clone()),
        });
    }
    Word { letters: ls }
}

pub fn display_letters<C: Coef>(digits: &[Digit<C>], letters: &[GenLetter]) -> String {
    letters
        .iter()
        .map(|l| match l {
            GenLetter::Inv => "ι".to_string(),
            GenLetter::Dig(i) => format!("A{}", digits[*i].key().label()),
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// All reduced words of length ≤ `max_len` with digit coordinates within
/// `digit_bound`, each yielded once.
pub fn enumerate_words<C: Coef>(
    preset: &Preset<C>,
    max_len: usize,
    digit_bound: i64,
) -> Vec<Word<C>> {
    let digits = digits_within(preset, digit_bound);
    let mut out = Vec::new();
    for_each_word(digits.len(), max_len, |letters| {
        out.push(word_from_letters(&digits, letters));
    });
    out
}

/// Count of reduced words of length ≤ `max_len` over `d` digit letters:
/// an alternating word of length L has `⌊L/2⌋` or `⌈L/2⌉` digit slots
/// depending on its first letter.
pub fn reduced_word_count(d: u64, max_len: usize) -> u64 {
    let mut total = 0u64;
    for len in 1..=max_len {
        let starts_inv = d.pow((len / 2) as u32);
        let starts_dig = d.pow(len.div_ceil(2) as u32);
        total += starts_inv + starts_dig;
    }
    total
}

// ---------------------------------------------------------------------------
// small representations per preset

/// The fast exact representation of a preset's modular group, when one of
/// the classical small embeddings applies.
pub struct SmallRep {
    pub ring: RingSpec,
    pub dim: usize,
    pub inv: SmallMat,
}

/// The 2×2 (or Heisenberg 3×3) representation of the preset, if available.
pub fn small_rep<C: Coef>(preset: &Preset<C>) -> Option<SmallRep> {
    let ring = small_ring(preset.id)?;
    match preset.space.kind {
        AlgebraKind::R if preset.space.n <= 2 => {
            let sign = match preset.inversion {
                crate::space::Inversion::Minus => -1,
                _ => 1,
            };
            Some(SmallRep { ring, dim: 2, inv: SmallMat::inversion2(ring, sign) })
        }
        AlgebraKind::C if preset.space.n == 1 => {
            // ι₋ lifts to [[0,0,−1],[0,1,0],[−1,0,0]]
            Some(SmallRep { ring, dim: 3, inv: SmallMat::heisenberg_inversion() })
        }
        AlgebraKind::R => {
            // real box presets in the (n+2)-representation over Z
            let size = preset.space.n + 2;
            let middle = match preset.inversion {
                crate::space::Inversion::Minus => 1,
                crate::space::Inversion::Plus => -1,
                _ => return None,
            };
            Some(SmallRep { ring, dim: size, inv: SmallMat::inversion_n(ring, size, middle) })
        }
        _ => None,
    }
}

fn small_ring(id: PresetId) -> Option<RingSpec> {
    match id {
        PresetId::Regular
        | PresetId::Backwards
        | PresetId::NearestIntegerPlus
        | PresetId::NearestIntegerMinus
        | PresetId::FoldedNearestInteger
        | PresetId::NakadaAlpha(_)
        | PresetId::Even
        | PresetId::Rosen(3)
        | PresetId::AlphaRosen(3, _) => Some(RingSpec::INT),
        PresetId::Rosen(4) | PresetId::AlphaRosen(4, _) => Some(RingSpec::SQRT2),
        PresetId::Rosen(5) | PresetId::AlphaRosen(5, _) => Some(RingSpec::GOLDEN),
        PresetId::Rosen(6) | PresetId::AlphaRosen(6, _) => Some(RingSpec::SQRT3),
        PresetId::Hurwitz
        | PresetId::FoldedHurwitz
        | PresetId::HurwitzAlpha(_)
        | PresetId::HurwitzTetris
        | PresetId::Shallit
        | PresetId::JHurwitz
        | PresetId::Bianchi(1) => Some(RingSpec::GAUSS),
        PresetId::HurwitzHexagonal | PresetId::Skt | PresetId::Bianchi(3) => {
            Some(RingSpec::EISENSTEIN)
        }
        PresetId::Bianchi(2) => Some(RingSpec::SQRT_MINUS_2),
        PresetId::Bianchi(7) => Some(RingSpec::O7),
        PresetId::Bianchi(11) => Some(RingSpec::O11),
        PresetId::Heisenberg | PresetId::FoldedHeisenberg => Some(RingSpec::GAUSS),
        PresetId::HeisenbergHexagonal => Some(RingSpec::EISENSTEIN),
        PresetId::Real3d(_) => Some(RingSpec::INT),
        _ => None,
    }
}

/// The ring element of a z-part lattice index vector, in the basis the
/// preset's small representation uses.
fn z_ring_elem(id: PresetId, z_idx: &[i64]) -> Qelem {
    if let PresetId::Real3d(_) = id {
        unreachable!("real3d digits are built in the (n+2)-representation");
    }
    match id {
        PresetId::Regular
        | PresetId::Backwards
        | PresetId::NearestIntegerPlus
        | PresetId::NearestIntegerMinus
        | PresetId::FoldedNearestInteger
        | PresetId::NakadaAlpha(_)
        | PresetId::Rosen(3)
        | PresetId::AlphaRosen(3, _) => Qelem::int(z_idx[0]),
        PresetId::Even => Qelem::int(2 * z_idx[0]),
        PresetId::Rosen(_) | PresetId::AlphaRosen(_, _) => Qelem::omega(z_idx[0]),
        PresetId::Hurwitz
        | PresetId::FoldedHurwitz
        | PresetId::HurwitzAlpha(_)
        | PresetId::HurwitzTetris
        | PresetId::Shallit
        | PresetId::Heisenberg
        | PresetId::FoldedHeisenberg => Qelem { a: z_idx[0] as i128, b: z_idx[1] as i128 },
        // basis (1+i, −1+i)
        PresetId::JHurwitz => Qelem {
            a: (z_idx[0] - z_idx[1]) as i128,
            b: (z_idx[0] + z_idx[1]) as i128,
        },
        // basis (1, ρ)
        PresetId::HurwitzHexagonal
        | PresetId::Bianchi(_)
        | PresetId::HeisenbergHexagonal => Qelem { a: z_idx[0] as i128, b: z_idx[1] as i128 },
        // basis (ρ, ρ̄) with ρ̄ = 1 − ρ
        PresetId::Skt => Qelem {
            a: z_idx[1] as i128,
            b: (z_idx[0] - z_idx[1]) as i128,
        },
        _ => unreachable!("no small representation"),
    }
}

/// Small matrix of a digit.
pub fn digit_small_matrix<C: Coef>(preset: &Preset<C>, d: &Digit<C>) -> Option<SmallMat> {
    let rep = small_rep(preset)?;
    if let PresetId::Real3d(_) = preset.id {
        // (n+2)-representation over Z: z entries are the integer lattice
        // coordinates, last entry ‖z‖²
        let z: Vec<Qelem> = d.z_idx.iter().map(|&v| Qelem::int(v)).collect();
        let norm: i128 = d.z_idx.iter().map(|&v| v as i128 * v as i128).sum();
        return Some(SmallMat::translation_n(rep.ring, &z, Qelem { a: norm, b: 0 }));
    }
    let z = z_ring_elem(preset.id, &d.z_idx);
    match rep.dim {
        2 => {
            // fold rotation scalar u: x ↦ u·x
            let u = match (preset.id, d.rot) {
                (_, 0) => Qelem::ONE,
                (PresetId::FoldedNearestInteger | PresetId::FoldedHurwitz, 1) => Qelem::int(-1),
                _ => return None,
            };
            Some(SmallMat::translation2(rep.ring, u, z))
        }
        3 => {
            // t element: Heisenberg t·i with i = ω; hexagonal t·√3·i with
            // √3·i = 2ρ − 1
            let t = d.t_idx[0];
            let t_elem = match preset.id {
                PresetId::HeisenbergHexagonal => Qelem { a: -(t as i128), b: 2 * t as i128 },
                _ => Qelem::omega(t),
            };
            let mut m = small3_translation(rep.ring, z, t_elem);
            if d.rot != 0 {
                let rot = SmallMat::heisenberg_rotation(d.rot as u32);
                m = m.mul(&rot);
            }
            Some(m)
        }
        _ => None,
    }
}

fn small3_translation(ring: RingSpec, z: Qelem, t_elem: Qelem) -> SmallMat {
    let mut m = SmallMat::identity3(ring);
    m.e[3] = z;
    m.e[7] = z.conj(ring);
    m.e[6] = Qelem { a: z.norm(ring), b: 0 }.add(&t_elem);
    m
}

// ---------------------------------------------------------------------------
// canonical forms and stabilizer classification (full representation)

/// Flattened exact entries of a matrix, used as a hash key.
pub fn matrix_key(m: &Matrix<Exq>) -> Vec<Exq> {
    m.entries().iter().flat_map(|s| s.coords.iter().cloned()).collect()
}

/// Projective canonicalization of a full-representation matrix: scale so
/// the first nonzero entry of the first column becomes 1 (kinds R and C,
/// where the projective scalar group is the full field), or so its first
/// nonzero rational coordinate becomes 1 (kind H: real scalars only).
pub fn canonical_form(m: &Matrix<Exq>) -> Matrix<Exq> {
    let n = m.size;
    let lead = (0..n).map(|i| m.at(i, 0).clone()).find(|s| !s.is_zero());
    let Some(lead) = lead else {
        return m.clone();
    };
    match m.kind {
        AlgebraKind::R | AlgebraKind::C => {
            let inv = lead.invert().expect("nonzero");
            m.mul_entrywise(&inv)
        }
        AlgebraKind::H => {
            let c = lead.coords.iter().find(|c| !c.is_zero()).expect("nonzero");
            let s = c.recip().expect("nonzero");
            m.scale(&s)
        }
        AlgebraKind::O => m.clone(),
    }
}

/// Stabilizer classification of a word's Möbius map.
#[derive(Clone, Debug)]
pub enum StabClass<C: Coef> {
    MovesInfinity,
    FixesInfinity {
        /// Translation part `(z, t)` with `M = A_{(z,t)} · D`.
        translation: Point<C>,
        /// Block-diagonal part `D = A⁻¹ M`.
        diagonal: Matrix<C>,
    },
}

/// Classify a word against `Stab(∞)` via the last column of its full
/// matrix, reporting the translation · diagonal decomposition when it
/// fixes ∞.
pub fn stabilizer_test<C: Coef>(preset: &Preset<C>, word: &Word<C>) -> Result<StabClass<C>> {
    let m = word.as_matrix(preset)?;
    stabilizer_classify(preset.space, &m)
}

pub fn stabilizer_classify<C: Coef>(
    space: SpaceParams,
    m: &Matrix<C>,
) -> Result<StabClass<C>> {
    let n = m.size;
    if !(0..n - 1).all(|i| m.at(i, n - 1).is_zero()) {
        return Ok(StabClass::MovesInfinity);
    }
    // first column = A_{(z,t)} data times the unit a: M e₁ = (a, √2 z a, (‖z‖²+t) a)
    let a = m.at(0, 0).clone();
    let a_inv = a.invert().map_err(|_| Error::NotUnitary)?;
    let inv_sqrt2 = C::sqrt2().recip().expect("√2 ≠ 0");
    let z: Vec<_> = (1..n - 1)
        .map(|i| m.at(i, 0).mul(&a_inv).scale(&inv_sqrt2))
        .collect();
    let last = m.at(n - 1, 0).mul(&a_inv);
    let t = last.sub(&crate::algebra::Scalar::from_real(
        space.kind,
        crate::space::vec_norm_sq(&z),
    ));
    let translation = Point::new(z, t.imaginary_part());
    let a_mat = crate::space::translation_matrix(space, &translation)?;
    let a_mat_inv = crate::space::ju_inverse(space, &a_mat)?;
    let diagonal = a_mat_inv.mat_mul(m)?;
    Ok(StabClass::FixesInfinity { translation, diagonal })
}

// ---------------------------------------------------------------------------
// central-symmetry search

/// One rotation found by the search.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FoundRotation {
    /// Witness word, written in composition order.
    pub word: String,
    pub word_len: usize,
    /// Canonical matrix of the rotation.
    pub matrix: String,
    /// The induced boundary map `z ↦ u·z`, as an approximate complex unit.
    pub unit: (f64, f64),
}

/// Search report: rotations fixing 0 and ∞ realized by bounded words,
/// excluding the identity and the preset's own fold rotations. An empty
/// list is a "none found up to the bound" statement, not a completeness
/// proof.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SymmetryReport {
    pub preset: String,
    pub max_len: usize,
    pub digit_bound: i64,
    pub words_visited: u64,
    pub engine: &'static str,
    pub rotations: Vec<FoundRotation>,
}

impl SymmetryReport {
    pub fn found_units(&self) -> Vec<(f64, f64)> {
        self.rotations.iter().map(|r| r.unit).collect()
    }
}

/// Exhaustive bounded search for central symmetries: rotations fixing 0 and
/// ∞ realized inside `M`, deduplicated by canonical matrix. Uses the small
/// integer representation when available, the exact full representation
/// otherwise.
pub fn find_central_symmetries<C: Coef>(
    preset: &Preset<C>,
    max_len: usize,
    digit_bound: i64,
) -> Result<SymmetryReport> {
    let digits = digits_within(preset, digit_bound);
    find_central_symmetries_with_digits(preset, &digits, max_len, digit_bound)
}

/// Symmetry search over an explicit digit generator list (for capped or
/// custom generator sets).
pub fn find_central_symmetries_with_digits<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    max_len: usize,
    digit_bound: i64,
) -> Result<SymmetryReport> {
    if let Some(rep) = small_rep(preset) {
        small_symmetry_search(preset, &rep, digits, max_len, digit_bound)
    } else if matches!(preset.id, PresetId::Quaternionic | PresetId::HurwitzQuaternionic) {
        quat_symmetry_search(preset, digits, max_len, digit_bound)
    } else {
        full_symmetry_search(preset, digits, max_len, digit_bound)
    }
}

/// Quaternionic 2×2 search over the Lipschitz/Hurwitz integers.
fn quat_symmetry_search<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    max_len: usize,
    digit_bound: i64,
) -> Result<SymmetryReport> {
    use small::{QuatI, QuatMat2};
    let gen_mats: Vec<QuatMat2> = digits
        .iter()
        .map(|d| {
            // digit indices are doubled coordinates for the Dirichlet
            // decoders, plain integers for the box lattice
            let doubled: [i64; 4] = match &preset.zfloor {
                ZFloor::Dirichlet(_) => {
                    [d.z_idx[0], d.z_idx[1], d.z_idx[2], d.z_idx[3]]
                }
                _ => [2 * d.z_idx[0], 2 * d.z_idx[1], 2 * d.z_idx[2], 2 * d.z_idx[3]],
            };
            QuatMat2::translation(QuatI::from_doubled(doubled))
        })
        .collect();
    let inv = QuatMat2::inversion();
    let identity = QuatMat2::identity();
    let mut excluded: HashSet<QuatMat2> = HashSet::new();
    excluded.insert(identity.canonical());
    let mut visited = 0u64;
    let mut found: HashMap<QuatMat2, (usize, String)> = HashMap::new();
    #[allow(clippy::too_many_arguments)]
    fn rec<C: Coef>(
        digits: &[Digit<C>],
        gen_mats: &[small::QuatMat2],
        inv: &small::QuatMat2,
        excluded: &HashSet<small::QuatMat2>,
        cur: &small::QuatMat2,
        path: &mut Vec<GenLetter>,
        max_len: usize,
        visited: &mut u64,
        found: &mut HashMap<small::QuatMat2, (usize, String)>,
    ) {
        if !path.is_empty() {
            *visited += 1;
            if cur.is_rotation_diag() {
                let canon = cur.canonical();
                if !excluded.contains(&canon) {
                    let entry = found
                        .entry(canon)
                        .or_insert_with(|| (path.len(), display_letters(digits, path)));
                    if path.len() < entry.0 {
                        *entry = (path.len(), display_letters(digits, path));
                    }
                }
            }
        }
        if path.len() >= max_len {
            return;
        }
        let last_is_digit = matches!(path.last(), Some(GenLetter::Dig(_)));
        let last_is_inv = matches!(path.last(), Some(GenLetter::Inv));
        if !last_is_inv {
            path.push(GenLetter::Inv);
            let nxt = cur.mul(inv);
            rec(digits, gen_mats, inv, excluded, &nxt, path, max_len, visited, found);
            path.pop();
        }
        if !last_is_digit {
            for i in 0..gen_mats.len() {
                path.push(GenLetter::Dig(i));
                let nxt = cur.mul(&gen_mats[i]);
                rec(digits, gen_mats, inv, excluded, &nxt, path, max_len, visited, found);
                path.pop();
            }
        }
    }
    let mut path = Vec::new();
    rec(digits, &gen_mats, &inv, &excluded, &identity, &mut path, max_len, &mut visited, &mut found);
    let mut rotations: Vec<FoundRotation> = found
        .into_iter()
        .map(|(m, (l, w))| {
            // two-sided map z ↦ d₁ z d₂⁻¹; report d₁·d₂⁻¹-style magnitude
            let (re1, im1) = m.e[0].approx();
            let (re2, _) = m.e[3].approx();
            let n2 = m.e[3].norm4x() as f64 / 4.0;
            FoundRotation {
                word: w,
                word_len: l,
                matrix: m.display(),
                unit: ((re1 * re2 + 0.0) / n2, im1 / n2.sqrt()),
            }
        })
        .collect();
    rotations.sort_by(|a, b| (a.word_len, &a.word).cmp(&(b.word_len, &b.word)));
    Ok(SymmetryReport {
        preset: preset.id.to_string(),
        max_len,
        digit_bound,
        words_visited: visited,
        engine: "quat2",
        rotations,
    })
}

/// Digits translating by a single ± lattice unit (plus pure fold
/// rotations): a small generator set for quick census sweeps.
pub fn unit_digits<C: Coef>(preset: &Preset<C>) -> Vec<Digit<C>> {
    let rank = rank_of(preset);
    let scale = match &preset.zfloor {
        ZFloor::Dirichlet(DirichletLattice::HurwitzQuat)
        | ZFloor::Dirichlet(DirichletLattice::Octavian) => 2,
        _ => 1,
    };
    let dt = preset.tbox.as_ref().map_or(0, |t| t.dim());
    let mut out = Vec::new();
    for rot in 0..preset.rotations.len() {
        for axis in 0..rank {
            for sign in [1i64, -1] {
                let mut z = vec![0i64; rank];
                z[axis] = sign * scale;
                out.push(preset.digit_from_indices(rot, &z, &vec![0; dt]));
            }
        }
        for axis in 0..dt {
            for sign in [1i64, -1] {
                let mut t = vec![0i64; dt];
                t[axis] = sign;
                out.push(preset.digit_from_indices(rot, &vec![0; rank], &t));
            }
        }
        if rot != 0 {
            out.push(preset.digit_from_indices(rot, &vec![0; rank], &vec![0; dt]));
        }
    }
    out.sort_by(|a, b| a.key().cmp(&b.key()));
    out.dedup_by(|a, b| a.key() == b.key());
    out
}

fn rotation_unit_small(m: &SmallMat) -> (f64, f64) {
    // boundary map z ↦ (d₁/d₂)·z for 2×2, z ↦ (U/e)·z for the 3×3 block form
    let (num, den) = match m.n {
        2 => (m.at(0, 0), m.at(1, 1)),
        _ => (m.at(1, 1), m.at(0, 0)),
    };
    let (nr, ni) = num.to_complex(m.ring);
    let (dr, di) = den.to_complex(m.ring);
    let d2 = dr * dr + di * di;
    ((nr * dr + ni * di) / d2, (ni * dr - nr * di) / d2)
}

fn small_symmetry_search<C: Coef>(
    preset: &Preset<C>,
    rep: &SmallRep,
    digits: &[Digit<C>],
    max_len: usize,
    digit_bound: i64,
) -> Result<SymmetryReport> {
    let gen_mats: Vec<SmallMat> = digits
        .iter()
        .map(|d| {
            digit_small_matrix(preset, d).ok_or_else(|| {
                Error::Unsupported(format!(
                    "digit {} has no small matrix for {}",
                    d.key().label(),
                    preset.id
                ))
            })
        })
        .collect::<Result<_>>()?;
    let identity = if rep.dim == 2 {
        SmallMat::identity2(rep.ring)
    } else {
        SmallMat::identity3(rep.ring)
    };
    let excluded = excluded_canonicals_small(preset, &identity);
    let mut visited = 0u64;
    let mut found: HashMap<SmallMat, (usize, String)> = HashMap::new();
    // iterative DFS with an explicit matrix stack
    let mut stack_mat = vec![identity.clone()];
    let mut path: Vec<GenLetter> = Vec::new();
    fn rec<C: Coef>(
        preset: &Preset<C>,
        digits: &[Digit<C>],
        gen_mats: &[SmallMat],
        inv: &SmallMat,
        excluded: &HashSet<SmallMat>,
        stack_mat: &mut Vec<SmallMat>,
        path: &mut Vec<GenLetter>,
        max_len: usize,
        visited: &mut u64,
        found: &mut HashMap<SmallMat, (usize, String)>,
    ) {
        let cur = stack_mat.last().unwrap().clone();
        if !path.is_empty() {
            *visited += 1;
            if cur.is_rotation_diag() {
                let canon = cur.canonical();
                if !excluded.contains(&canon) {
                    let entry = found.entry(canon).or_insert_with(|| {
                        (path.len(), display_letters(digits, path))
                    });
                    if path.len() < entry.0 {
                        *entry = (path.len(), display_letters(digits, path));
                    }
                }
            }
        }
        if path.len() >= max_len {
            return;
        }
        let last_is_digit = matches!(path.last(), Some(GenLetter::Dig(_)));
        let last_is_inv = matches!(path.last(), Some(GenLetter::Inv));
        if !last_is_inv {
            path.push(GenLetter::Inv);
            stack_mat.push(cur.mul(inv));
            rec(preset, digits, gen_mats, inv, excluded, stack_mat, path, max_len, visited, found);
            stack_mat.pop();
            path.pop();
        }
        if !last_is_digit {
            for i in 0..gen_mats.len() {
                path.push(GenLetter::Dig(i));
                stack_mat.push(cur.mul(&gen_mats[i]));
                rec(
                    preset, digits, gen_mats, inv, excluded, stack_mat, path, max_len, visited,
                    found,
                );
                stack_mat.pop();
                path.pop();
            }
        }
    }
    rec(
        preset,
        digits,
        &gen_mats,
        &rep.inv,
        &excluded,
        &mut stack_mat,
        &mut path,
        max_len,
        &mut visited,
        &mut found,
    );
    // close the found set under composition and inverse: products of found
    // rotations are realized by concatenated witness words
    let mut items: Vec<(SmallMat, usize, String)> = found
        .iter()
        .map(|(m, (l, w))| (m.clone(), *l, w.clone()))
        .collect();
    items.sort_by(|a, b| (a.1, &a.2).cmp(&(b.1, &b.2)));
    let mut closed: HashMap<SmallMat, (usize, String)> = HashMap::new();
    for (m, l, w) in &items {
        closed.insert(m.clone(), (*l, w.clone()));
    }
    loop {
        let snapshot: Vec<(SmallMat, usize, String)> = closed
            .iter()
            .map(|(m, (l, w))| (m.clone(), *l, w.clone()))
            .collect();
        let mut grew = false;
        for (m1, l1, w1) in &snapshot {
            for (m2, l2, w2) in &snapshot {
                let prod = m1.mul(m2).canonical();
                if excluded.contains(&prod) || closed.contains_key(&prod) {
                    continue;
                }
                closed.insert(prod, (l1 + l2, format!("{w1}·{w2}")));
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut rotations: Vec<FoundRotation> = closed
        .into_iter()
        .map(|(m, (l, w))| FoundRotation {
            word: w,
            word_len: l,
            matrix: m.display(),
            unit: rotation_unit_small(&m),
        })
        .collect();
    rotations.sort_by(|a, b| (a.word_len, &a.word).cmp(&(b.word_len, &b.word)));
    Ok(SymmetryReport {
        preset: preset.id.to_string(),
        max_len,
        digit_bound,
        words_visited: visited,
        engine: "small",
        rotations,
    })
}

fn excluded_canonicals_small<C: Coef>(
    preset: &Preset<C>,
    identity: &SmallMat,
) -> HashSet<SmallMat> {
    let mut excluded = HashSet::new();
    excluded.insert(identity.canonical());
    // the preset's own fold rotations are elements of Z, not hidden symmetries
    for (ri, _) in preset.rotations.iter().enumerate().skip(1) {
        let zeros_z = vec![0i64; rank_of(preset)];
        let zeros_t = vec![0i64; preset.tbox.as_ref().map_or(0, |t| t.dim())];
        let d = preset.digit_from_indices(ri, &zeros_z, &zeros_t);
        if let Some(m) = digit_small_matrix(preset, &d) {
            excluded.insert(m.canonical());
        }
    }
    excluded
}

fn rank_of<C: Coef>(preset: &Preset<C>) -> usize {
    match &preset.zfloor {
        ZFloor::Frame(fb) => fb.dim(),
        ZFloor::Cells { lattice, .. } => lattice.dim(),
        ZFloor::Dirichlet(l) => l.rank(),
    }
}

/// Full-representation symmetry search over the exact backend.
fn full_symmetry_search<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    max_len: usize,
    digit_bound: i64,
) -> Result<SymmetryReport> {
    let exact = build_exact_preset(preset.id)?;
    let digit_keys: Vec<(usize, Vec<i64>, Vec<i64>)> =
        digits.iter().map(|d| (d.rot, d.z_idx.clone(), d.t_idx.clone())).collect();
    let exact_digits: Vec<Digit<Exq>> = digit_keys
        .iter()
        .map(|(r, z, t)| exact.digit_from_indices(*r, z, t))
        .collect();
    let gen_mats: Vec<Matrix<Exq>> = exact_digits
        .iter()
        .map(|d| exact.digit_to_matrix(d))
        .collect::<Result<_>>()?;
    let inv = exact.inversion_matrix()?;
    let identity = Matrix::identity(exact.space.kind, exact.space.phi_len());
    let mut excluded: HashSet<Vec<Exq>> = HashSet::new();
    excluded.insert(matrix_key(&canonical_form(&identity)));
    for rot in exact.rotations.iter().skip(1) {
        if let Some(u) = &rot.u {
            let m = rotation_matrix(exact.space, u)?;
            excluded.insert(matrix_key(&canonical_form(&m)));
        }
    }
    let mut visited = 0u64;
    let mut found: HashMap<Vec<Exq>, (usize, String, Matrix<Exq>)> = HashMap::new();
    let mut mats = vec![identity];
    let mut path: Vec<GenLetter> = Vec::new();
    full_rec(
        &exact,
        &exact_digits,
        &gen_mats,
        &inv,
        &excluded,
        &mut mats,
        &mut path,
        max_len,
        &mut visited,
        &mut found,
    );
    if visited >= FULL_SEARCH_NODE_BUDGET {
        return Err(Error::Unsupported(format!(
            "full-representation search exceeded the {FULL_SEARCH_NODE_BUDGET}-node budget; \
             lower --max-len/--digit-bound",
        )));
    }
    let mut rotations: Vec<FoundRotation> = found
        .into_values()
        .map(|(l, w, m)| {
            let e = m.at(0, 0).clone();
            let u = m.at(1, 1).clone();
            let quot = u.mul(&e.invert().expect("unit"));
            let unit = (
                quot.coords[0].to_f64(),
                quot.coords.get(1).map_or(0.0, |c| c.to_f64()),
            );
            FoundRotation {
                word: w,
                word_len: l,
                matrix: format!("{:?}", canonical_form(&m)),
                unit,
            }
        })
        .collect();
    rotations.sort_by(|a, b| (a.word_len, &a.word).cmp(&(b.word_len, &b.word)));
    Ok(SymmetryReport {
        preset: preset.id.to_string(),
        max_len,
        digit_bound,
        words_visited: visited,
        engine: "full",
        rotations,
    })
}

fn build_exact_preset(id: PresetId) -> Result<Preset<Exq>> {
    Preset::<Exq>::build(id)
}

/// Node budget for the exact full-representation search.
pub const FULL_SEARCH_NODE_BUDGET: u64 = 3_000_000;

#[allow(clippy::too_many_arguments)]
fn full_rec(
    preset: &Preset<Exq>,
    digits: &[Digit<Exq>],
    gen_mats: &[Matrix<Exq>],
    inv: &Matrix<Exq>,
    excluded: &HashSet<Vec<Exq>>,
    mats: &mut Vec<Matrix<Exq>>,
    path: &mut Vec<GenLetter>,
    max_len: usize,
    visited: &mut u64,
    found: &mut HashMap<Vec<Exq>, (usize, String, Matrix<Exq>)>,
) {
    if *visited >= FULL_SEARCH_NODE_BUDGET {
        return;
    }
    let cur = mats.last().unwrap().clone();
    if !path.is_empty() {
        *visited += 1;
        if is_rotation_full(&cur) {
            let canon = canonical_form(&cur);
            let key = matrix_key(&canon);
            if !excluded.contains(&key) {
                let display = display_letters(digits, path);
                let entry = found
                    .entry(key)
                    .or_insert_with(|| (path.len(), display.clone(), cur.clone()));
                if path.len() < entry.0 {
                    *entry = (path.len(), display, cur.clone());
                }
            }
        }
    }
    if path.len() >= max_len {
        return;
    }
    let last_is_digit = matches!(path.last(), Some(GenLetter::Dig(_)));
    let last_is_inv = matches!(path.last(), Some(GenLetter::Inv));
    if !last_is_inv {
        path.push(GenLetter::Inv);
        mats.push(cur.mat_mul(inv).expect("sizes match"));
        full_rec(preset, digits, gen_mats, inv, excluded, mats, path, max_len, visited, found);
        mats.pop();
        path.pop();
    }
    if !last_is_digit {
        for i in 0..gen_mats.len() {
            path.push(GenLetter::Dig(i));
            mats.push(cur.mat_mul(&gen_mats[i]).expect("sizes match"));
            full_rec(preset, digits, gen_mats, inv, excluded, mats, path, max_len, visited, found);
            mats.pop();
            path.pop();
        }
    }
}

/// Block-diagonal U(J) elements `diag(e, U, d)` with `|e| = 1` induce
/// rotations `z ↦ U(z)·e⁻¹` fixing 0 and ∞.
fn is_rotation_full(m: &Matrix<Exq>) -> bool {
    let n = m.size;
    let fixes_inf = (0..n - 1).all(|i| m.at(i, n - 1).is_zero());
    let fixes_zero = (1..n).all(|i| m.at(i, 0).is_zero());
    if !(fixes_inf && fixes_zero) {
        return false;
    }
    // also require the off-block row/column pieces to vanish
    let block_diag = (1..n - 1).all(|i| m.at(0, i).is_zero() && m.at(n - 1, i).is_zero());
    block_diag && m.at(0, 0).norm_sq() == Exq::from_int(1)
}

// ---------------------------------------------------------------------------
// mod-q quotient search

/// Verdict of the quotient search: `Excluded` is a proof that the target
/// rotation is not an element of `M`; `NotExcluded` only reports that its
/// residue appears.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub enum ModQVerdict {
    Excluded,
    NotExcluded,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ModQReport {
    pub preset: String,
    pub q: i64,
    pub target: String,
    pub closure_size: usize,
    pub verdict: ModQVerdict,
}

/// Reduce the modular group modulo `q` in the 2×2 representation, close the
/// generator set under multiplication, and test whether any element matches
/// `λ · target` for a unit scalar `λ` of the quotient ring. `Excluded` means
/// the target rotation provably does not lie in `M`.
pub fn mod_q_symmetry_search<C: Coef>(
    preset: &Preset<C>,
    q: i64,
    digit_bound: i64,
    target: &SmallMat,
) -> Result<ModQReport> {
    let rep = small_rep(preset).ok_or_else(|| {
        Error::Unsupported(format!("{} has no 2×2 representation", preset.id))
    })?;
    if rep.dim != 2 {
        return Err(Error::Unsupported(
            "the quotient search runs in the 2×2 representation".into(),
        ));
    }
    if q < 2 {
        return Err(Error::InvalidParameter("modulus must be at least 2".into()));
    }
    let digits = digits_within(preset, digit_bound);
    let mut gens: Vec<small::ModMat> = Vec::new();
    gens.push(reduce_mod(&rep.inv, q));
    for d in &digits {
        let m = digit_small_matrix(preset, d)
            .ok_or_else(|| Error::Unsupported("digit without small matrix".into()))?;
        gens.push(reduce_mod(&m, q));
    }
    // BFS closure of the generated monoid (finite: ≤ q^8 matrices)
    let mut seen: HashSet<small::ModMat> = HashSet::new();
    let mut frontier: Vec<small::ModMat> = vec![reduce_mod(
        &SmallMat::identity2(rep.ring),
        q,
    )];
    seen.insert(frontier[0].clone());
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let next = mod_mul(&m, g, rep.ring, q);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let units = quotient_units(rep.ring, q);
    let target_red = reduce_mod(target, q);
    let mut hit = false;
    'outer: for m in &seen {
        for &u in &units {
            let scaled = small::ModMat {
                e: [
                    mod_scalar(u, target_red.e[0], rep.ring, q),
                    mod_scalar(u, target_red.e[1], rep.ring, q),
                    mod_scalar(u, target_red.e[2], rep.ring, q),
                    mod_scalar(u, target_red.e[3], rep.ring, q),
                ],
            };
            if *m == scaled {
                hit = true;
                break 'outer;
            }
        }
    }
    Ok(ModQReport {
        preset: preset.id.to_string(),
        q,
        target: target.display(),
        closure_size: seen.len(),
        verdict: if hit { ModQVerdict::NotExcluded } else { ModQVerdict::Excluded },
    })
}

fn mod_scalar(u: (i64, i64), v: (i64, i64), ring: RingSpec, q: i64) -> (i64, i64) {
    let bd = u.1 as i128 * v.1 as i128;
    let a = u.0 as i128 * v.0 as i128 + ring.p as i128 * bd;
    let b = u.0 as i128 * v.1 as i128 + u.1 as i128 * v.0 as i128 + ring.q as i128 * bd;
    (
        (a % q as i128 + q as i128) as i64 % q,
        (b % q as i128 + q as i128) as i64 % q,
    )
}

/// The standard target `z ↦ −z` in the 2×2 representation.
pub fn target_negation(ring: RingSpec) -> SmallMat {
    SmallMat::mat2(ring, [Qelem::int(-1), Qelem::ZERO, Qelem::ZERO, Qelem::ONE])
}
