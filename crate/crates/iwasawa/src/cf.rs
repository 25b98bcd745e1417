//! The continued-fraction engine: Gauss map, digit extraction, convergent
//! words and matrices, convergent errors, denominators, and tail comparison.
//!
//! Exact deep orbits for the matrix-backed presets are iterated as integral
//! projective φ-vectors under the generator matrices (entry growth stays
//! additive in the number of digits); the octonionic preset iterates
//! right-fractions `u·v⁻¹`, which the alternative laws keep closed under the
//! Gauss map. Float orbits iterate coordinates directly.

use crate::algebra::matrix::Matrix;
use crate::algebra::{Coef, Scalar};
use crate::error::{Error, Result};
use crate::lattice::{z_coords, Digit, DigitKey, Preset};
use crate::space::{
    cygan_distance, embed_phi_boundary, gauge, invert_boundary, mobius_apply_boundary, read_phi,
    rotation_matrix, translation_matrix, Ext, Point,
};

/// Gauge under which a float iterate counts as terminated (exact zero is
/// only decidable in the rational backend).
pub const FLOAT_ZERO_GAUGE: f64 = 1e-14;

/// A preset plus expansion limits.
#[derive(Clone, Debug)]
pub struct CfAlgorithm<C: Coef> {
    pub preset: Preset<C>,
    pub max_digits: usize,
}

impl<C: Coef> CfAlgorithm<C> {
    pub fn new(preset: Preset<C>) -> Self {
        CfAlgorithm { preset, max_digits: 64 }
    }

    pub fn with_max_digits(preset: Preset<C>, max_digits: usize) -> Self {
        CfAlgorithm { preset, max_digits }
    }
}

/// The digit-and-iterate record of a point.
#[derive(Clone, Debug)]
pub struct Expansion<C: Coef> {
    pub digits: Vec<Digit<C>>,
    /// `x_0, x_1, …`; one more entry than `digits` (the iterate after the
    /// last extracted digit).
    pub iterates: Vec<Point<C>>,
    pub terminated: bool,
    pub truncated: bool,
    /// A float-backend digit decision fell within the boundary guard; exact
    /// backends never set this.
    pub ambiguous: bool,
}

impl<C: Coef> Expansion<C> {
    pub fn keys(&self) -> Vec<DigitKey> {
        self.digits.iter().map(|d| d.key()).collect()
    }
}

/// One Gauss step `x ↦ ⌊ι(x)⌋⁻¹(ι(x))` with its digit; `None` at the fixed
/// point `T(0) = 0`.
pub fn gauss_step<C: Coef>(
    alg: &CfAlgorithm<C>,
    x: &Point<C>,
) -> Result<Option<(Digit<C>, Point<C>, bool)>> {
    let p = &alg.preset;
    if !p.contains(x) {
        return Err(Error::OutsideDomain);
    }
    if is_zero_iterate(x) {
        return Ok(None);
    }
    let inv = invert_boundary(p.space, &p.inversion, &Ext::Finite(x.clone()));
    let y = inv.finite().ok_or_else(|| Error::BadExpansion("ι(x) = ∞ for x ≠ 0".into()))?;
    let fl = p.floor(&y);
    let next = p.apply_digit_inv(&fl.digit, &y);
    Ok(Some((fl.digit, next, fl.ambiguous)))
}

fn is_zero_iterate<C: Coef>(x: &Point<C>) -> bool {
    if C::EXACT {
        x.is_zero()
    } else {
        gauge(x) < FLOAT_ZERO_GAUGE
    }
}

/// The normalization step `a₀ = ⌊x⌋`, exposed separately: returns the digit
/// `a₀` and the representative `a₀⁻¹(x) ∈ K`. Never part of an `Expansion`.
pub fn normalize_into_domain<C: Coef>(preset: &Preset<C>, x: &Point<C>) -> (Digit<C>, Point<C>) {
    let fl = preset.floor(x);
    let rep = preset.apply_digit_inv(&fl.digit, x);
    (fl.digit, rep)
}

/// Expand `x ∈ K` up to termination or `max_digits`.
pub fn expand<C: Coef>(alg: &CfAlgorithm<C>, x: &Point<C>) -> Result<Expansion<C>> {
    let p = &alg.preset;
    if !p.contains(x) {
        return Err(Error::OutsideDomain);
    }
    if C::EXACT && p.matrix_route {
        expand_phi_route(alg, x)
    } else if C::EXACT {
        expand_fraction_route(alg, x)
    } else {
        expand_direct(alg, x)
    }
}

fn expand_direct<C: Coef>(alg: &CfAlgorithm<C>, x: &Point<C>) -> Result<Expansion<C>> {
    let p = &alg.preset;
    let mut digits = Vec::new();
    let mut iterates = vec![x.clone()];
    let mut cur = x.clone();
    let mut ambiguous = false;
    let mut terminated = false;
    while digits.len() < alg.max_digits {
        if is_zero_iterate(&cur) {
            terminated = true;
            break;
        }
        let inv = invert_boundary(p.space, &p.inversion, &Ext::Finite(cur.clone()));
        let y = inv
            .finite()
            .ok_or_else(|| Error::BadExpansion("ι(x) = ∞ for x ≠ 0".into()))?;
        let fl = p.floor(&y);
        ambiguous |= fl.ambiguous;
        cur = p.apply_digit_inv(&fl.digit, &y);
        digits.push(fl.digit);
        iterates.push(cur.clone());
    }
    if !terminated && is_zero_iterate(&cur) {
        terminated = true;
    }
    let truncated = !terminated && digits.len() >= alg.max_digits;
    Ok(Expansion { digits, iterates, terminated, truncated, ambiguous })
}

/// Exact expansion through integral projective φ-vectors: the iterate is
/// carried as `V ≅ φ(x_i)·λ` and each step applies `A_{a}⁻¹ · J_ι`.
fn expand_phi_route<C: Coef>(alg: &CfAlgorithm<C>, x: &Point<C>) -> Result<Expansion<C>> {
    let p = &alg.preset;
    let space = p.space;
    let j_inv = p.inversion_matrix()?;
    let mut v = embed_phi_boundary(space, &Ext::Finite(x.clone()));
    normalize_vec(&mut v);
    let mut digits = Vec::new();
    let mut iterates = vec![x.clone()];
    let mut terminated = false;
    loop {
        let cur = read_boundary_point(space, &v)?;
        if cur.is_zero() {
            terminated = true;
            break;
        }
        if digits.len() >= alg.max_digits {
            break;
        }
        let w = j_inv.apply(&v);
        let y = read_boundary_point(space, &w)?;
        let fl = p.floor(&y);
        let inv_digit = digit_inverse_matrix(p, &fl.digit)?;
        v = inv_digit.apply(&w);
        normalize_vec(&mut v);
        let next = read_boundary_point(space, &v)?;
        digits.push(fl.digit);
        iterates.push(next);
    }
    let truncated = !terminated && digits.len() >= alg.max_digits;
    Ok(Expansion { digits, iterates, terminated, truncated, ambiguous: false })
}

fn normalize_vec<C: Coef>(v: &mut [Scalar<C>]) {
    let dim = v[0].kind.dim();
    let mut flat: Vec<C> = v.iter().flat_map(|s| s.coords.iter().cloned()).collect();
    C::normalize_projective(&mut flat);
    for (i, s) in v.iter_mut().enumerate() {
        s.coords = flat[i * dim..(i + 1) * dim].to_vec();
    }
}

fn read_boundary_point<C: Coef>(
    space: crate::space::SpaceParams,
    v: &[Scalar<C>],
) -> Result<Point<C>> {
    match read_phi(space, v)? {
        Ext::Infinity => Err(Error::BadExpansion("iterate left the finite part".into())),
        Ext::Finite(h) => Ok(Point::new(h.z.clone(), h.w.imaginary_part())),
    }
}

/// Matrix of the inverse digit action `x ↦ r⁻¹((−a)*x)`.
fn digit_inverse_matrix<C: Coef>(p: &Preset<C>, d: &Digit<C>) -> Result<Matrix<C>> {
    let a_inv = translation_matrix(p.space, &crate::space::group_inv(&d.translation))?;
    let rot = &p.rotations[d.rot];
    match &rot.u {
        Some(u) if !rot.sperm.is_identity() => {
            let r_inv = rotation_matrix(p.space, &u.dagger())?;
            r_inv.mat_mul(&a_inv)
        }
        _ => Ok(a_inv),
    }
}

/// Exact octonionic expansion on right-fractions `x = u·v⁻¹`: the inversion
/// swaps numerator and denominator and digit subtraction acts on `u` alone,
/// using the right inverse property `(a·v)·v⁻¹ = a` of alternative algebras.
fn expand_fraction_route<C: Coef>(alg: &CfAlgorithm<C>, x: &Point<C>) -> Result<Expansion<C>> {
    let p = &alg.preset;
    let to_oct =
        |pt: &Point<C>| -> Scalar<C> { Scalar::new(crate::algebra::AlgebraKind::O, z_coords(pt)) };
    let from_oct =
        |s: &Scalar<C>| -> Point<C> { crate::lattice::point_from_coords(p.space, &s.coords, &[]) };
    let mut u = to_oct(x);
    let mut v = Scalar::one(crate::algebra::AlgebraKind::O);
    let mut digits = Vec::new();
    let mut iterates = vec![x.clone()];
    let mut terminated = false;
    loop {
        if u.is_zero() {
            terminated = true;
            break;
        }
        if digits.len() >= alg.max_digits {
            break;
        }
        // ι_c = octonion reciprocal: swap the fraction
        std::mem::swap(&mut u, &mut v);
        let y = from_oct(&u.mul(&v.invert().map_err(|_| Error::ZeroInverse)?));
        let fl = p.floor(&y);
        let a = to_oct(&fl.digit.translation);
        // y − a = (u − a·v)·v⁻¹
        u = u.sub(&a.mul(&v));
        let mut flat: Vec<C> = u.coords.iter().chain(v.coords.iter()).cloned().collect();
        C::normalize_projective(&mut flat);
        u.coords = flat[..8].to_vec();
        v.coords = flat[8..].to_vec();
        let next = if u.is_zero() {
            Point::origin(p.space)
        } else {
            from_oct(&u.mul(&v.invert().map_err(|_| Error::ZeroInverse)?))
        };
        digits.push(fl.digit);
        iterates.push(next);
    }
    let truncated = !terminated && digits.len() >= alg.max_digits;
    Ok(Expansion { digits, iterates, terminated, truncated, ambiguous: false })
}

/// A letter of a Möbius word, in application order (index 0 acts first).
#[derive(Clone, Debug)]
pub enum Letter<C: Coef> {
    /// The preset's inversion (an involution for every catalog preset).
    Inversion,
    Dig(Digit<C>),
}

/// A composition of inversion and digit letters.
#[derive(Clone, Debug)]
pub struct Word<C: Coef> {
    pub letters: Vec<Letter<C>>,
}

impl<C: Coef> Word<C> {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// The convergent map `M_i = ι⁻¹ a₁ ι⁻¹ a₂ ⋯ ι⁻¹ a_i` in application
    /// order (`a_i` first). `M_0` is the identity.
    pub fn convergent(digits: &[Digit<C>], i: usize) -> Self {
        assert!(i <= digits.len());
        let mut letters = Vec::with_capacity(2 * i);
        for j in (0..i).rev() {
            letters.push(Letter::Dig(digits[j].clone()));
            letters.push(Letter::Inversion);
        }
        Word { letters }
    }

    /// Apply the word to an extended boundary point, functionally
    /// (letter 0 first); works for every preset including the octonionic one.
    pub fn apply_boundary(&self, preset: &Preset<C>, x: &Ext<Point<C>>) -> Ext<Point<C>> {
        let mut cur = x.clone();
        for letter in &self.letters {
            cur = match letter {
                Letter::Inversion => invert_boundary(preset.space, &preset.inversion, &cur),
                Letter::Dig(d) => match cur {
                    Ext::Infinity => Ext::Infinity,
                    Ext::Finite(q) => Ext::Finite(preset.apply_digit(d, &q)),
                },
            };
        }
        cur
    }

    /// The matrix of the word (kinds with a matrix route): product of the
    /// letter matrices in composition order.
    pub fn as_matrix(&self, preset: &Preset<C>) -> Result<Matrix<C>> {
        let mut m = Matrix::identity(preset.space.kind, preset.space.phi_len());
        // composition order is the reverse of application order
        for letter in self.letters.iter().rev() {
            let lm = match letter {
                Letter::Inversion => preset.inversion_matrix()?,
                Letter::Dig(d) => preset.digit_to_matrix(d)?,
            };
            m = m.mat_mul(&lm)?;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Incrementally maintained convergent matrices `M_0, …, M_n`, with
/// `M_{i+1} = M_i · (J_ι · A_{a_{i+1}})`.
pub fn convergent_matrices<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
) -> Result<Vec<Matrix<C>>> {
    let j = preset.inversion_matrix()?;
    let mut out = Vec::with_capacity(digits.len() + 1);
    let mut m = Matrix::identity(preset.space.kind, preset.space.phi_len());
    out.push(m.clone());
    for d in digits {
        let a = preset.digit_to_matrix(d)?;
        m = m.mat_mul(&j)?.mat_mul(&a)?;
        out.push(m.clone());
    }
    Ok(out)
}

/// The `i`-th convergent `M_i(0)` as an extended boundary point.
pub fn convergent_point<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    i: usize,
) -> Ext<Point<C>> {
    let w = Word::convergent(digits, i);
    w.apply_boundary(preset, &Ext::Finite(Point::origin(preset.space)))
}

/// Cygan distance from the `i`-th convergent to `x` (float value).
pub fn convergent_error<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    i: usize,
    x: &Point<C>,
) -> Result<f64> {
    match convergent_point(preset, digits, i) {
        Ext::Infinity => Err(Error::BadExpansion(
            "convergent at ∞: digit sequence invalid for the preset".into(),
        )),
        Ext::Finite(p) => Ok(cygan_distance(&p, x)),
    }
}

/// The denominator `q_m`: first coordinate of `M_m φ(0)`, i.e. the top-left
/// matrix entry. Not representable for the octonionic preset.
pub fn denominator<C: Coef>(
    preset: &Preset<C>,
    digits: &[Digit<C>],
    m: usize,
) -> Result<Scalar<C>> {
    if !preset.matrix_route {
        return Err(Error::Unsupported(
            "denominators are not representable without the matrix route".into(),
        ));
    }
    let w = Word::convergent(digits, m);
    let mat = w.as_matrix(preset)?;
    Ok(mat.at(0, 0).clone())
}

/// Smallest offsets `(k, k')` — minimal `k + k'`, then minimal `k` — such
/// that `a[k..]` and `b[k'..]` agree over their overlap of length at least
/// `min_overlap`, with offsets bounded by `window`.
pub fn tail_equal(
    a: &[DigitKey],
    b: &[DigitKey],
    window: usize,
    min_overlap: usize,
) -> Option<(usize, usize)> {
    for sum in 0..=(2 * window) {
        for k in 0..=sum.min(window) {
            let kp = sum - k;
            if kp > window || k > a.len() || kp > b.len() {
                continue;
            }
            let overlap = (a.len() - k).min(b.len() - kp);
            if overlap < min_overlap {
                continue;
            }
            if (0..overlap).all(|i| a[k + i] == b[kp + i]) {
                return Some((k, kp));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraKind, Exq};
    use crate::lattice::{point_from_coords, PresetId};
    use crate::space::SpaceParams;

    fn alg(id: PresetId) -> CfAlgorithm<Exq> {
        CfAlgorithm::new(Preset::build(id).unwrap())
    }

    fn r1(n: i64, d: i64) -> Point<Exq> {
        point_from_coords(SpaceParams::new(AlgebraKind::R, 1), &[Exq::from_ratio(n, d)], &[])
    }

    #[test]
    fn gauss_fixed_point_at_zero() {
        let a = alg(PresetId::NearestIntegerPlus);
        assert!(gauss_step(&a, &r1(0, 1)).unwrap().is_none());
        assert!(matches!(gauss_step(&a, &r1(7, 10)), Err(Error::OutsideDomain)));
    }

    #[test]
    fn nearest_integer_five_twelfths() {
        // oracle: 1/(2 + 1/(3 + 1/(−2))) evaluated with exact rationals
        let a = alg(PresetId::NearestIntegerPlus);
        let x = r1(5, 12);
        let (d1, next, _) = gauss_step(&a, &x).unwrap().unwrap();
        assert_eq!(d1.z_idx, vec![2]);
        assert_eq!(next, r1(2, 5));
        let e = expand(&a, &x).unwrap();
        let idxs: Vec<i64> = e.digits.iter().map(|d| d.z_idx[0]).collect();
        assert_eq!(idxs, vec![2, 3, -2]);
        assert!(e.terminated);
        assert!(!e.truncated);
        let inv = |v: Exq| v.recip().unwrap();
        let chain =
            inv(Exq::from_int(2).add(&inv(Exq::from_int(3).add(&inv(Exq::from_int(-2))))));
        assert_eq!(chain, Exq::from_ratio(5, 12));
        let m3 = convergent_point(&a.preset, &e.digits, 3).finite().unwrap();
        assert_eq!(m3, x);
        assert_eq!(convergent_point(&a.preset, &e.digits, 0).finite().unwrap(), r1(0, 1));
    }

    #[test]
    fn hurwitz_gaussian_rational_terminates() {
        // x = (2+i)/5: ι_c gives exactly 2 − i, digit (2,−1), then 0
        let a = alg(PresetId::Hurwitz);
        let x = point_from_coords(
            a.preset.space,
            &[Exq::from_ratio(2, 5), Exq::from_ratio(1, 5)],
            &[],
        );
        let e = expand(&a, &x).unwrap();
        assert_eq!(e.digits.len(), 1);
        assert_eq!(e.digits[0].z_idx, vec![2, -1]);
        assert!(e.terminated);
        assert_eq!(convergent_point(&a.preset, &e.digits, 1).finite().unwrap(), x);
    }

    #[test]
    fn reconstruction_along_iterates() {
        // M_i(x_i) = x_0 exactly, several presets
        for id in [
            PresetId::NearestIntegerMinus,
            PresetId::Hurwitz,
            PresetId::FoldedHurwitz,
            PresetId::Heisenberg,
            PresetId::Rosen(5),
        ] {
            let a = alg(id);
            let x = sample_point(&a.preset, 3);
            let e = expand(&a, &x).unwrap();
            assert!(e.digits.len() >= 3, "want a few digits for {id}");
            for i in 0..=e.digits.len().min(6) {
                let w = Word::convergent(&e.digits, i);
                let back = w
                    .apply_boundary(&a.preset, &Ext::Finite(e.iterates[i].clone()))
                    .finite()
                    .unwrap();
                assert_eq!(back, x, "M_{i}(x_{i}) ≠ x_0 for {id}");
            }
        }
    }

    fn sample_point(p: &Preset<Exq>, salt: i64) -> Point<Exq> {
        let dz = p.space.n * p.space.kind.dim();
        let dt = p.space.kind.dim() - 1;
        let zc: Vec<Exq> = (0..dz)
            .map(|i| Exq::from_ratio(23 + 7 * salt + 3 * i as i64, 97 + 10 * i as i64))
            .collect();
        let tc: Vec<Exq> =
            (0..dt).map(|i| Exq::from_ratio(11 + 5 * salt + i as i64, 89)).collect();
        let x = point_from_coords(p.space, &zc, &tc);
        normalize_into_domain(p, &x).1
    }

    #[test]
    fn matrix_route_equals_functional_route() {
        for id in [PresetId::NearestIntegerMinus, PresetId::Hurwitz, PresetId::Heisenberg] {
            let a = alg(id);
            let x = sample_point(&a.preset, 5);
            let e = expand(&a, &x).unwrap();
            let i = e.digits.len().min(5);
            let w = Word::convergent(&e.digits, i);
            let m = w.as_matrix(&a.preset).unwrap();
            for probe in [sample_point(&a.preset, 1), Point::origin(a.preset.space)] {
                let via_fun = w.apply_boundary(&a.preset, &Ext::Finite(probe.clone()));
                let via_mat =
                    mobius_apply_boundary(a.preset.space, &m, &Ext::Finite(probe)).unwrap();
                assert_eq!(via_fun, via_mat, "{id}");
            }
            let mats = convergent_matrices(&a.preset, &e.digits[..i]).unwrap();
            assert_eq!(mats[i], m, "{id}");
        }
    }

    #[test]
    fn octonionic_rational_expansion() {
        let a = alg(PresetId::Octonionic);
        let zc: Vec<Exq> = (0..8).map(|i| Exq::from_ratio(5 + 3 * i as i64, 31)).collect();
        let x0 = point_from_coords(a.preset.space, &zc, &[]);
        let x = normalize_into_domain(&a.preset, &x0).1;
        let e = expand(&a, &x).unwrap();
        assert!(e.terminated, "rational octonion expansion must terminate");
        let i = e.digits.len();
        assert!(i >= 1);
        let back = convergent_point(&a.preset, &e.digits, i).finite().unwrap();
        assert_eq!(back, x, "octonionic convergent must reconstruct exactly");
        assert!(denominator(&a.preset, &e.digits, 1).is_err());
    }

    #[test]
    fn hurwitz_denominators_are_gaussian_norms() {
        let a = alg(PresetId::Hurwitz);
        let x = sample_point(&a.preset, 2);
        let e = expand(&a, &x).unwrap();
        for m in 1..=e.digits.len().min(6) {
            let q = denominator(&a.preset, &e.digits, m).unwrap();
            // in the real 4×4 representation the top-left entry is (up to
            // sign) the squared modulus of the classical Gaussian
            // denominator: a nonzero integer
            let v = q.coords[0].clone();
            assert!(v.is_rational());
            let r = v.as_rational().unwrap();
            assert!(r.is_integer());
            use num_traits::Signed;
            assert!(r.abs() >= num_rational::BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn float_expansion_matches_exact_prefix() {
        let ax = alg(PresetId::Hurwitz);
        let af = CfAlgorithm::<f64>::new(Preset::build(PresetId::Hurwitz).unwrap());
        let x = point_from_coords(
            ax.preset.space,
            &[Exq::from_ratio(13, 37), Exq::from_ratio(-9, 41)],
            &[],
        );
        let xf = point_from_coords(af.preset.space, &[13.0 / 37.0, -9.0 / 41.0], &[]);
        let ex = expand(&ax, &x).unwrap();
        let ef = expand(&af, &xf).unwrap();
        let n = ex.digits.len().min(ef.digits.len()).min(5);
        for i in 0..n {
            assert_eq!(ex.digits[i].z_idx, ef.digits[i].z_idx, "digit {i}");
        }
    }

    #[test]
    fn tail_equal_basics() {
        let a = alg(PresetId::NearestIntegerPlus);
        let mk = |vals: &[i64]| -> Vec<DigitKey> {
            vals.iter().map(|&v| a.preset.digit_from_indices(0, &[v], &[]).key()).collect()
        };
        let s = mk(&[2, 3, -2, 5, 4, -3, 2, 2]);
        assert_eq!(tail_equal(&s, &s, 10, 2), Some((0, 0)));
        let shifted = s[3..].to_vec();
        assert_eq!(tail_equal(&s, &shifted, 10, 2), Some((3, 0)));
        let other = mk(&[9, 9, 9, 9, 9, 9, 9, 9]);
        assert_eq!(tail_equal(&s, &other, 3, 3), None);
    }

    #[test]
    fn truncation_flag_and_regular_digits() {
        let a = CfAlgorithm::with_max_digits(Preset::<f64>::build(PresetId::Regular).unwrap(), 8);
        let x = point_from_coords(a.preset.space, &[std::f64::consts::E - 2.0], &[]);
        let e = expand(&a, &x).unwrap();
        assert!(e.truncated);
        assert!(!e.terminated);
        assert_eq!(e.digits.len(), 8);
        // regular CF of e − 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, …]
        let idxs: Vec<i64> = e.digits.iter().map(|d| d.z_idx[0]).collect();
        assert_eq!(idxs, vec![1, 2, 1, 1, 4, 1, 1, 6]);
    }
}
