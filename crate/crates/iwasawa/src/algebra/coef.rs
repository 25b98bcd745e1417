//! Coordinate backends: exact quadratic rationals and doubles.

use super::exq::Exq;
use std::cmp::Ordering;
use std::fmt::Debug;

/// A real coordinate type usable by every layer of the crate.
///
/// Two implementations exist: [`Exq`] (exact, default for digit extraction
/// and word search) and `f64` (statistics and geodesics). All decisions that
/// touch cell boundaries go through [`Coef::cmp_real`] so the exact backend
/// decides them exactly.
pub trait Coef: Clone + PartialEq + Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    /// √2, exact in the quadratic backend.
    fn sqrt2() -> Self;
    /// √m for square-free m (m = 1 gives 1).
    fn sqrt_m(m: u32) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` on zero.
    fn recip(&self) -> Option<Self>;

    fn is_zero(&self) -> bool;
    /// Sign versus zero; exact backend decides exactly.
    fn sign(&self) -> Ordering;
    fn cmp_real(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }
    fn to_f64(&self) -> f64;
    /// Float-backend fuzz guard: true when the two values are within `tol`.
    /// The exact backend returns plain equality (never ambiguous).
    fn near(&self, o: &Self, tol: f64) -> bool;
    /// Nearest integer under the half-open convention `[n−1/2, n+1/2)`.
    fn round_nearest_int(&self) -> i64;
    fn floor_int(&self) -> i64;
    /// Lossy import of a double; `None` for exact backends, which only
    /// accept exactly representable constants.
    fn from_f64_lossy(v: f64) -> Option<Self>;
    /// Rescale a projective coordinate vector in place: exact backends
    /// divide out the common rational content, floats divide by the sup
    /// norm. Both keep entry growth additive along deep orbits.
    fn normalize_projective(values: &mut [Self]);
}

impl Coef for Exq {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exq::from_int(0)
    }
    fn one() -> Self {
        Exq::from_int(1)
    }
    fn from_int(v: i64) -> Self {
        Exq::from_int(v)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Exq::from_ratio(n, d)
    }
    fn sqrt2() -> Self {
        Exq::sqrt2()
    }
    fn sqrt_m(m: u32) -> Self {
        Exq::sqrt_m(m)
    }
    fn add(&self, o: &Self) -> Self {
        Exq::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Exq::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Exq::mul(self, o)
    }
    fn neg(&self) -> Self {
        Exq::neg(self)
    }
    fn recip(&self) -> Option<Self> {
        Exq::recip(self)
    }
    fn is_zero(&self) -> bool {
        Exq::is_zero(self)
    }
    fn sign(&self) -> Ordering {
        Exq::sign(self)
    }
    fn to_f64(&self) -> f64 {
        Exq::to_f64(self)
    }
    fn near(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }
    fn round_nearest_int(&self) -> i64 {
        Exq::round_nearest_int(self)
    }
    fn floor_int(&self) -> i64 {
        Exq::floor_int(self)
    }
    fn from_f64_lossy(_v: f64) -> Option<Self> {
        None
    }
    fn normalize_projective(values: &mut [Self]) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for v in values.iter() {
            let (cg, cl) = v.content();
            if !cg.is_zero() {
                g = g.gcd(&cg);
                l = l.lcm(&cl);
            }
        }
        if g.is_zero() || (g.is_one() && l.is_one()) {
            return;
        }
        let factor = BigRational::new(g, l);
        for v in values.iter_mut() {
            *v = v.div_rational(&factor);
        }
    }
}

impl Coef for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn sqrt_m(m: u32) -> Self {
        (m as f64).sqrt()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self) -> Ordering {
        self.partial_cmp(&0.0).expect("NaN in coordinate")
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn near(&self, o: &Self, tol: f64) -> bool {
        (self - o).abs() <= tol
    }
    fn round_nearest_int(&self) -> i64 {
        (self + 0.5).floor() as i64
    }
    fn floor_int(&self) -> i64 {
        self.floor() as i64
    }
    fn from_f64_lossy(v: f64) -> Option<Self> {
        Some(v)
    }
    fn normalize_projective(values: &mut [Self]) {
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if scale > 0.0 && scale.is_finite() {
            for v in values.iter_mut() {
                *v /= scale;
            }
        }
    }
}
