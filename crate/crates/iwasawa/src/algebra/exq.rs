//! Exact real coordinates in a biquadratic extension `Q(√2, √m)`.
//!
//! Every Table-1 preset needs at most one real quadratic irrationality `√m`
//! (hexagonal `√3`, Rosen `λ = 2cos(π/q)` for `q ≤ 6`, Bianchi `√d`) on top
//! of the `√2` that appears in the projective embedding, so a fixed basis
//! `1, √2, √m, √2m` over the rationals is enough for exact floor decisions,
//! matrix words, and projective canonicalization.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `a + b·√2 + c·√m + d·√(2m)` with rational components.
///
/// `m` is a square-free integer ≥ 3 (values 1 and 2 are canonicalized away:
/// a plain rational or `Q(√2)` element carries `m = 1` with `c = d = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exq {
    pub m: u32,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Exq {
    pub fn rational(r: BigRational) -> Self {
        Exq { m: 1, a: r, b: BigRational::zero(), c: BigRational::zero(), d: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(brat(v, 1))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::rational(brat(n, d))
    }

    /// Construct `a + b√2 + c√m + d√2m`, canonicalizing m ∈ {1,2}.
    pub fn new(m: u32, a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        match m {
            0 => panic!("m must be positive"),
            1 => Exq { m: 1, a: a + c, b: b + d, c: BigRational::zero(), d: BigRational::zero() },
            2 => Exq {
                m: 1,
                a: a + BigRational::from(BigInt::from(2)) * d,
                b: b + c,
                c: BigRational::zero(),
                d: BigRational::zero(),
            },
            _ => Exq { m, a, b, c, d },
        }
    }

    pub fn sqrt2() -> Self {
        Exq { m: 1, a: BigRational::zero(), b: BigRational::one(), c: BigRational::zero(), d: BigRational::zero() }
    }

    /// The basis element `√m`.
    pub fn sqrt_m(m: u32) -> Self {
        match m {
            1 => Self::from_int(1),
            2 => Self::sqrt2(),
            _ => Exq {
                m,
                a: BigRational::zero(),
                b: BigRational::zero(),
                c: BigRational::one(),
                d: BigRational::zero(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Reset the field tag to 1 when the √m components vanish, so equality
    /// and hashing are representation-independent.
    fn normalized(mut self) -> Self {
        if self.m != 1 && self.c.is_zero() && self.d.is_zero() {
            self.m = 1;
        }
        self
    }

    /// Unified field tag of two operands. Mixing two distinct genuine
    /// extensions is a programming error (presets never do).
    fn join_m(&self, o: &Self) -> u32 {
        if self.m == o.m {
            self.m
        } else if self.c.is_zero() && self.d.is_zero() {
            o.m
        } else if o.c.is_zero() && o.d.is_zero() {
            self.m
        } else {
            panic!("incompatible quadratic extensions: √{} vs √{}", self.m, o.m)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.join_m(o);
        Exq { m, a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
            .normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.join_m(o);
        Exq { m, a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
            .normalized()
    }

    pub fn neg(&self) -> Self {
        Exq { m: self.m, a: -self.a.clone(), b: -self.b.clone(), c: -self.c.clone(), d: -self.d.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.join_m(o);
        let mv = BigRational::from(BigInt::from(m as i64));
        let two = BigRational::from(BigInt::from(2));
        let tm = &two * &mv;
        // (a1 + b1√2 + c1√m + d1√2m)(a2 + b2√2 + c2√m + d2√2m)
        let a = &self.a * &o.a
            + &two * (&self.b * &o.b)
            + &mv * (&self.c * &o.c)
            + &tm * (&self.d * &o.d);
        let b = &self.a * &o.b + &self.b * &o.a + &mv * (&self.c * &o.d + &self.d * &o.c);
        let c = &self.a * &o.c + &self.c * &o.a + &two * (&self.b * &o.d + &self.d * &o.b);
        let d = &self.a * &o.d + &self.d * &o.a + &self.b * &o.c + &self.c * &o.b;
        Exq { m, a, b, c, d }.normalized()
    }

    /// Galois conjugate √2 → −√2.
    fn conj2(&self) -> Self {
        Exq { m: self.m, a: self.a.clone(), b: -self.b.clone(), c: self.c.clone(), d: -self.d.clone() }
    }

    /// Galois conjugate √m → −√m.
    fn conj_m(&self) -> Self {
        Exq { m: self.m, a: self.a.clone(), b: self.b.clone(), c: -self.c.clone(), d: -self.d.clone() }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::rational(self.a.recip()));
        }
        // x · σ2(x) lies in Q(√m); multiply by its √m-conjugate to reach Q.
        let y = self.mul(&self.conj2()); // b = d = 0
        let n = y.mul(&y.conj_m()); // rational
        let n = n.a;
        debug_assert!(!n.is_zero());
        let inv = self.conj2().mul(&y.conj_m());
        let s = n.recip();
        Some(
            Exq { m: inv.m, a: &inv.a * &s, b: &inv.b * &s, c: &inv.c * &s, d: &inv.d * &s }
                .normalized(),
        )
    }

    pub fn to_f64(&self) -> f64 {
        let r = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let m = self.m as f64;
        r(&self.a) + r(&self.b) * 2f64.sqrt() + r(&self.c) * m.sqrt() + r(&self.d) * (2.0 * m).sqrt()
    }

    /// Exact sign via interval refinement of √2 and √m. Terminates because
    /// `1, √2, √m, √2m` are linearly independent over Q for square-free m ≥ 3.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.is_rational() {
            return rational_sign(&self.a);
        }
        let mut prec: u32 = 24;
        loop {
            let (lo2, hi2) = sqrt_bounds(2, prec);
            let (lom, him) = sqrt_bounds(self.m as u64, prec);
            let (lo2m, hi2m) = sqrt_bounds(2 * self.m as u64, prec);
            let lo = &self.a
                + interval_mul_lo(&self.b, &lo2, &hi2)
                + interval_mul_lo(&self.c, &lom, &him)
                + interval_mul_lo(&self.d, &lo2m, &hi2m);
            let hi = &self.a
                + interval_mul_hi(&self.b, &lo2, &hi2)
                + interval_mul_hi(&self.c, &lom, &him)
                + interval_mul_hi(&self.d, &lo2m, &hi2m);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            prec *= 2;
            assert!(prec <= 1 << 20, "sign refinement failed to converge");
        }
    }

    pub fn cmp_real(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Nearest integer under the half-open convention `[n − 1/2, n + 1/2)`.
    pub fn round_nearest_int(&self) -> i64 {
        let half = Exq::from_ratio(1, 2);
        let guess = self.to_f64().round() as i64;
        let mut n = guess;
        loop {
            let diff = self.sub(&Exq::from_int(n));
            // want diff ∈ [−1/2, 1/2)
            if diff.cmp_real(&half.neg()) == Ordering::Less {
                n -= 1;
            } else if diff.cmp_real(&half) != Ordering::Less {
                n += 1;
            } else {
                return n;
            }
        }
    }

    /// Exact floor.
    pub fn floor_int(&self) -> i64 {
        let guess = self.to_f64().floor() as i64;
        let mut n = guess;
        loop {
            let diff = self.sub(&Exq::from_int(n));
            if diff.sign() == Ordering::Less {
                n -= 1;
            } else if diff.cmp_real(&Exq::from_int(1)) != Ordering::Less {
                n += 1;
            } else {
                return n;
            }
        }
    }

    /// Divide all components by a common rational factor (content reduction
    /// for projective vectors).
    pub fn div_rational(&self, r: &BigRational) -> Self {
        let s = r.recip();
        Exq { m: self.m, a: &self.a * &s, b: &self.b * &s, c: &self.c * &s, d: &self.d * &s }
    }

    /// Rational "content" data of the components, used to reduce projective
    /// vectors: gcd of numerators and lcm of denominators.
    pub fn content(&self) -> (BigInt, BigInt) {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for x in [&self.a, &self.b, &self.c, &self.d] {
            if !x.is_zero() {
                g = g.gcd(x.numer());
                l = l.lcm(x.denom());
            }
        }
        (g, l)
    }
}

fn rational_sign(x: &BigRational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn interval_mul_lo(coef: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    if coef.is_negative() {
        coef * hi
    } else {
        coef * lo
    }
}

fn interval_mul_hi(coef: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    if coef.is_negative() {
        coef * lo
    } else {
        coef * hi
    }
}

/// Rational enclosure `lo ≤ √v ≤ hi` with `hi − lo = 2^{−prec}`-ish,
/// computed from the integer square root of `v · 4^prec`.
fn sqrt_bounds(v: u64, prec: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << prec;
    let scaled = BigInt::from(v) * (&scale * &scale);
    let root = scaled.sqrt(); // floor sqrt
    let lo = BigRational::new(root.clone(), scale.clone());
    let hi = BigRational::new(root + 1, scale);
    (lo, hi)
}

impl fmt::Debug for Exq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        write!(f, "{}", self.a)?;
        if !self.b.is_zero() {
            write!(f, "+({})√2", self.b)?;
        }
        if !self.c.is_zero() {
            write!(f, "+({})√{}", self.c, self.m)?;
        }
        if !self.d.is_zero() {
            write!(f, "+({})√{}", self.d, 2 * self.m)?;
        }
        Ok(())
    }
}

impl fmt::Display for Exq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sign of a `BigInt`, exposed for matrix canonicalization.
pub fn bigint_sign(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let x = Exq::sqrt2();
        let two = x.mul(&x);
        assert_eq!(two, Exq::from_int(2));
        let inv = x.recip().unwrap();
        assert_eq!(x.mul(&inv), Exq::from_int(1));
    }

    #[test]
    fn arithmetic_in_biquadratic() {
        // (1 + √2 + √3 + √6) has an exact inverse in Q(√2, √3).
        let one = Exq::from_int(1);
        let x = one
            .add(&Exq::sqrt2())
            .add(&Exq::sqrt_m(3))
            .add(&Exq::sqrt2().mul(&Exq::sqrt_m(3)));
        let inv = x.recip().unwrap();
        assert_eq!(x.mul(&inv), Exq::from_int(1));
        // √3 · √3 = 3, √2 · √3 = √6 with (√6)² = 6
        let r6 = Exq::sqrt2().mul(&Exq::sqrt_m(3));
        assert_eq!(r6.mul(&r6), Exq::from_int(6));
    }

    #[test]
    fn exact_signs() {
        // √2 + √3 − √6 + 1 − 2.146... > 0 style checks near zero
        let x = Exq::sqrt2().add(&Exq::sqrt_m(3)).sub(&Exq::sqrt_m(3).mul(&Exq::sqrt2()));
        // √2 + √3 − √6 ≈ 0.6967
        assert_eq!(x.sign(), Ordering::Greater);
        let y = x.sub(&Exq::from_ratio(6967, 10000));
        assert_eq!(y.sign(), Ordering::Greater);
        let z = x.sub(&Exq::from_ratio(6968, 10000));
        assert_eq!(z.sign(), Ordering::Less);
    }

    #[test]
    fn rounding() {
        assert_eq!(Exq::from_ratio(12, 5).round_nearest_int(), 2);
        assert_eq!(Exq::from_ratio(5, 2).round_nearest_int(), 3); // half-open tie
        assert_eq!(Exq::from_ratio(-1, 2).round_nearest_int(), 0);
        assert_eq!(Exq::from_ratio(-3, 2).round_nearest_int(), -1);
        assert_eq!(Exq::sqrt2().floor_int(), 1);
        assert_eq!(Exq::sqrt2().neg().floor_int(), -2);
        // golden ratio (1+√5)/2 rounds to 2
        let phi = Exq::from_int(1).add(&Exq::sqrt_m(5)).mul(&Exq::from_ratio(1, 2));
        assert_eq!(phi.round_nearest_int(), 2);
    }
}
