//! Arithmetic over the four real division algebras, in two backends.

pub mod coef;
pub mod exq;
pub mod matrix;

pub use coef::Coef;
pub use exq::Exq;
pub use matrix::Matrix;

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Which division algebra a scalar lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum AlgebraKind {
    R,
    C,
    H,
    O,
}

impl AlgebraKind {
    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::R => 1,
            AlgebraKind::C => 2,
            AlgebraKind::H => 4,
            AlgebraKind::O => 8,
        }
    }

    /// The octonions are only alternative, not associative.
    pub fn is_associative(self) -> bool {
        self != AlgebraKind::O
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::R => "R",
            AlgebraKind::C => "C",
            AlgebraKind::H => "H",
            AlgebraKind::O => "O",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An element of `k` with coordinates in the chosen backend.
///
/// Coordinates follow the basis `1, i` (C), `1, i, j, k` (H, Hamilton
/// relations `i² = j² = k² = −1`, `ij = k`), and `1, e1, …, e7` (O, the
/// Cayley–Dickson double of H with `e4 = ℓ`).
#[derive(Clone, PartialEq)]
pub struct Scalar<C: Coef> {
    pub kind: AlgebraKind,
    pub coords: Vec<C>,
}

impl<C: Coef> Scalar<C> {
    pub fn new(kind: AlgebraKind, coords: Vec<C>) -> Self {
        assert_eq!(coords.len(), kind.dim(), "coordinate count must match the algebra");
        Scalar { kind, coords }
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Scalar::new(kind, vec![C::zero(); kind.dim()])
    }

    pub fn one(kind: AlgebraKind) -> Self {
        let mut c = vec![C::zero(); kind.dim()];
        c[0] = C::one();
        Scalar::new(kind, c)
    }

    /// Basis unit `e_idx` (index 0 is the real unit).
    pub fn unit(kind: AlgebraKind, idx: usize) -> Self {
        let mut c = vec![C::zero(); kind.dim()];
        c[idx] = C::one();
        Scalar::new(kind, c)
    }

    pub fn from_int(kind: AlgebraKind, v: i64) -> Self {
        let mut c = vec![C::zero(); kind.dim()];
        c[0] = C::from_int(v);
        Scalar::new(kind, c)
    }

    pub fn from_real(kind: AlgebraKind, re: C) -> Self {
        let mut c = vec![C::zero(); kind.dim()];
        c[0] = re;
        Scalar::new(kind, c)
    }

    pub fn re(&self) -> &C {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Purely imaginary: real part zero.
    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }

    fn check_kind(&self, o: &Self) -> Result<()> {
        if self.kind != o.kind {
            return Err(Error::KindMismatch(self.kind.name(), o.kind.name()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_kind(o).expect("kind mismatch");
        Scalar::new(
            self.kind,
            self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_kind(o).expect("kind mismatch");
        Scalar::new(
            self.kind,
            self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Scalar::new(self.kind, self.coords.iter().map(|a| a.neg()).collect())
    }

    /// Negate the imaginary coordinates.
    pub fn conjugate(&self) -> Self {
        let mut c: Vec<C> = self.coords.iter().map(|a| a.neg()).collect();
        c[0] = self.coords[0].clone();
        Scalar::new(self.kind, c)
    }

    /// The imaginary part as a scalar (real coordinate zeroed).
    pub fn imaginary_part(&self) -> Self {
        let mut c = self.coords.clone();
        c[0] = C::zero();
        Scalar::new(self.kind, c)
    }

    pub fn scale(&self, r: &C) -> Self {
        Scalar::new(self.kind, self.coords.iter().map(|a| a.mul(r)).collect())
    }

    /// Squared Euclidean norm; exact in the rational backend.
    pub fn norm_sq(&self) -> C {
        self.coords
            .iter()
            .fold(C::zero(), |acc, a| acc.add(&a.mul(a)))
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    /// Algebra product. Associative for R, C, H; alternative for O.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_kind(o).expect("kind mismatch");
        match self.kind {
            AlgebraKind::R => Scalar::new(self.kind, vec![self.coords[0].mul(&o.coords[0])]),
            AlgebraKind::C => {
                let (a, b) = (&self.coords[0], &self.coords[1]);
                let (c, d) = (&o.coords[0], &o.coords[1]);
                Scalar::new(
                    self.kind,
                    vec![a.mul(c).sub(&b.mul(d)), a.mul(d).add(&b.mul(c))],
                )
            }
            AlgebraKind::H => Scalar::new(self.kind, quat_mul(&self.coords, &o.coords)),
            AlgebraKind::O => {
                // Cayley–Dickson: (a,b)(c,d) = (ac − d̄b, da + bc̄)
                let (a, b) = (&self.coords[..4], &self.coords[4..]);
                let (c, d) = (&o.coords[..4], &o.coords[4..]);
                let d_conj = quat_conj(d);
                let c_conj = quat_conj(c);
                let left = sub4(&quat_mul(a, c), &quat_mul(&d_conj, b));
                let right = add4(&quat_mul(d, a), &quat_mul(b, &c_conj));
                let mut coords = left;
                coords.extend(right);
                Scalar::new(self.kind, coords)
            }
        }
    }

    /// `a⁻¹ = conj(a)/‖a‖²`; two-sided inverse in every kind.
    pub fn invert(&self) -> Result<Self> {
        let n = self.norm_sq();
        let inv = n.recip().ok_or(Error::ZeroInverse)?;
        Ok(self.conjugate().scale(&inv))
    }

    /// Right division `self · o⁻¹`.
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.invert()?))
    }

    pub fn to_f64_coords(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }
}

impl<C: Coef> fmt::Debug for Scalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 8] = ["", "i", "j", "k", "e4", "e5", "e6", "e7"];
        let mut first = true;
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:?}){}", c, UNITS[idx])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn quat_mul<C: Coef>(a: &[C], b: &[C]) -> Vec<C> {
    // Hamilton: (a0 + a1 i + a2 j + a3 k)(b0 + b1 i + b2 j + b3 k)
    let m = |x: &C, y: &C| x.mul(y);
    vec![
        m(&a[0], &b[0])
            .sub(&m(&a[1], &b[1]))
            .sub(&m(&a[2], &b[2]))
            .sub(&m(&a[3], &b[3])),
        m(&a[0], &b[1])
            .add(&m(&a[1], &b[0]))
            .add(&m(&a[2], &b[3]))
            .sub(&m(&a[3], &b[2])),
        m(&a[0], &b[2])
            .sub(&m(&a[1], &b[3]))
            .add(&m(&a[2], &b[0]))
            .add(&m(&a[3], &b[1])),
        m(&a[0], &b[3])
            .add(&m(&a[1], &b[2]))
            .sub(&m(&a[2], &b[1]))
            .add(&m(&a[3], &b[0])),
    ]
}

fn quat_conj<C: Coef>(a: &[C]) -> Vec<C> {
    vec![a[0].clone(), a[1].neg(), a[2].neg(), a[3].neg()]
}

fn add4<C: Coef>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn sub4<C: Coef>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Compare two real scalar values (kind R helper used by floors).
pub fn cmp_scalar_real<C: Coef>(a: &Scalar<C>, b: &Scalar<C>) -> Ordering {
    debug_assert!(a.is_real() && b.is_real());
    a.coords[0].cmp_real(&b.coords[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    type Sx = Scalar<Exq>;

    fn c(re: i64, im: i64) -> Sx {
        Scalar::new(AlgebraKind::C, vec![Exq::from_int(re), Exq::from_int(im)])
    }

    #[test]
    fn complex_identity_times_i() {
        let one = c(1, 0);
        let i = c(0, 1);
        assert_eq!(one.mul(&i), i);
    }

    #[test]
    fn hamilton_table() {
        // Oracle: the Hamilton relations themselves, written out directly.
        let i = Sx::unit(AlgebraKind::H, 1);
        let j = Sx::unit(AlgebraKind::H, 2);
        let k = Sx::unit(AlgebraKind::H, 3);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&j), i.neg());
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&k), j.neg());
        for u in [&i, &j, &k] {
            assert_eq!(u.mul(u), Sx::from_int(AlgebraKind::H, -1));
        }
        assert_eq!(j.invert().unwrap(), j.neg());
    }

    #[test]
    fn octonion_nonassociative_witness() {
        // Cayley–Dickson oracle: e1e2 = e3, e3e4 = e7, e2e4 = e6, e1e6 = −e7.
        let e = |i: usize| Sx::unit(AlgebraKind::O, i);
        assert_eq!(e(1).mul(&e(2)), e(3));
        assert_eq!(e(3).mul(&e(4)), e(7));
        assert_eq!(e(2).mul(&e(4)), e(6));
        assert_eq!(e(1).mul(&e(6)), e(7).neg());
        let lhs = e(1).mul(&e(2)).mul(&e(4));
        let rhs = e(1).mul(&e(2).mul(&e(4)));
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn octonion_alternative_laws() {
        let pts = sample_octonions();
        for a in &pts {
            for b in &pts {
                assert_eq!(a.mul(&a.mul(b)), a.mul(a).mul(b));
                assert_eq!(a.mul(b).mul(b), a.mul(&b.mul(b)));
            }
        }
    }

    #[test]
    fn norm_multiplicative_exact() {
        let pts = sample_octonions();
        for a in &pts {
            for b in &pts {
                assert_eq!(a.mul(b).norm_sq(), a.norm_sq().mul(&b.norm_sq()));
            }
        }
    }

    #[test]
    fn conjugate_antihomomorphism() {
        let pts = sample_quaternions();
        for a in &pts {
            assert_eq!(a.conjugate().conjugate(), *a);
            for b in &pts {
                assert_eq!(a.mul(b).conjugate(), b.conjugate().mul(&a.conjugate()));
            }
        }
    }

    #[test]
    fn inverse_two_sided() {
        for a in sample_quaternions() {
            if a.is_zero() {
                continue;
            }
            let inv = a.invert().unwrap();
            assert_eq!(a.mul(&inv), Sx::one(AlgebraKind::H));
            assert_eq!(inv.mul(&a), Sx::one(AlgebraKind::H));
        }
        let x = c(1, 1);
        // invert(1+i) = (1−i)/2
        let expect = Scalar::new(
            AlgebraKind::C,
            vec![Exq::from_ratio(1, 2), Exq::from_ratio(-1, 2)],
        );
        assert_eq!(x.invert().unwrap(), expect);
    }

    #[test]
    fn norm_three_four_five() {
        let z = c(3, 4);
        assert_eq!(z.norm_sq(), Exq::from_int(25));
        assert!((z.norm() - 5.0).abs() < 1e-12);
    }

    fn sample_quaternions() -> Vec<Sx> {
        let mut v = Vec::new();
        let vals = [-2i64, 1, 3];
        for a in vals {
            for b in vals {
                v.push(Scalar::new(
                    AlgebraKind::H,
                    vec![
                        Exq::from_int(a),
                        Exq::from_ratio(b, 2),
                        Exq::from_int(b - a),
                        Exq::from_ratio(a, 3),
                    ],
                ));
            }
        }
        v
    }

    fn sample_octonions() -> Vec<Sx> {
        let mut v = Vec::new();
        for s in 0..6i64 {
            let coords: Vec<Exq> = (0..8)
                .map(|i| Exq::from_ratio((s * 7 + i as i64 * 3) % 5 - 2, 1 + (i as i64 % 3)))
                .collect();
            v.push(Scalar::new(AlgebraKind::O, coords));
        }
        v
    }
}
