//! Fast exact matrix representations for the word search: 2×2 matrices over
//! quadratic integer rings (the representations used for the real and
//! complex presets) and the 3×3 Heisenberg representation over the Gaussian
//! integers with positional √2 bookkeeping.

use std::fmt;

/// A quadratic integer ring `Z[ω]` with `ω² = p + qω`. `real` marks real
/// quadratic rings (whose elements are real numbers, so the Hermitian
/// conjugate is the identity on entries).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RingSpec {
    pub p: i64,
    pub q: i64,
    pub real: bool,
}

impl RingSpec {
    pub const INT: RingSpec = RingSpec { p: 0, q: 0, real: true };
    pub const GAUSS: RingSpec = RingSpec { p: -1, q: 0, real: false };
    pub const EISENSTEIN: RingSpec = RingSpec { p: -1, q: 1, real: false };
    pub const SQRT_MINUS_2: RingSpec = RingSpec { p: -2, q: 0, real: false };
    pub const O7: RingSpec = RingSpec { p: -2, q: 1, real: false };
    pub const O11: RingSpec = RingSpec { p: -3, q: 1, real: false };
    pub const SQRT2: RingSpec = RingSpec { p: 2, q: 0, real: true };
    pub const SQRT3: RingSpec = RingSpec { p: 3, q: 0, real: true };
    pub const GOLDEN: RingSpec = RingSpec { p: 1, q: 1, real: true };

    /// Numeric value of ω as a complex number.
    pub fn omega(&self) -> (f64, f64) {
        let disc = (self.q * self.q + 4 * self.p) as f64;
        if disc >= 0.0 {
            ((self.q as f64 + disc.sqrt()) / 2.0, 0.0)
        } else {
            (self.q as f64 / 2.0, (-disc).sqrt() / 2.0)
        }
    }
}

/// `a + b·ω`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Qelem {
    pub a: i128,
    pub b: i128,
}

impl Qelem {
    pub const ZERO: Qelem = Qelem { a: 0, b: 0 };
    pub const ONE: Qelem = Qelem { a: 1, b: 0 };

    pub fn int(a: i64) -> Qelem {
        Qelem { a: a as i128, b: 0 }
    }

    pub fn omega(b: i64) -> Qelem {
        Qelem { a: 0, b: b as i128 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(&self, o: &Qelem) -> Qelem {
        Qelem { a: self.a + o.a, b: self.b + o.b }
    }

    pub fn sub(&self, o: &Qelem) -> Qelem {
        Qelem { a: self.a - o.a, b: self.b - o.b }
    }

    pub fn neg(&self) -> Qelem {
        Qelem { a: -self.a, b: -self.b }
    }

    pub fn mul(&self, o: &Qelem, ring: RingSpec) -> Qelem {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(p + qω)
        let bd = self.b * o.b;
        Qelem {
            a: self.a * o.a + ring.p as i128 * bd,
            b: self.a * o.b + self.b * o.a + ring.q as i128 * bd,
        }
    }

    /// Ring conjugation (ω ↦ q − ω); identity on real rings' entries only in
    /// the Hermitian sense, but the Galois map is still available.
    pub fn conj(&self, ring: RingSpec) -> Qelem {
        Qelem { a: self.a + ring.q as i128 * self.b, b: -self.b }
    }

    /// Field norm `x · x̄ = a² + qab − p b²` (≥ 0 for imaginary rings).
    pub fn norm(&self, ring: RingSpec) -> i128 {
        self.a * self.a + ring.q as i128 * self.a * self.b - ring.p as i128 * self.b * self.b
    }

    pub fn to_complex(&self, ring: RingSpec) -> (f64, f64) {
        let (wr, wi) = ring.omega();
        (self.a as f64 + self.b as f64 * wr, self.b as f64 * wi)
    }
}

impl fmt::Display for Qelem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else if self.a == 0 {
            write!(f, "{}w", self.b)
        } else {
            write!(f, "{}{:+}w", self.a, self.b)
        }
    }
}

/// A small exact matrix: 2×2, or 3×3 with the Heisenberg √2 positional
/// bookkeeping (entries at positions with exactly one outer index carry an
/// implicit factor √2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SmallMat {
    pub n: usize,
    pub ring: RingSpec,
    /// `true` for the 3×3 Heisenberg representation.
    pub sqrt2_positions: bool,
    pub e: Vec<Qelem>,
}

fn outer(n: usize, i: usize) -> bool {
    i == 0 || i == n - 1
}

fn parity(n: usize, i: usize, j: usize) -> u8 {
    (outer(n, i) ^ outer(n, j)) as u8
}

impl SmallMat {
    pub fn identity2(ring: RingSpec) -> SmallMat {
        SmallMat {
            n: 2,
            ring,
            sqrt2_positions: false,
            e: vec![Qelem::ONE, Qelem::ZERO, Qelem::ZERO, Qelem::ONE],
        }
    }

    pub fn mat2(ring: RingSpec, e: [Qelem; 4]) -> SmallMat {
        SmallMat { n: 2, ring, sqrt2_positions: false, e: e.to_vec() }
    }

    /// Translation `z ↦ u z + a` as `[[u, a], [0, 1]]`.
    pub fn translation2(ring: RingSpec, u: Qelem, a: Qelem) -> SmallMat {
        SmallMat::mat2(ring, [u, a, Qelem::ZERO, Qelem::ONE])
    }

    /// Inversion `z ↦ sign/z` as `[[0, sign], [1, 0]]`.
    pub fn inversion2(ring: RingSpec, sign: i64) -> SmallMat {
        SmallMat::mat2(ring, [Qelem::ZERO, Qelem::int(sign), Qelem::ONE, Qelem::ZERO])
    }

    pub fn identity3(ring: RingSpec) -> SmallMat {
        Self::identity_n(ring, 3)
    }

    /// Identity in the (n+2)-dimensional representation with positional √2
    /// bookkeeping.
    pub fn identity_n(ring: RingSpec, n: usize) -> SmallMat {
        let mut e = vec![Qelem::ZERO; n * n];
        for i in 0..n {
            e[i * n + i] = Qelem::ONE;
        }
        SmallMat { n, ring, sqrt2_positions: true, e }
    }

    /// Translation `A_{(z,t)}` in the (n+2)-representation: stored entries
    /// `[[1,0,0],[z, id, 0],[last, z̄, 1]]` with `last = ‖z‖² + t`.
    pub fn translation_n(ring: RingSpec, z: &[Qelem], last: Qelem) -> SmallMat {
        let n = z.len() + 2;
        let mut m = Self::identity_n(ring, n);
        for (i, zi) in z.iter().enumerate() {
            m.e[(1 + i) * n] = *zi;
            m.e[(n - 1) * n + 1 + i] = zi.conj(ring);
        }
        m.e[(n - 1) * n] = last;
        m
    }

    /// Inversion with scalar middle block `middle·id`:
    /// `[[0,…,−1],[0, middle·id, 0],[−1,…,0]]`.
    pub fn inversion_n(ring: RingSpec, n: usize, middle: i64) -> SmallMat {
        let mut e = vec![Qelem::ZERO; n * n];
        e[n - 1] = Qelem::int(-1);
        e[(n - 1) * n] = Qelem::int(-1);
        for i in 1..n - 1 {
            e[i * n + i] = Qelem::int(middle);
        }
        SmallMat { n, ring, sqrt2_positions: true, e }
    }

    /// Heisenberg translation `A_{(z,t)}` with stored entries
    /// `[[1,0,0],[z,1,0],[‖z‖²+t, z̄, 1]]` (parity-1 slots hold the value
    /// divided by √2).
    pub fn heisenberg_translation(z: Qelem, t_im: i64) -> SmallMat {
        let ring = RingSpec::GAUSS;
        let mut m = SmallMat::identity3(ring);
        let nz = Qelem { a: z.norm(ring), b: 0 };
        m.e[3] = z; // (1,0)
        m.e[7] = z.conj(ring); // (2,1)
        m.e[6] = nz.add(&Qelem::omega(t_im)); // (2,0): ‖z‖² + t·i
        m
    }

    /// Heisenberg inversion `ι₋`: `[[0,0,−1],[0,1,0],[−1,0,0]]`.
    pub fn heisenberg_inversion() -> SmallMat {
        Self::inversion_n(RingSpec::GAUSS, 3, 1)
    }

    /// Heisenberg rotation `diag(1, i^k, 1)`.
    pub fn heisenberg_rotation(k: u32) -> SmallMat {
        let mut m = SmallMat::identity3(RingSpec::GAUSS);
        m.e[4] = match k % 4 {
            1 => Qelem::omega(1),
            2 => Qelem::int(-1),
            3 => Qelem::omega(-1),
            _ => Qelem::ONE,
        };
        m
    }

    pub fn at(&self, i: usize, j: usize) -> Qelem {
        self.e[i * self.n + j]
    }

    pub fn mul(&self, o: &SmallMat) -> SmallMat {
        debug_assert_eq!(self.n, o.n);
        debug_assert_eq!(self.ring, o.ring);
        let n = self.n;
        let mut e = vec![Qelem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Qelem::ZERO;
                for k in 0..n {
                    let mut term = self.at(i, k).mul(&o.at(k, j), self.ring);
                    if self.sqrt2_positions {
                        // both factors carrying √2 contribute a literal 2
                        let d = parity(n, i, k) + parity(n, k, j) - parity(n, i, j);
                        if d == 2 {
                            term = Qelem { a: term.a * 2, b: term.b * 2 };
                        }
                    }
                    acc = acc.add(&term);
                }
                e[i * n + j] = acc;
            }
        }
        SmallMat { n, ring: self.ring, sqrt2_positions: self.sqrt2_positions, e }
    }

    pub fn scale(&self, s: Qelem) -> SmallMat {
        SmallMat {
            n: self.n,
            ring: self.ring,
            sqrt2_positions: self.sqrt2_positions,
            e: self.e.iter().map(|v| v.mul(&s, self.ring)).collect(),
        }
    }

    /// Projective scalars that can relate two group matrices: units `u`
    /// with `u² = ±1`.
    fn dedup_scalars(&self) -> Vec<Qelem> {
        let mut out = vec![Qelem::ONE, Qelem::int(-1)];
        if self.ring == RingSpec::GAUSS {
            out.push(Qelem::omega(1));
            out.push(Qelem::omega(-1));
        }
        out
    }

    /// Canonical representative of the projective class: the scalar multiple
    /// with the lexicographically smallest entry list.
    pub fn canonical(&self) -> SmallMat {
        self.dedup_scalars()
            .into_iter()
            .map(|s| self.scale(s))
            .min_by(|a, b| a.e.cmp(&b.e))
            .expect("scalar set nonempty")
    }

    /// Whether the matrix fixes ∞ (2×2: lower-left zero; 3×3: last column
    /// supported on the last coordinate).
    pub fn fixes_infinity(&self) -> bool {
        match self.n {
            2 => self.at(1, 0).is_zero(),
            _ => (0..self.n - 1).all(|i| self.at(i, self.n - 1).is_zero()),
        }
    }

    /// Whether the matrix also fixes 0.
    pub fn fixes_zero(&self) -> bool {
        match self.n {
            2 => self.at(0, 1).is_zero(),
            _ => (1..self.n).all(|i| self.at(i, 0).is_zero()),
        }
    }

    /// For a diagonal 2×2 (or block-diagonal larger) matrix: whether the
    /// induced boundary map preserves the gauge (a rotation, not a dilation).
    pub fn is_rotation_diag(&self) -> bool {
        if !(self.fixes_infinity() && self.fixes_zero()) {
            return false;
        }
        match self.n {
            2 => {
                let d1 = self.at(0, 0);
                let d2 = self.at(1, 1);
                if self.ring.real {
                    d1 == d2 || d1 == d2.neg()
                } else {
                    d1.norm(self.ring) == d2.norm(self.ring)
                }
            }
            _ => {
                // require full block-diagonal shape
                let n = self.n;
                for j in 1..n - 1 {
                    if !self.at(0, j).is_zero() || !self.at(n - 1, j).is_zero() {
                        return false;
                    }
                }
                let e = self.at(0, 0);
                let d = self.at(n - 1, n - 1);
                !e.is_zero() && e.norm(self.ring) == d.norm(self.ring)
            }
        }
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cols: Vec<String> = (0..self.n)
                    .map(|j| {
                        let v = self.at(i, j);
                        if self.sqrt2_positions && parity(self.n, i, j) == 1 && !v.is_zero() {
                            format!("{}√2", v)
                        } else {
                            format!("{}", v)
                        }
                    })
                    .collect();
                format!("[{}]", cols.join(", "))
            })
            .collect();
        rows.join(" ")
    }
}

/// The 2×2 quotient search: matrices over `Z[ω]/(q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModMat {
    pub e: [(i64, i64); 4],
}

fn modq(v: i128, q: i64) -> i64 {
    (v % q as i128 + q as i128) as i64 % q
}

pub fn reduce_mod(m: &SmallMat, q: i64) -> ModMat {
    assert_eq!(m.n, 2);
    let mut e = [(0i64, 0i64); 4];
    for i in 0..4 {
        e[i] = (modq(m.e[i].a, q), modq(m.e[i].b, q));
    }
    ModMat { e }
}

pub fn mod_mul(a: &ModMat, b: &ModMat, ring: RingSpec, q: i64) -> ModMat {
    let mul = |x: (i64, i64), y: (i64, i64)| -> (i64, i64) {
        let bd = x.1 as i128 * y.1 as i128;
        let ra = x.0 as i128 * y.0 as i128 + ring.p as i128 * bd;
        let rb = x.0 as i128 * y.1 as i128 + x.1 as i128 * y.0 as i128 + ring.q as i128 * bd;
        (modq(ra, q), modq(rb, q))
    };
    let add = |x: (i64, i64), y: (i64, i64)| ((x.0 + y.0) % q, (x.1 + y.1) % q);
    ModMat {
        e: [
            add(mul(a.e[0], b.e[0]), mul(a.e[1], b.e[2])),
            add(mul(a.e[0], b.e[1]), mul(a.e[1], b.e[3])),
            add(mul(a.e[2], b.e[0]), mul(a.e[3], b.e[2])),
            add(mul(a.e[2], b.e[1]), mul(a.e[3], b.e[3])),
        ],
    }
}

/// All invertible scalars of `Z[ω]/(q)`.
pub fn quotient_units(ring: RingSpec, q: i64) -> Vec<(i64, i64)> {
    let mut units = Vec::new();
    for a in 0..q {
        for b in 0..q {
            'inner: for c in 0..q {
                for d in 0..q {
                    let bd = b as i128 * d as i128;
                    let ra = modq(a as i128 * c as i128 + ring.p as i128 * bd, q);
                    let rb = modq(a as i128 * d as i128 + b as i128 * c as i128 + ring.q as i128 * bd, q);
                    if ra == 1 && rb == 0 {
                        units.push((a, b));
                        break 'inner;
                    }
                }
            }
        }
    }
    units
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_word_real() {
        // ι₊ A₁ ι₊ A₋₁ ι₊ A₁ = diag(−1, 1): the map x ↦ −x
        let ring = RingSpec::INT;
        let s = SmallMat::inversion2(ring, 1);
        let a = |n: i64| SmallMat::translation2(ring, Qelem::ONE, Qelem::int(n));
        let m = s.mul(&a(1)).mul(&s).mul(&a(-1)).mul(&s).mul(&a(1));
        assert_eq!(
            m,
            SmallMat::mat2(ring, [Qelem::int(-1), Qelem::ZERO, Qelem::ZERO, Qelem::ONE])
        );
        assert!(m.is_rotation_diag());
    }

    #[test]
    fn golden_word_complex_minus() {
        // with ι(z) = −1/z over Z[i]: ι A_i ι A_{−i} ι A_i induces z ↦ −z
        let ring = RingSpec::GAUSS;
        let s = SmallMat::inversion2(ring, -1);
        let a = |v: Qelem| SmallMat::translation2(ring, Qelem::ONE, v);
        let m = s
            .mul(&a(Qelem::omega(1)))
            .mul(&s)
            .mul(&a(Qelem::omega(-1)))
            .mul(&s)
            .mul(&a(Qelem::omega(1)));
        // product is diag(i, −i) ~ diag(−1, 1) projectively
        assert_eq!(m.at(0, 1), Qelem::ZERO);
        assert_eq!(m.at(1, 0), Qelem::ZERO);
        assert_eq!(m.at(0, 0), Qelem::omega(1));
        assert_eq!(m.at(1, 1), Qelem::omega(-1));
        let target =
            SmallMat::mat2(ring, [Qelem::int(-1), Qelem::ZERO, Qelem::ZERO, Qelem::ONE]);
        assert_eq!(m.canonical(), target.canonical());
        assert!(m.is_rotation_diag());
    }

    #[test]
    fn golden_word_heisenberg() {
        // (ι A_{(0,1)})³ = diag(−i, 1, −i) exactly, with t-unit `1` = +i
        let ia = SmallMat::heisenberg_inversion().mul(&SmallMat::heisenberg_translation(
            Qelem::ZERO,
            1,
        ));
        let m = ia.mul(&ia).mul(&ia);
        let mut expect = SmallMat::identity3(RingSpec::GAUSS);
        expect.e[0] = Qelem::omega(-1);
        expect.e[8] = Qelem::omega(-1);
        assert_eq!(m, expect);
        assert!(m.is_rotation_diag());
        // and it corresponds to the rotation z ↦ i z: diag(−i,1,−i)·i = diag(1,i,1)
        let rot = SmallMat::heisenberg_rotation(1);
        assert_eq!(m.canonical(), rot.canonical());
    }

    #[test]
    fn heisenberg_sqrt2_bookkeeping() {
        // A_{(z,t)}·A_{(z',t')} = A_{(z,t)*(z',t')}: check the (2,0) slot
        // picks up the 2·Im⟨z,z'⟩ cross term through the √2 factors.
        let a = SmallMat::heisenberg_translation(Qelem::int(1), 0); // z = 1
        let b = SmallMat::heisenberg_translation(Qelem::omega(1), 0); // z = i
        let ab = a.mul(&b);
        // (1,0)*(i,0) = (1+i, 2i): A entry (2,0) = ‖1+i‖² + 2i = 2 + 2i
        let expect = SmallMat::heisenberg_translation(Qelem { a: 1, b: 1 }, 2);
        assert_eq!(ab, expect);
    }

    #[test]
    fn quotient_units_gauss_mod4() {
        let units = quotient_units(RingSpec::GAUSS, 4);
        // Z[i]/4 has 8 units
        assert_eq!(units.len(), 8);
        assert!(units.contains(&(1, 0)));
        assert!(units.contains(&(3, 0)));
        assert!(units.contains(&(0, 1)));
    }
}

/// A quaternion with doubled integer coordinates (Lipschitz and Hurwitz
/// integers both fit: all-even or all-odd doubled vectors).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct QuatI {
    /// Doubled coordinates `(2a, 2b, 2c, 2d)` of `a + bi + cj + dk`.
    pub d: [i128; 4],
}

impl QuatI {
    pub const ZERO: QuatI = QuatI { d: [0; 4] };
    pub const ONE: QuatI = QuatI { d: [2, 0, 0, 0] };

    pub fn int(v: i64) -> QuatI {
        QuatI { d: [2 * v as i128, 0, 0, 0] }
    }

    pub fn from_doubled(d: [i64; 4]) -> QuatI {
        QuatI { d: [d[0] as i128, d[1] as i128, d[2] as i128, d[3] as i128] }
    }

    pub fn is_zero(&self) -> bool {
        self.d == [0; 4]
    }

    pub fn add(&self, o: &QuatI) -> QuatI {
        QuatI { d: [self.d[0] + o.d[0], self.d[1] + o.d[1], self.d[2] + o.d[2], self.d[3] + o.d[3]] }
    }

    pub fn neg(&self) -> QuatI {
        QuatI { d: [-self.d[0], -self.d[1], -self.d[2], -self.d[3]] }
    }

    /// Hamilton product; the doubled product `D(a)D(b)` has even entries,
    /// so halving stays integral.
    pub fn mul(&self, o: &QuatI) -> QuatI {
        let a = &self.d;
        let b = &o.d;
        let raw = [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ];
        debug_assert!(raw.iter().all(|v| v % 2 == 0), "doubled product must be even");
        QuatI { d: [raw[0] / 2, raw[1] / 2, raw[2] / 2, raw[3] / 2] }
    }

    /// Four times the norm (norm of doubled coordinates).
    pub fn norm4x(&self) -> i128 {
        self.d.iter().map(|v| v * v).sum()
    }

    pub fn approx(&self) -> (f64, f64) {
        let re = self.d[0] as f64 / 2.0;
        let im = (self.d[1] * self.d[1] + self.d[2] * self.d[2] + self.d[3] * self.d[3]) as f64;
        (re, im.sqrt() / 2.0)
    }
}

/// 2×2 matrices over the quaternion integers (the Möbius representation of
/// the quaternionic presets).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuatMat2 {
    pub e: [QuatI; 4],
}

impl QuatMat2 {
    pub fn identity() -> QuatMat2 {
        QuatMat2 { e: [QuatI::ONE, QuatI::ZERO, QuatI::ZERO, QuatI::ONE] }
    }

    /// `z ↦ 1/z` as `[[0, 1], [1, 0]]`.
    pub fn inversion() -> QuatMat2 {
        QuatMat2 { e: [QuatI::ZERO, QuatI::ONE, QuatI::ONE, QuatI::ZERO] }
    }

    /// Translation `z ↦ z + a`.
    pub fn translation(a: QuatI) -> QuatMat2 {
        QuatMat2 { e: [QuatI::ONE, a, QuatI::ZERO, QuatI::ONE] }
    }

    pub fn mul(&self, o: &QuatMat2) -> QuatMat2 {
        let a = &self.e;
        let b = &o.e;
        QuatMat2 {
            e: [
                a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
                a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
                a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
                a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
            ],
        }
    }

    /// Canonical projective representative: real scalars ±1 only.
    pub fn canonical(&self) -> QuatMat2 {
        let neg = QuatMat2 {
            e: [self.e[0].neg(), self.e[1].neg(), self.e[2].neg(), self.e[3].neg()],
        };
        if self.e <= neg.e {
            self.clone()
        } else {
            neg
        }
    }

    /// Diagonal with equal-norm entries: the two-sided rotation
    /// `z ↦ d₁ z d₂⁻¹`.
    pub fn is_rotation_diag(&self) -> bool {
        self.e[1].is_zero()
            && self.e[2].is_zero()
            && !self.e[0].is_zero()
            && self.e[0].norm4x() == self.e[3].norm4x()
    }

    pub fn display(&self) -> String {
        let q = |v: &QuatI| {
            format!("({}/2,{}/2,{}/2,{}/2)", v.d[0], v.d[1], v.d[2], v.d[3])
        };
        format!("[{} {}; {} {}]", q(&self.e[0]), q(&self.e[1]), q(&self.e[2]), q(&self.e[3]))
    }
}
