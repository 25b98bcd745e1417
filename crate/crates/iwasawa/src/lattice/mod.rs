//! Lattices, fundamental domains, nearest-integer floor maps, and the
//! preset catalog with radius and properness computations.

pub mod decode;
pub mod octavian;
pub mod presets;

pub use presets::{Preset, PresetId};

use crate::algebra::matrix::Matrix;
use crate::algebra::{AlgebraKind, Coef, Scalar};
use crate::error::{Error, Result};
use crate::space::{
    group_mul, inner, rotation_matrix, translation_matrix, Point, SpaceParams,
};
use std::cmp::Ordering;

/// Absolute distance to a cell boundary under which a float-backend digit
/// decision is flagged boundary-ambiguous.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// One axis of a fundamental-domain box in frame coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<C: Coef> {
    pub lo: C,
    pub hi: C,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<C: Coef> Interval<C> {
    pub fn half_open(lo: C, hi: C) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn closed(lo: C, hi: C) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    fn contains(&self, x: &C) -> bool {
        let lo_ok = match x.cmp_real(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        if !lo_ok {
            return false;
        }
        match x.cmp_real(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        }
    }

    fn boundary_dist(&self, x: &C) -> f64 {
        let v = x.to_f64();
        (v - self.lo.to_f64()).abs().min((v - self.hi.to_f64()).abs())
    }

    /// The interval negated (for sign rotations): bounds swap and flip.
    fn negated(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }
}

/// A box in the coordinates of a lattice frame: the lattice is `B·Z^D` and
/// the domain is `{B·s : s_i ∈ iv_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameBox<C: Coef> {
    /// Basis columns in real coordinates.
    pub basis: Vec<Vec<C>>,
    /// Rows of the exact inverse: `s_i = Σ_j inv[i][j] x_j`.
    pub basis_inv: Vec<Vec<C>>,
    pub iv: Vec<Interval<C>>,
}

impl<C: Coef> FrameBox<C> {
    /// Diagonal frame: per-axis steps.
    pub fn axis(steps: Vec<C>, iv: Vec<Interval<C>>) -> Self {
        let d = steps.len();
        assert_eq!(iv.len(), d);
        let mut basis = vec![vec![C::zero(); d]; d];
        let mut basis_inv = vec![vec![C::zero(); d]; d];
        for i in 0..d {
            basis[i][i] = steps[i].clone();
            basis_inv[i][i] = steps[i].recip().expect("zero lattice step");
        }
        FrameBox { basis, basis_inv, iv }
    }

    pub fn general(basis: Vec<Vec<C>>, basis_inv: Vec<Vec<C>>, iv: Vec<Interval<C>>) -> Self {
        let d = iv.len();
        assert_eq!(basis.len(), d);
        assert_eq!(basis_inv.len(), d);
        FrameBox { basis, basis_inv, iv }
    }

    pub fn dim(&self) -> usize {
        self.iv.len()
    }

    pub fn to_frame(&self, x: &[C]) -> Vec<C> {
        (0..self.dim())
            .map(|i| {
                self.basis_inv[i]
                    .iter()
                    .zip(x)
                    .fold(C::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Real coordinates of the lattice point with index vector `c`.
    pub fn from_idx(&self, c: &[i64]) -> Vec<C> {
        let d = self.dim();
        let mut out = vec![C::zero(); d];
        for (j, &cj) in c.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            let f = C::from_int(cj);
            for i in 0..d {
                out[i] = out[i].add(&self.basis[j][i].mul(&f));
            }
        }
        out
    }

    /// Membership of a real-coordinate vector, with the minimal distance to a
    /// boundary (float ambiguity guard).
    fn member(&self, x: &[C]) -> (bool, f64) {
        let s = self.to_frame(x);
        let mut dist = f64::INFINITY;
        for (si, iv) in s.iter().zip(&self.iv) {
            if !iv.contains(si) {
                return (false, 0.0);
            }
            dist = dist.min(iv.boundary_dist(si));
        }
        (true, dist)
    }

    /// Corner values of the closure, in real coordinates.
    pub fn closure_corners(&self) -> Vec<Vec<C>> {
        let d = self.dim();
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0..(1usize << d) {
            let s: Vec<C> = (0..d)
                .map(|i| if mask >> i & 1 == 1 { self.iv[i].hi.clone() } else { self.iv[i].lo.clone() })
                .collect();
            let mut x = vec![C::zero(); d];
            for (j, sj) in s.iter().enumerate() {
                for i in 0..d {
                    x[i] = x[i].add(&self.basis[j][i].mul(sj));
                }
            }
            out.push(x);
        }
        out
    }
}

/// A translated box cell (for domains that are unions of boxes in a frame
/// different from the lattice frame, e.g. the Shallit rectangle).
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCell<C: Coef> {
    pub origin: Vec<C>,
    pub frame: FrameBox<C>,
}

impl<C: Coef> AffineCell<C> {
    fn member(&self, x: &[C]) -> (bool, f64) {
        let shifted: Vec<C> = x.iter().zip(&self.origin).map(|(a, b)| a.sub(b)).collect();
        self.frame.member(&shifted)
    }
}

/// A signed axis permutation acting on the z-part real coordinates; this is
/// how every Table-1 fold rotation acts.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPerm {
    pub src: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(d: usize) -> Self {
        SignedPerm { src: (0..d).collect(), sign: vec![1; d] }
    }

    pub fn negation(d: usize) -> Self {
        SignedPerm { src: (0..d).collect(), sign: vec![-1; d] }
    }

    pub fn is_identity(&self) -> bool {
        self.sign.iter().all(|&s| s == 1) && self.src.iter().enumerate().all(|(i, &s)| i == s)
    }

    pub fn apply<C: Coef>(&self, x: &[C]) -> Vec<C> {
        self.src
            .iter()
            .zip(&self.sign)
            .map(|(&s, &sg)| if sg >= 0 { x[s].clone() } else { x[s].neg() })
            .collect()
    }

    pub fn inverse(&self) -> Self {
        let d = self.src.len();
        let mut src = vec![0usize; d];
        let mut sign = vec![1i8; d];
        for i in 0..d {
            src[self.src[i]] = i;
            sign[self.src[i]] = self.sign[i];
        }
        SignedPerm { src, sign }
    }

    pub fn compose(&self, other: &Self) -> Self {
        // (self ∘ other)(x) = self(other(x))
        let d = self.src.len();
        let mut src = vec![0usize; d];
        let mut sign = vec![1i8; d];
        for i in 0..d {
            src[i] = other.src[self.src[i]];
            sign[i] = self.sign[i] * other.sign[self.src[i]];
        }
        SignedPerm { src, sign }
    }
}

/// One element of the preset's finite rotation set `R`, with both its
/// unitary middle block (for matrices) and its real-coordinate action.
#[derive(Clone, Debug)]
pub struct RotationSpec<C: Coef> {
    pub u: Option<Matrix<C>>,
    pub sperm: SignedPerm,
}

/// Floor machinery for the z-part.
#[derive(Clone, Debug)]
pub enum ZFloor<C: Coef> {
    /// Lattice and domain share one frame.
    Frame(FrameBox<C>),
    /// Lattice `basis·Z^D`, domain a union of affine cells.
    Cells { lattice: FrameBox<C>, cells: Vec<AffineCell<C>> },
    /// Dirichlet domain of a decoded lattice.
    Dirichlet(decode::DirichletLattice),
}

/// A digit: a rotation index into the preset's `R` plus a lattice
/// translation. The group element acts by `x ↦ a * r(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Digit<C: Coef> {
    pub rot: usize,
    pub z_idx: Vec<i64>,
    pub t_idx: Vec<i64>,
    pub translation: Point<C>,
}

impl<C: Coef> Digit<C> {
    pub fn is_identity(&self) -> bool {
        self.rot == 0 && self.z_idx.iter().all(|&v| v == 0) && self.t_idx.iter().all(|&v| v == 0)
    }

    pub fn key(&self) -> DigitKey {
        DigitKey { rot: self.rot, z: self.z_idx.clone(), t: self.t_idx.clone() }
    }
}

/// Hashable digit identity (rotation index and integer lattice coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitKey {
    pub rot: usize,
    pub z: Vec<i64>,
    pub t: Vec<i64>,
}

impl DigitKey {
    pub fn label(&self) -> String {
        let mut s = String::new();
        if self.rot != 0 {
            s.push_str(&format!("r{}·", self.rot));
        }
        s.push('(');
        s.push_str(
            &self
                .z
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        if !self.t.is_empty() {
            s.push(';');
            s.push_str(
                &self
                    .t
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        s.push(')');
        s
    }
}

pub struct FloorResult<C: Coef> {
    pub digit: Digit<C>,
    /// Float backends set this when the decision was within [`BOUNDARY_TOL`]
    /// of a cell boundary.
    pub ambiguous: bool,
}

/// Real z-part coordinates of a point (n·dim values).
pub fn z_coords<C: Coef>(p: &Point<C>) -> Vec<C> {
    p.z.iter().flat_map(|s| s.coords.iter().cloned()).collect()
}

/// Imaginary t-part coordinates (dim − 1 values).
pub fn t_coords<C: Coef>(p: &Point<C>) -> Vec<C> {
    p.t.coords[1..].to_vec()
}

pub fn z_from_coords<C: Coef>(kind: AlgebraKind, n: usize, coords: &[C]) -> Vec<Scalar<C>> {
    let dim = kind.dim();
    assert_eq!(coords.len(), n * dim);
    (0..n)
        .map(|i| Scalar::new(kind, coords[i * dim..(i + 1) * dim].to_vec()))
        .collect()
}

pub fn t_from_coords<C: Coef>(kind: AlgebraKind, coords: &[C]) -> Scalar<C> {
    let dim = kind.dim();
    assert_eq!(coords.len(), dim - 1);
    let mut c = Vec::with_capacity(dim);
    c.push(C::zero());
    c.extend(coords.iter().cloned());
    Scalar::new(kind, c)
}

pub fn point_from_coords<C: Coef>(space: SpaceParams, zc: &[C], tc: &[C]) -> Point<C> {
    Point::new(z_from_coords(space.kind, space.n, zc), t_from_coords(space.kind, tc))
}

/// Offset product iterator in a fixed deterministic order (0 first).
fn offset_products(d: usize, range: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * range.len());
        for pref in &out {
            for &r in range {
                let mut v = pref.clone();
                v.push(r);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl<C: Coef> presets::Preset<C> {
    /// Nearest-integer floor: the digit `d` with `d⁻¹(x) ∈ K`, deterministic
    /// on the measure-zero overlap via the preset's boundary conventions.
    pub fn floor(&self, x: &Point<C>) -> FloorResult<C> {
        let xz = z_coords(x);
        let mut ambiguous = false;
        for (ri, rot) in self.rotations.iter().enumerate() {
            let rinv = rot.sperm.inverse();
            let z_found: Option<(Vec<i64>, Vec<C>)> = match &self.zfloor {
                ZFloor::Dirichlet(lat) => {
                    debug_assert!(rot.sperm.is_identity(), "Dirichlet presets are unfolded");
                    let dec = lat.nearest(&xz);
                    if !C::EXACT && dec.gap < BOUNDARY_TOL {
                        ambiguous = true;
                    }
                    Some((dec.idx, dec.point))
                }
                ZFloor::Frame(fb) => {
                    let s = fb.to_frame(&xz);
                    let base: Vec<i64> = s.iter().map(|v| v.round_nearest_int()).collect();
                    let mut hit = None;
                    'search: for offs in offset_products(fb.dim(), &[0, -1, 1]) {
                        let c: Vec<i64> = base.iter().zip(&offs).map(|(b, o)| b + o).collect();
                        let p = fb.from_idx(&c);
                        let resid: Vec<C> = xz.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
                        let rres = rinv.apply(&resid);
                        let (ok, bdist) = fb.member(&rres);
                        if ok {
                            if !C::EXACT && bdist < BOUNDARY_TOL {
                                ambiguous = true;
                            }
                            hit = Some((c, p));
                            break 'search;
                        }
                    }
                    hit
                }
                ZFloor::Cells { lattice, cells } => {
                    let s = lattice.to_frame(&xz);
                    let base: Vec<i64> = s.iter().map(|v| v.round_nearest_int()).collect();
                    let mut hit = None;
                    'search2: for offs in offset_products(lattice.dim(), &[0, -1, 1, -2, 2]) {
                        let c: Vec<i64> = base.iter().zip(&offs).map(|(b, o)| b + o).collect();
                        let p = lattice.from_idx(&c);
                        let resid: Vec<C> = xz.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
                        let rres = rinv.apply(&resid);
                        for cell in cells {
                            let (ok, bdist) = cell.member(&rres);
                            if ok {
                                if !C::EXACT && bdist < BOUNDARY_TOL {
                                    ambiguous = true;
                                }
                                hit = Some((c, p));
                                break 'search2;
                            }
                        }
                    }
                    hit
                }
            };
            let Some((z_idx, z_point_coords)) = z_found else {
                continue;
            };
            // t-part: a_t from the box floor of the shifted t-coordinates of
            // (−a_z, 0) * x; the fold rotations fix t.
            let (t_idx, t_point_coords) = match &self.tbox {
                None => (Vec::new(), Vec::new()),
                Some(tb) => {
                    let az = z_from_coords(self.space.kind, self.space.n, &z_point_coords);
                    let shift = inner(&az, &x.z).imaginary_part().scale(&C::from_int(2));
                    let bt_scalar = x.t.sub(&shift);
                    let bt = bt_scalar.coords[1..].to_vec();
                    let s = tb.to_frame(&bt);
                    let base: Vec<i64> = s.iter().map(|v| v.round_nearest_int()).collect();
                    let mut hit = None;
                    'tsearch: for offs in offset_products(tb.dim(), &[0, -1, 1]) {
                        let c: Vec<i64> = base.iter().zip(&offs).map(|(b, o)| b + o).collect();
                        let p = tb.from_idx(&c);
                        let resid: Vec<C> = bt.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
                        let (ok, bdist) = tb.member(&resid);
                        if ok {
                            if !C::EXACT && bdist < BOUNDARY_TOL {
                                ambiguous = true;
                            }
                            hit = Some((c, p));
                            break 'tsearch;
                        }
                    }
                    match hit {
                        Some(h) => h,
                        None => continue,
                    }
                }
            };
            let translation = point_from_coords(self.space, &z_point_coords, &t_point_coords);
            let digit = Digit { rot: ri, z_idx, t_idx, translation };
            return FloorResult { digit, ambiguous };
        }
        panic!(
            "floor map failed for preset {:?}; the candidate search bounds are too small",
            self.id
        );
    }

    /// Membership in the fundamental domain `K` under the preset's boundary
    /// conventions: exactly when the floor digit is the identity.
    pub fn contains(&self, x: &Point<C>) -> bool {
        self.floor(x).digit.is_identity()
    }

    /// Apply a digit: `x ↦ a * r(x)`.
    pub fn apply_digit(&self, d: &Digit<C>, x: &Point<C>) -> Point<C> {
        let rot = &self.rotations[d.rot];
        let zc = rot.sperm.apply(&z_coords(x));
        let rx = point_from_coords(self.space, &zc, &t_coords(x));
        group_mul(&d.translation, &rx)
    }

    /// Apply a digit inverse: `x ↦ r⁻¹((−a) * x)`.
    pub fn apply_digit_inv(&self, d: &Digit<C>, x: &Point<C>) -> Point<C> {
        let rot = &self.rotations[d.rot];
        let shifted = group_mul(&crate::space::group_inv(&d.translation), x);
        let zc = rot.sperm.inverse().apply(&z_coords(&shifted));
        point_from_coords(self.space, &zc, &t_coords(&shifted))
    }

    /// Materialize a digit from its indices.
    pub fn digit_from_indices(&self, rot: usize, z_idx: &[i64], t_idx: &[i64]) -> Digit<C> {
        let zc = match &self.zfloor {
            ZFloor::Frame(fb) => fb.from_idx(z_idx),
            ZFloor::Cells { lattice, .. } => lattice.from_idx(z_idx),
            ZFloor::Dirichlet(lat) => dirichlet_point_from_idx::<C>(lat, z_idx),
        };
        let tc = match &self.tbox {
            None => Vec::new(),
            Some(tb) => tb.from_idx(t_idx),
        };
        Digit {
            rot,
            z_idx: z_idx.to_vec(),
            t_idx: t_idx.to_vec(),
            translation: point_from_coords(self.space, &zc, &tc),
        }
    }

    /// The matrix of a digit: `A_{(z,t)} · diag(1, U, 1)` (kinds R, C, H).
    pub fn digit_to_matrix(&self, d: &Digit<C>) -> Result<Matrix<C>> {
        if !self.matrix_route {
            return Err(Error::Unsupported(
                "this preset represents Möbius maps by generator words only".into(),
            ));
        }
        let a = translation_matrix(self.space, &d.translation)?;
        match &self.rotations[d.rot].u {
            None => Ok(a),
            Some(u) => {
                if self.rotations[d.rot].sperm.is_identity() {
                    return Ok(a);
                }
                let r = rotation_matrix(self.space, u)?;
                a.mat_mul(&r)
            }
        }
    }

    /// Matrix of the preset's inversion.
    pub fn inversion_matrix(&self) -> Result<Matrix<C>> {
        if !self.matrix_route {
            return Err(Error::Unsupported(
                "this preset represents Möbius maps by generator words only".into(),
            ));
        }
        self.inversion.matrix(self.space.kind, self.space.n)
    }

    /// Exact fourth power of `rad(K) = sup { ‖x‖ : x ∈ closure(K) }`.
    pub fn radius4(&self) -> C {
        self.radius4_val.clone()
    }

    pub fn radius(&self) -> f64 {
        self.radius4_val.to_f64().max(0.0).powf(0.25)
    }

    /// Properness: `rad(K) < 1`, decided exactly; the margin `1 − rad(K)`
    /// is reported as a float.
    pub fn properness_check(&self) -> (bool, f64) {
        let proper = self.radius4_val.cmp_real(&C::one()) == Ordering::Less;
        (proper, 1.0 - self.radius())
    }
}

fn dirichlet_point_from_idx<C: Coef>(lat: &decode::DirichletLattice, idx: &[i64]) -> Vec<C> {
    match lat {
        decode::DirichletLattice::Basis2 { b1, b2_rat, b2_irr, m } => {
            let col = |rat: &[(i64, i64); 2], irr: &[(i64, i64); 2]| {
                [
                    C::from_ratio(rat[0].0, rat[0].1)
                        .add(&C::from_ratio(irr[0].0, irr[0].1).mul(&C::sqrt_m(*m))),
                    C::from_ratio(rat[1].0, rat[1].1)
                        .add(&C::from_ratio(irr[1].0, irr[1].1).mul(&C::sqrt_m(*m))),
                ]
            };
            let c1 = col(b1, &[(0, 1), (0, 1)]);
            let c2 = col(b2_rat, b2_irr);
            (0..2)
                .map(|i| {
                    c1[i]
                        .mul(&C::from_int(idx[0]))
                        .add(&c2[i].mul(&C::from_int(idx[1])))
                })
                .collect()
        }
        // Hurwitz and octavian indices are doubled coordinates.
        decode::DirichletLattice::HurwitzQuat | decode::DirichletLattice::Octavian => {
            idx.iter().map(|&v| C::from_ratio(v, 2)).collect()
        }
    }
}

/// Radius helper: `sup ‖z‖²` over the closure corners of a frame box.
pub fn max_norm_sq_over_corners<C: Coef>(fb: &FrameBox<C>) -> C {
    let mut best: Option<C> = None;
    for corner in fb.closure_corners() {
        let n2 = corner.iter().fold(C::zero(), |acc, v| acc.add(&v.mul(v)));
        best = Some(match best {
            None => n2,
            Some(b) => {
                if n2.cmp_real(&b) == Ordering::Greater {
                    n2
                } else {
                    b
                }
            }
        });
    }
    best.expect("box has corners")
}

impl<C: Coef> presets::Preset<C> {
    /// Composition of two digits as group elements:
    /// `(r1, a1)·(r2, a2) = (r1∘r2, a1 * r1(a2))`.
    pub fn digit_compose(&self, d1: &Digit<C>, d2: &Digit<C>) -> Digit<C> {
        let r1 = &self.rotations[d1.rot];
        let zc = r1.sperm.apply(&z_coords(&d2.translation));
        let rotated = point_from_coords(self.space, &zc, &t_coords(&d2.translation));
        let translation = group_mul(&d1.translation, &rotated);
        let rot = self.compose_rot(d1.rot, d2.rot);
        let (z_idx, t_idx) = self.indices_of_translation(&translation);
        Digit { rot, z_idx, t_idx, translation }
    }

    /// Inverse digit: `(r, a)⁻¹ = (r⁻¹, r⁻¹(−a))`.
    pub fn digit_inverse(&self, d: &Digit<C>) -> Digit<C> {
        let r_inv = self.rotations[d.rot].sperm.inverse();
        let neg = crate::space::group_inv(&d.translation);
        let zc = r_inv.apply(&z_coords(&neg));
        let translation = point_from_coords(self.space, &zc, &t_coords(&neg));
        let rot = self.inverse_rot(d.rot);
        let (z_idx, t_idx) = self.indices_of_translation(&translation);
        Digit { rot, z_idx, t_idx, translation }
    }

    fn compose_rot(&self, r1: usize, r2: usize) -> usize {
        let target = self.rotations[r1].sperm.compose(&self.rotations[r2].sperm);
        self.rotations
            .iter()
            .position(|r| r.sperm == target)
            .expect("rotation set closed under composition")
    }

    fn inverse_rot(&self, r: usize) -> usize {
        let target = self.rotations[r].sperm.inverse();
        self.rotations
            .iter()
            .position(|rr| rr.sperm == target)
            .expect("rotation set closed under inverse")
    }

    /// Recover lattice indices of a translation point (used when composing
    /// digits); exact over both backends for lattice points.
    fn indices_of_translation(&self, p: &Point<C>) -> (Vec<i64>, Vec<i64>) {
        let zc = z_coords(p);
        let z_idx: Vec<i64> = match &self.zfloor {
            ZFloor::Frame(fb) => fb.to_frame(&zc).iter().map(|v| v.round_nearest_int()).collect(),
            ZFloor::Cells { lattice, .. } => {
                lattice.to_frame(&zc).iter().map(|v| v.round_nearest_int()).collect()
            }
            ZFloor::Dirichlet(lat) => match lat {
                decode::DirichletLattice::Basis2 { .. } => {
                    // solve in the basis via the decoder's Babai step
                    let dec = lat.nearest(&zc);
                    dec.idx
                }
                _ => zc.iter().map(|v| (v.to_f64() * 2.0).round() as i64).collect(),
            },
        };
        let t_idx: Vec<i64> = match &self.tbox {
            None => Vec::new(),
            Some(tb) => {
                // t-part of the translation in box frame coordinates
                tb.to_frame(&t_coords(p)).iter().map(|v| v.round_nearest_int()).collect()
            }
        };
        (z_idx, t_idx)
    }

    /// Coordinate ranges containing `K` (for rejection sampling): every
    /// point of `K` has `|z_i| ≤ rad(K)` and `|t_i| ≤ rad(K)²`.
    pub fn bounding_box(&self) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
        let rad = self.radius();
        let dz = self.space.n * self.space.kind.dim();
        let dt = self.space.kind.dim() - 1;
        (
            vec![(-rad, rad); dz],
            vec![(-rad * rad, rad * rad); dt],
        )
    }
}

#[cfg(test)]
mod compose_tests {
    use super::*;
    use crate::algebra::Exq;

    #[test]
    fn digit_compose_and_inverse() {
        for id in [PresetId::FoldedHurwitz, PresetId::Heisenberg, PresetId::FoldedHeisenberg] {
            let p = Preset::<Exq>::build(id).unwrap();
            let d1 = p.digit_from_indices(p.rotations.len() - 1, &[1, 0], &if p.tbox.is_some() { vec![1] } else { vec![] });
            let d2 = p.digit_from_indices(0, &[0, -1], &if p.tbox.is_some() { vec![0] } else { vec![] });
            let x = point_from_coords(
                p.space,
                &vec![Exq::from_ratio(1, 7); p.space.n * p.space.kind.dim()],
                &vec![Exq::from_ratio(1, 5); p.space.kind.dim() - 1],
            );
            // composition acts as the two digits in sequence
            let lhs = p.apply_digit(&p.digit_compose(&d1, &d2), &x);
            let rhs = p.apply_digit(&d1, &p.apply_digit(&d2, &x));
            assert_eq!(lhs, rhs, "{id}");
            // inverse composes to the identity action
            let inv = p.digit_inverse(&d1);
            let back = p.apply_digit(&p.digit_compose(&d1, &inv), &x);
            assert_eq!(back, x, "{id}");
        }
    }
}
