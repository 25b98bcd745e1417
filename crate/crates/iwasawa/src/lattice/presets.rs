//! The preset catalog: one constructor per Table-1 row, plus the figure
//! variants of the Hurwitz algorithm (α-shifted and a staircase domain).

use super::decode::DirichletLattice;
use super::{
    max_norm_sq_over_corners, AffineCell, FrameBox, Interval, RotationSpec, SignedPerm, ZFloor,
};
use crate::algebra::matrix::Matrix;
use crate::algebra::{AlgebraKind, Coef, Scalar};
use crate::error::{Error, Result};
use crate::space::{Inversion, SpaceParams};
use std::cmp::Ordering;
use std::fmt;

/// A small rational parameter (numerator, denominator).
pub type Rat = (i64, i64);

/// Stable preset identifiers matching the catalog names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PresetId {
    Regular,
    Backwards,
    NearestIntegerPlus,
    NearestIntegerMinus,
    FoldedNearestInteger,
    NakadaAlpha(Rat),
    Even,
    Rosen(u32),
    AlphaRosen(u32, Rat),
    Hurwitz,
    FoldedHurwitz,
    HurwitzHexagonal,
    JHurwitz,
    Shallit,
    Skt,
    Bianchi(u32),
    Real3d(u32),
    Quaternionic,
    HurwitzQuaternionic,
    Octonionic,
    Heisenberg,
    FoldedHeisenberg,
    HeisenbergHexagonal,
    HeisenbergQuaternionic,
    /// Figure variant: the Hurwitz algorithm with an α-shifted box.
    HurwitzAlpha(Rat),
    /// Figure variant: a staircase fundamental domain for Z².
    HurwitzTetris,
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(r: Rat) -> String {
            if r.1 == 1 {
                format!("{}", r.0)
            } else {
                format!("{}/{}", r.0, r.1)
            }
        }
        match self {
            PresetId::Regular => write!(f, "regular"),
            PresetId::Backwards => write!(f, "backwards"),
            PresetId::NearestIntegerPlus => write!(f, "nearest_integer_plus"),
            PresetId::NearestIntegerMinus => write!(f, "nearest_integer_minus"),
            PresetId::FoldedNearestInteger => write!(f, "folded_nearest_integer"),
            PresetId::NakadaAlpha(a) => write!(f, "nakada_alpha({})", rat(*a)),
            PresetId::Even => write!(f, "even"),
            PresetId::Rosen(q) => write!(f, "rosen({q})"),
            PresetId::AlphaRosen(q, a) => write!(f, "alpha_rosen({q},{})", rat(*a)),
            PresetId::Hurwitz => write!(f, "hurwitz"),
            PresetId::FoldedHurwitz => write!(f, "folded_hurwitz"),
            PresetId::HurwitzHexagonal => write!(f, "hurwitz_hexagonal"),
            PresetId::JHurwitz => write!(f, "j_hurwitz"),
            PresetId::Shallit => write!(f, "shallit"),
            PresetId::Skt => write!(f, "skt"),
            PresetId::Bianchi(d) => write!(f, "bianchi({d})"),
            PresetId::Real3d(n) => write!(f, "real3d({n})"),
            PresetId::Quaternionic => write!(f, "quaternionic"),
            PresetId::HurwitzQuaternionic => write!(f, "hurwitz_quaternionic"),
            PresetId::Octonionic => write!(f, "octonionic"),
            PresetId::Heisenberg => write!(f, "heisenberg"),
            PresetId::FoldedHeisenberg => write!(f, "folded_heisenberg"),
            PresetId::HeisenbergHexagonal => write!(f, "heisenberg_hexagonal"),
            PresetId::HeisenbergQuaternionic => write!(f, "heisenberg_quaternionic"),
            PresetId::HurwitzAlpha(a) => write!(f, "hurwitz_alpha({})", rat(*a)),
            PresetId::HurwitzTetris => write!(f, "hurwitz_tetris"),
        }
    }
}

impl PresetId {
    /// Parse a preset name, e.g. `rosen(5)`, `nakada_alpha(2/5)`, `hurwitz`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.find('(') {
            None => (s, None),
            Some(i) => {
                if !s.ends_with(')') {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
                }
                (&s[..i], Some(&s[i + 1..s.len() - 1]))
            }
        };
        let rat = |a: &str| -> Result<Rat> {
            let a = a.trim();
            match a.find('/') {
                None => Ok((
                    a.parse::<i64>().map_err(|_| Error::Parse(format!("bad rational `{a}`")))?,
                    1,
                )),
                Some(i) => {
                    let n = a[..i].trim().parse::<i64>();
                    let d = a[i + 1..].trim().parse::<i64>();
                    match (n, d) {
                        (Ok(n), Ok(d)) if d > 0 => Ok((n, d)),
                        _ => Err(Error::Parse(format!("bad rational `{a}`"))),
                    }
                }
            }
        };
        let int = |a: &str| -> Result<u32> {
            a.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad integer `{a}`")))
        };
        match (name, arg) {
            ("regular", None) => Ok(PresetId::Regular),
            ("backwards", None) => Ok(PresetId::Backwards),
            ("nearest_integer_plus", None) => Ok(PresetId::NearestIntegerPlus),
            ("nearest_integer_minus", None) => Ok(PresetId::NearestIntegerMinus),
            ("folded_nearest_integer", None) => Ok(PresetId::FoldedNearestInteger),
            ("nakada_alpha", Some(a)) => Ok(PresetId::NakadaAlpha(rat(a)?)),
            ("even", None) => Ok(PresetId::Even),
            ("rosen", Some(a)) => Ok(PresetId::Rosen(int(a)?)),
            ("alpha_rosen", Some(a)) => {
                let parts: Vec<&str> = a.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::Parse("alpha_rosen takes (q, alpha)".into()));
                }
                Ok(PresetId::AlphaRosen(int(parts[0])?, rat(parts[1])?))
            }
            ("hurwitz", None) => Ok(PresetId::Hurwitz),
            ("folded_hurwitz", None) => Ok(PresetId::FoldedHurwitz),
            ("hurwitz_hexagonal", None) => Ok(PresetId::HurwitzHexagonal),
            ("j_hurwitz", None) => Ok(PresetId::JHurwitz),
            ("shallit", None) => Ok(PresetId::Shallit),
            ("skt", None) => Ok(PresetId::Skt),
            ("bianchi", Some(a)) => Ok(PresetId::Bianchi(int(a)?)),
            ("real3d", Some(a)) => Ok(PresetId::Real3d(int(a)?)),
            ("quaternionic", None) => Ok(PresetId::Quaternionic),
            ("hurwitz_quaternionic", None) => Ok(PresetId::HurwitzQuaternionic),
            ("octonionic", None) => Ok(PresetId::Octonionic),
            ("heisenberg", None) => Ok(PresetId::Heisenberg),
            ("folded_heisenberg", None) => Ok(PresetId::FoldedHeisenberg),
            ("heisenberg_hexagonal", None) => Ok(PresetId::HeisenbergHexagonal),
            ("heisenberg_quaternionic", None) => Ok(PresetId::HeisenbergQuaternionic),
            ("hurwitz_alpha", Some(a)) => Ok(PresetId::HurwitzAlpha(rat(a)?)),
            ("hurwitz_tetris", None) => Ok(PresetId::HurwitzTetris),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }

    /// The Table-1 catalog in row order (parameterized families at their
    /// reference parameters; Bianchi expanded over its five discriminants).
    pub fn catalog() -> Vec<PresetId> {
        vec![
            PresetId::Regular,
            PresetId::Backwards,
            PresetId::NearestIntegerPlus,
            PresetId::NearestIntegerMinus,
            PresetId::FoldedNearestInteger,
            PresetId::NakadaAlpha((2, 5)),
            PresetId::Even,
            PresetId::Rosen(5),
            PresetId::AlphaRosen(5, (1, 2)),
            PresetId::Hurwitz,
            PresetId::FoldedHurwitz,
            PresetId::HurwitzHexagonal,
            PresetId::JHurwitz,
            PresetId::Shallit,
            PresetId::Skt,
            PresetId::Bianchi(1),
            PresetId::Bianchi(2),
            PresetId::Bianchi(3),
            PresetId::Bianchi(7),
            PresetId::Bianchi(11),
            PresetId::Real3d(3),
            PresetId::Quaternionic,
            PresetId::HurwitzQuaternionic,
            PresetId::Octonionic,
            PresetId::Heisenberg,
            PresetId::FoldedHeisenberg,
            PresetId::HeisenbergHexagonal,
            PresetId::HeisenbergQuaternionic,
        ]
    }
}

/// A continued-fraction preset: space, inversion, lattice, fundamental
/// domain, fold rotations, and exact radius data.
#[derive(Clone, Debug)]
pub struct Preset<C: Coef> {
    pub id: PresetId,
    pub space: SpaceParams,
    pub inversion: Inversion<C>,
    pub zfloor: ZFloor<C>,
    pub tbox: Option<FrameBox<C>>,
    /// Fold rotations; index 0 is the identity.
    pub rotations: Vec<RotationSpec<C>>,
    /// Square-free tag of the quadratic field the preset's coordinates need.
    pub m_tag: u32,
    /// Whether Möbius maps may be represented by matrices (false for the
    /// octonionic preset, which uses generator words only).
    pub matrix_route: bool,
    pub proper_expected: bool,
    pub complete_expected: bool,
    pub(crate) radius4_val: C,
}

fn ratio<C: Coef>(r: Rat) -> C {
    C::from_ratio(r.0, r.1)
}

fn iv<C: Coef>(lo: Rat, hi: Rat) -> Interval<C> {
    Interval::half_open(ratio(lo), ratio(hi))
}

fn iv_closed<C: Coef>(lo: Rat, hi: Rat) -> Interval<C> {
    Interval::closed(ratio(lo), ratio(hi))
}

fn identity_rotation<C: Coef>(kind: AlgebraKind, n: usize, dz: usize) -> RotationSpec<C> {
    let u = if kind == AlgebraKind::O {
        None
    } else {
        Some(Matrix::identity(kind, n))
    };
    RotationSpec { u, sperm: SignedPerm::identity(dz) }
}

fn negation_rotation<C: Coef>(kind: AlgebraKind, n: usize, dz: usize) -> RotationSpec<C> {
    let u = Some(Matrix::identity(kind, n).scale(&C::from_int(-1)));
    RotationSpec { u, sperm: SignedPerm::negation(dz) }
}

/// `λ = 2 cos(π/q)`: exact for q ∈ {3,4,5,6}, lossy doubles otherwise.
fn rosen_lambda<C: Coef>(q: u32) -> Result<(C, u32)> {
    match q {
        0..=2 => Err(Error::InvalidParameter(format!("rosen requires q ≥ 3, got {q}"))),
        3 => Ok((C::one(), 1)),
        4 => Ok((C::sqrt2(), 1)),
        5 => Ok((
            C::from_ratio(1, 2).mul(&C::one().add(&C::sqrt_m(5))),
            5,
        )),
        6 => Ok((C::sqrt_m(3), 3)),
        _ => match C::from_f64_lossy(2.0 * (std::f64::consts::PI / q as f64).cos()) {
            Some(l) => Ok((l, 1)),
            None => Err(Error::InvalidParameter(format!(
                "rosen({q}) needs a degree-{} field; the exact backend supports q ∈ 3..=6",
                (q as usize).max(7)
            ))),
        },
    }
}

impl<C: Coef> Preset<C> {
    pub fn build(id: PresetId) -> Result<Self> {
        let real_box_1d = |inv: Inversion<C>,
                           step: C,
                           lo: C,
                           hi: C,
                           closed_hi: bool,
                           folded: bool,
                           m_tag: u32,
                           complete: bool,
                           id: PresetId|
         -> Preset<C> {
            // interval bounds arrive in real coordinates; the frame box
            // wants frame coordinates (divide by the lattice step)
            let step_inv = step.recip().expect("zero lattice step");
            let interval = Interval {
                lo: lo.mul(&step_inv),
                hi: hi.mul(&step_inv),
                lo_closed: true,
                hi_closed: closed_hi,
            };
            let fb = FrameBox::axis(vec![step], vec![interval]);
            let radius2 = max_norm_sq_over_corners(&fb);
            let radius4_val = radius2.mul(&radius2);
            let proper = radius4_val.cmp_real(&C::one()) == Ordering::Less;
            let mut rotations = vec![identity_rotation(AlgebraKind::R, 1, 1)];
            if folded {
                rotations.push(negation_rotation(AlgebraKind::R, 1, 1));
            }
            Preset {
                id,
                space: SpaceParams::new(AlgebraKind::R, 1),
                inversion: inv,
                zfloor: ZFloor::Frame(fb),
                tbox: None,
                rotations,
                m_tag,
                matrix_route: true,
                proper_expected: proper,
                complete_expected: complete,
                radius4_val,
            }
        };

        match id {
            PresetId::Regular => Ok({
                let mut p = real_box_1d(
                    Inversion::Plus,
                    C::one(),
                    C::zero(),
                    C::one(),
                    false,
                    false,
                    1,
                    false,
                    id,
                );
                p.proper_expected = false;
                p
            }),
            PresetId::Backwards => Ok({
                let mut p = real_box_1d(
                    Inversion::Minus,
                    C::one(),
                    C::zero(),
                    C::one(),
                    false,
                    false,
                    1,
                    true,
                    id,
                );
                p.proper_expected = false;
                p
            }),
            PresetId::NearestIntegerPlus => Ok(real_box_1d(
                Inversion::Plus,
                C::one(),
                ratio((-1, 2)),
                ratio((1, 2)),
                false,
                false,
                1,
                false,
                id,
            )),
            PresetId::NearestIntegerMinus => Ok(real_box_1d(
                Inversion::Minus,
                C::one(),
                ratio((-1, 2)),
                ratio((1, 2)),
                false,
                false,
                1,
                true,
                id,
            )),
            PresetId::FoldedNearestInteger => Ok(real_box_1d(
                Inversion::Plus,
                C::one(),
                C::zero(),
                ratio((1, 2)),
                true,
                true,
                1,
                true,
                id,
            )),
            PresetId::NakadaAlpha(a) => {
                let alpha = ratio::<C>(a);
                if alpha.sign() != Ordering::Greater
                    || alpha.cmp_real(&C::one()) != Ordering::Less
                {
                    return Err(Error::InvalidParameter("nakada_alpha needs α ∈ (0,1)".into()));
                }
                Ok(real_box_1d(
                    Inversion::Plus,
                    C::one(),
                    alpha.sub(&C::one()),
                    alpha,
                    false,
                    false,
                    1,
                    false,
                    id,
                ))
            }
            PresetId::Even => Ok(real_box_1d(
                Inversion::Minus,
                C::from_int(2),
                C::from_int(-1),
                C::one(),
                false,
                false,
                1,
                true,
                id,
            )),
            PresetId::Rosen(q) => {
                let (lambda, m_tag) = rosen_lambda::<C>(q)?;
                let half = lambda.mul(&ratio((1, 2)));
                Ok(real_box_1d(
                    Inversion::Minus,
                    lambda,
                    half.neg(),
                    half,
                    false,
                    false,
                    m_tag,
                    true,
                    id,
                ))
            }
            PresetId::AlphaRosen(q, a) => {
                let (lambda, m_tag) = rosen_lambda::<C>(q)?;
                let alpha = ratio::<C>(a);
                // α ∈ [1/2, 1/λ)
                let upper_ok = alpha.mul(&lambda).cmp_real(&C::one()) == Ordering::Less;
                if alpha.cmp_real(&ratio((1, 2))) == Ordering::Less || !upper_ok {
                    return Err(Error::InvalidParameter(
                        "alpha_rosen needs α ∈ [1/2, 1/λ)".into(),
                    ));
                }
                let lo = lambda.mul(&alpha.sub(&C::one()));
                let hi = lambda.mul(&alpha);
                Ok(real_box_1d(Inversion::Minus, lambda, lo, hi, false, false, m_tag, true, id))
            }
            PresetId::Hurwitz => Ok(box_2d(
                id,
                Inversion::Conj,
                [iv((-1, 2), (1, 2)), iv((-1, 2), (1, 2))],
                false,
                false,
            )),
            PresetId::FoldedHurwitz => Ok(box_2d(
                id,
                Inversion::Conj,
                [iv((-1, 2), (1, 2)), iv_closed((-1, 2), (0, 1))],
                true,
                true,
            )),
            PresetId::HurwitzAlpha(a) => {
                let alpha = ratio::<C>(a);
                let lo = ratio::<C>((-1, 2)).add(&alpha);
                let hi = ratio::<C>((1, 2)).add(&alpha);
                Ok(box_2d(
                    id,
                    Inversion::Conj,
                    [
                        Interval { lo, hi, lo_closed: true, hi_closed: false },
                        iv((-1, 2), (1, 2)),
                    ],
                    false,
                    false,
                ))
            }
            PresetId::HurwitzTetris => {
                // staircase: [−1/2,0)×[−3/5,2/5) ∪ [0,1/2)×[−2/5,3/5)
                let lattice = FrameBox::axis(vec![C::one(), C::one()], vec![iv((0, 1), (1, 1)); 2]);
                let cell = |ox: Rat, oy: Rat| AffineCell {
                    origin: vec![ratio(ox), ratio(oy)],
                    frame: FrameBox::axis(
                        vec![ratio((1, 2)), C::one()],
                        vec![iv((0, 1), (1, 1)), iv((0, 1), (1, 1))],
                    ),
                };
                let cells = vec![cell((-1, 2), (-3, 5)), cell((0, 1), (-2, 5))];
                let mut r2: Option<C> = None;
                for c in &cells {
                    for corner in c.frame.closure_corners() {
                        let x: Vec<C> =
                            corner.iter().zip(&c.origin).map(|(a, b)| a.add(b)).collect();
                        let n2 = x.iter().fold(C::zero(), |acc, v| acc.add(&v.mul(v)));
                        r2 = Some(match r2 {
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
                }
                let r2 = r2.unwrap();
                let radius4_val = r2.mul(&r2);
                let proper = radius4_val.cmp_real(&C::one()) == Ordering::Less;
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 2),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Cells { lattice, cells },
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 2, 2)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: proper,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::HurwitzHexagonal => Ok(dirichlet_2d(
                id,
                eisenstein_lattice(),
                (1, 3),
                3,
                true,
                false,
            )),
            PresetId::JHurwitz => Ok(dirichlet_2d(
                id,
                DirichletLattice::Basis2 {
                    b1: [(1, 1), (1, 1)],
                    b2_rat: [(-1, 1), (1, 1)],
                    b2_irr: [(0, 1), (0, 1)],
                    m: 1,
                },
                (1, 1),
                1,
                false,
                true,
            )),
            PresetId::Shallit => {
                let lattice = FrameBox::axis(vec![C::one(), C::one()], vec![iv((0, 1), (1, 1)); 2]);
                // rectangle with corners 1/2 − i/2, 1, i, −1/2 + i/2:
                // origin 1/2 − i/2, edges u = (1+i)/2 and v = −1 + i
                let frame = FrameBox::general(
                    vec![
                        vec![ratio((1, 2)), ratio((1, 2))],
                        vec![ratio((-1, 1)), ratio((1, 1))],
                    ],
                    vec![
                        vec![C::one(), C::one()],
                        vec![ratio((-1, 2)), ratio((1, 2))],
                    ],
                    vec![iv((0, 1), (1, 1)), iv((0, 1), (1, 1))],
                );
                let cells = vec![AffineCell { origin: vec![ratio((1, 2)), ratio((-1, 2))], frame }];
                // corners 1 and i put rad(K) exactly at 1
                let radius4_val = C::one();
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 2),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Cells { lattice, cells },
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 2, 2)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: false,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::Skt => {
                // lattice Z[ρ] in the (ρ, ρ̄) frame, K = [0,1)ρ × [0,1)ρ̄
                let half = ratio::<C>((1, 2));
                let s32 = C::sqrt_m(3).mul(&half);
                let basis = vec![vec![half.clone(), s32.clone()], vec![half.clone(), s32.neg()]];
                let third = C::sqrt_m(3).mul(&C::from_ratio(1, 3));
                let basis_inv = vec![
                    vec![C::one(), third.clone()],
                    vec![C::one(), third.neg()],
                ];
                let fb = FrameBox::general(basis, basis_inv, vec![iv((0, 1), (1, 1)); 2]);
                let r2 = max_norm_sq_over_corners(&fb);
                let radius4_val = r2.mul(&r2);
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 2),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Frame(fb),
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 2, 2)],
                    m_tag: 3,
                    matrix_route: true,
                    proper_expected: false,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::Bianchi(d) => {
                let (lat, cov2, m_tag) = match d {
                    1 => (
                        DirichletLattice::Basis2 {
                            b1: [(1, 1), (0, 1)],
                            b2_rat: [(0, 1), (0, 1)],
                            b2_irr: [(0, 1), (1, 1)],
                            m: 1,
                        },
                        (1, 2),
                        1,
                    ),
                    2 => (
                        DirichletLattice::Basis2 {
                            b1: [(1, 1), (0, 1)],
                            b2_rat: [(0, 1), (0, 1)],
                            b2_irr: [(0, 1), (1, 1)],
                            m: 2,
                        },
                        (3, 4),
                        1,
                    ),
                    3 => (eisenstein_lattice(), (1, 3), 3),
                    7 => (
                        DirichletLattice::Basis2 {
                            b1: [(1, 1), (0, 1)],
                            b2_rat: [(1, 2), (0, 1)],
                            b2_irr: [(0, 1), (1, 2)],
                            m: 7,
                        },
                        (4, 7),
                        7,
                    ),
                    11 => (
                        DirichletLattice::Basis2 {
                            b1: [(1, 1), (0, 1)],
                            b2_rat: [(1, 2), (0, 1)],
                            b2_irr: [(0, 1), (1, 2)],
                            m: 11,
                        },
                        (9, 11),
                        11,
                    ),
                    _ => {
                        return Err(Error::InvalidParameter(
                            "bianchi discriminant must be one of 1, 2, 3, 7, 11".into(),
                        ))
                    }
                };
                Ok(dirichlet_2d(id, lat, cov2, m_tag, true, false))
            }
            PresetId::Real3d(n) => {
                if n < 1 {
                    return Err(Error::InvalidParameter("real3d needs n ≥ 1".into()));
                }
                let n = n as usize;
                let fb = FrameBox::axis(vec![C::one(); n], vec![iv((-1, 2), (1, 2)); n]);
                let r2 = max_norm_sq_over_corners(&fb);
                let radius4_val = r2.mul(&r2);
                let proper = radius4_val.cmp_real(&C::one()) == Ordering::Less;
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, n),
                    inversion: Inversion::Plus,
                    zfloor: ZFloor::Frame(fb),
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, n, n)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: proper,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::Quaternionic => {
                let fb = FrameBox::axis(vec![C::one(); 4], vec![iv((-1, 2), (1, 2)); 4]);
                let radius4_val = C::one();
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 4),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Frame(fb),
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 4, 4)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: false,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::HurwitzQuaternionic => {
                let r2 = ratio::<C>((1, 2));
                let radius4_val = r2.mul(&r2);
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 4),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Dirichlet(DirichletLattice::HurwitzQuat),
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 4, 4)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: true,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::Octonionic => {
                let r2 = ratio::<C>((1, 2));
                let radius4_val = r2.mul(&r2);
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::R, 8),
                    inversion: Inversion::Conj,
                    zfloor: ZFloor::Dirichlet(DirichletLattice::Octavian),
                    tbox: None,
                    rotations: vec![identity_rotation(AlgebraKind::R, 8, 8)],
                    m_tag: 1,
                    matrix_route: false,
                    proper_expected: true,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::Heisenberg => Ok(heisenberg_preset(
                id,
                [iv((-1, 2), (1, 2)), iv((-1, 2), (1, 2))],
                vec![],
                false,
            )),
            PresetId::FoldedHeisenberg => Ok(heisenberg_preset(
                id,
                [iv_closed((-1, 2), (0, 1)), iv_closed((-1, 2), (0, 1))],
                (1..4).collect(),
                true,
            )),
            PresetId::HeisenbergHexagonal => {
                // z ∈ Z[ρ] (Dirichlet), t ∈ √3 Z with K₂ = [−√3/2, √3/2) i
                let s3 = C::sqrt_m(3);
                let half_s3 = s3.mul(&ratio((1, 2)));
                let tb = FrameBox::axis(
                    vec![s3.clone()],
                    vec![Interval {
                        lo: half_s3.neg(),
                        hi: half_s3,
                        lo_closed: true,
                        hi_closed: false,
                    }],
                );
                let covz2 = ratio::<C>((1, 3));
                let maxt2 = ratio::<C>((3, 4));
                let radius4_val = covz2.mul(&covz2).add(&maxt2);
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::C, 1),
                    inversion: Inversion::Minus,
                    zfloor: ZFloor::Dirichlet(eisenstein_lattice()),
                    tbox: Some(tb),
                    rotations: vec![identity_rotation(AlgebraKind::C, 1, 2)],
                    m_tag: 3,
                    matrix_route: true,
                    proper_expected: true,
                    complete_expected: false,
                    radius4_val,
                })
            }
            PresetId::HeisenbergQuaternionic => {
                let tb = FrameBox::axis(vec![C::one(); 3], vec![iv((-1, 2), (1, 2)); 3]);
                let covz2 = ratio::<C>((1, 2));
                let maxt2 = ratio::<C>((3, 4));
                let radius4_val = covz2.mul(&covz2).add(&maxt2);
                Ok(Preset {
                    id,
                    space: SpaceParams::new(AlgebraKind::H, 1),
                    inversion: Inversion::Minus,
                    zfloor: ZFloor::Dirichlet(DirichletLattice::HurwitzQuat),
                    tbox: Some(tb),
                    rotations: vec![identity_rotation(AlgebraKind::H, 1, 4)],
                    m_tag: 1,
                    matrix_route: true,
                    proper_expected: false,
                    complete_expected: false,
                    radius4_val,
                })
            }
        }
    }
}

fn eisenstein_lattice() -> DirichletLattice {
    DirichletLattice::Basis2 {
        b1: [(1, 1), (0, 1)],
        b2_rat: [(1, 2), (0, 1)],
        b2_irr: [(0, 1), (1, 2)],
        m: 3,
    }
}

fn box_2d<C: Coef>(
    id: PresetId,
    inversion: Inversion<C>,
    iv2: [Interval<C>; 2],
    folded: bool,
    complete: bool,
) -> Preset<C> {
    let fb = FrameBox::axis(vec![C::one(), C::one()], iv2.to_vec());
    let r2 = max_norm_sq_over_corners(&fb);
    let radius4_val = r2.mul(&r2);
    let proper = radius4_val.cmp_real(&C::one()) == Ordering::Less;
    let mut rotations = vec![identity_rotation(AlgebraKind::R, 2, 2)];
    if folded {
        rotations.push(negation_rotation(AlgebraKind::R, 2, 2));
    }
    Preset {
        id,
        space: SpaceParams::new(AlgebraKind::R, 2),
        inversion,
        zfloor: ZFloor::Frame(fb),
        tbox: None,
        rotations,
        m_tag: 1,
        matrix_route: true,
        proper_expected: proper,
        complete_expected: complete,
        radius4_val,
    }
}

fn dirichlet_2d<C: Coef>(
    id: PresetId,
    lat: DirichletLattice,
    cov2: Rat,
    m_tag: u32,
    proper: bool,
    complete: bool,
) -> Preset<C> {
    let r2 = ratio::<C>(cov2);
    let radius4_val = r2.mul(&r2);
    Preset {
        id,
        space: SpaceParams::new(AlgebraKind::R, 2),
        inversion: Inversion::Conj,
        zfloor: ZFloor::Dirichlet(lat),
        tbox: None,
        rotations: vec![identity_rotation(AlgebraKind::R, 2, 2)],
        m_tag,
        matrix_route: true,
        proper_expected: proper,
        complete_expected: complete,
        radius4_val,
    }
}

/// The Heisenberg presets on `X¹_C`: z-box (possibly folded by the
/// rotations `z ↦ i^k z`) and the unit t-box.
fn heisenberg_preset<C: Coef>(
    id: PresetId,
    ziv: [Interval<C>; 2],
    extra_rot_powers: Vec<u32>,
    complete: bool,
) -> Preset<C> {
    let fb = FrameBox::axis(vec![C::one(), C::one()], ziv.to_vec());
    let tb = FrameBox::axis(vec![C::one()], vec![iv((-1, 2), (1, 2))]);
    let maxz2 = max_norm_sq_over_corners(&fb);
    let maxt2 = ratio::<C>((1, 4));
    let radius4_val = maxz2.mul(&maxz2).add(&maxt2);
    let mut rotations = vec![identity_rotation(AlgebraKind::C, 1, 2)];
    for k in extra_rot_powers {
        // z ↦ i^k z as a complex 1×1 block and as a signed permutation of
        // the real coordinates (a,b): i·(a+bi) = −b + ai
        let rot90 = SignedPerm { src: vec![1, 0], sign: vec![-1, 1] };
        let mut sperm = SignedPerm::identity(2);
        for _ in 0..k {
            sperm = rot90.compose(&sperm);
        }
        let unit = match k % 4 {
            1 => Scalar::new(AlgebraKind::C, vec![C::zero(), C::one()]),
            2 => Scalar::from_int(AlgebraKind::C, -1),
            3 => Scalar::new(AlgebraKind::C, vec![C::zero(), C::from_int(-1)]),
            _ => Scalar::one(AlgebraKind::C),
        };
        let mut u = Matrix::identity(AlgebraKind::C, 1);
        u.set(0, 0, unit);
        rotations.push(RotationSpec { u: Some(u), sperm });
    }
    Preset {
        id,
        space: SpaceParams::new(AlgebraKind::C, 1),
        inversion: Inversion::Minus,
        zfloor: ZFloor::Frame(fb),
        tbox: Some(tb),
        rotations,
        m_tag: 1,
        matrix_route: true,
        proper_expected: true,
        complete_expected: complete,
        radius4_val,
    }
}
