//! Nearest-lattice-point decoders for the Dirichlet-domain presets.
//!
//! All decoders are exact over the rational backend and break distance ties
//! by the lexicographically smallest residual `x − p`, which makes the floor
//! map translation-equivariant including on the measure-zero overlap.

use super::octavian;
use crate::algebra::Coef;
use std::cmp::Ordering;

/// A Dirichlet-decoded z-part lattice.
#[derive(Clone, Debug, PartialEq)]
pub enum DirichletLattice {
    /// Rank-2 lattice with basis columns `b1, b2` in real coordinates
    /// (hexagonal Z[ρ], J.Hurwitz (1+i)Z[i], Bianchi O_d).
    Basis2 { b1: [(i64, i64); 2], b2_rat: [(i64, i64); 2], b2_irr: [(i64, i64); 2], m: u32 },
    /// Hurwitz integers: Z⁴ ∪ (Z+1/2)⁴.
    HurwitzQuat,
    /// Cayley (octavian) integers in R⁸.
    Octavian,
}

/// Decode result: index vector in the lattice's own basis plus the lattice
/// point's real coordinates.
pub struct Decoded<C: Coef> {
    pub idx: Vec<i64>,
    pub point: Vec<C>,
    /// Gap between best and second-best squared distance (float backends
    /// only; used for the boundary-ambiguity flag).
    pub gap: f64,
}

impl DirichletLattice {
    /// Basis column `j` as backend values.
    fn basis2_col<C: Coef>(&self, j: usize) -> [C; 2] {
        match self {
            DirichletLattice::Basis2 { b1, b2_rat, b2_irr, m } => {
                let col = |rat: &[(i64, i64); 2], irr: &[(i64, i64); 2]| {
                    [
                        C::from_ratio(rat[0].0, rat[0].1)
                            .add(&C::from_ratio(irr[0].0, irr[0].1).mul(&C::sqrt_m(*m))),
                        C::from_ratio(rat[1].0, rat[1].1)
                            .add(&C::from_ratio(irr[1].0, irr[1].1).mul(&C::sqrt_m(*m))),
                    ]
                };
                if j == 0 {
                    col(b1, &[(0, 1), (0, 1)])
                } else {
                    col(b2_rat, b2_irr)
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            DirichletLattice::Basis2 { .. } => 2,
            DirichletLattice::HurwitzQuat => 4,
            DirichletLattice::Octavian => 8,
        }
    }

    pub fn nearest<C: Coef>(&self, x: &[C]) -> Decoded<C> {
        match self {
            DirichletLattice::Basis2 { .. } => self.nearest_basis2(x),
            DirichletLattice::HurwitzQuat => nearest_hurwitz(x),
            DirichletLattice::Octavian => {
                let doubled = octavian::nearest_octavian(x);
                let point: Vec<C> = doubled.iter().map(|&v| C::from_ratio(v, 2)).collect();
                // index = doubled coordinates (a faithful integer label)
                Decoded { idx: doubled.to_vec(), point, gap: octavian_gap(x, &doubled) }
            }
        }
    }

    fn nearest_basis2<C: Coef>(&self, x: &[C]) -> Decoded<C> {
        let b1 = self.basis2_col::<C>(0);
        let b2 = self.basis2_col::<C>(1);
        // Babai rounding in the basis, then a {−1,0,1}² neighborhood.
        let det = b1[0].mul(&b2[1]).sub(&b1[1].mul(&b2[0]));
        let det_inv = det.recip().expect("basis is nonsingular");
        let s0 = x[0].mul(&b2[1]).sub(&x[1].mul(&b2[0])).mul(&det_inv);
        let s1 = b1[0].mul(&x[1]).sub(&b1[1].mul(&x[0])).mul(&det_inv);
        let c0 = s0.round_nearest_int();
        let c1 = s1.round_nearest_int();
        let mut best: Option<(Vec<i64>, Vec<C>, C, Vec<C>)> = None;
        let mut second: Option<f64> = None;
        for d0 in [0i64, -1, 1] {
            for d1 in [0i64, -1, 1] {
                let i0 = c0 + d0;
                let i1 = c1 + d1;
                let p = vec![
                    b1[0].mul(&C::from_int(i0)).add(&b2[0].mul(&C::from_int(i1))),
                    b1[1].mul(&C::from_int(i0)).add(&b2[1].mul(&C::from_int(i1))),
                ];
                let resid: Vec<C> = x.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
                let d2 = resid.iter().fold(C::zero(), |acc, r| acc.add(&r.mul(r)));
                update_best(&mut best, &mut second, vec![i0, i1], p, d2, resid);
            }
        }
        finish(best, second)
    }
}

fn update_best<C: Coef>(
    best: &mut Option<(Vec<i64>, Vec<C>, C, Vec<C>)>,
    second: &mut Option<f64>,
    idx: Vec<i64>,
    p: Vec<C>,
    d2: C,
    resid: Vec<C>,
) {
    let take = match best {
        None => true,
        Some((_, _, bd, bresid)) => match d2.cmp_real(bd) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => lex_less(&resid, bresid),
        },
    };
    if take {
        if let Some((_, _, bd, _)) = best {
            let old = bd.to_f64();
            *second = Some(second.map_or(old, |s| s.min(old)));
        }
        *best = Some((idx, p, d2, resid));
    } else {
        let v = d2.to_f64();
        *second = Some(second.map_or(v, |s| s.min(v)));
    }
}

fn finish<C: Coef>(
    best: Option<(Vec<i64>, Vec<C>, C, Vec<C>)>,
    second: Option<f64>,
) -> Decoded<C> {
    let (idx, point, d2, _) = best.expect("candidate set is nonempty");
    let gap = second.map_or(f64::INFINITY, |s| (s - d2.to_f64()).abs());
    Decoded { idx, point, gap }
}

fn lex_less<C: Coef>(a: &[C], b: &[C]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_real(y) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}

/// Hurwitz integers: decode per coset (Z⁴ and Z⁴ + 1/2), with per-axis
/// tie expansion so the lexicographic rule sees every minimizer.
fn nearest_hurwitz<C: Coef>(x: &[C]) -> Decoded<C> {
    let half = C::from_ratio(1, 2);
    let mut best: Option<(Vec<i64>, Vec<C>, C, Vec<C>)> = None;
    let mut second: Option<f64> = None;
    for coset in [0i64, 1] {
        // per-axis nearest of x − coset/2, with both choices at exact ties
        let mut axis_choices: Vec<Vec<i64>> = Vec::with_capacity(4);
        for xi in x {
            let y = xi.sub(&half.mul(&C::from_int(coset)));
            let n = y.round_nearest_int();
            let mut v = vec![n];
            // exact tie y − n = ±1/2 → also offer the other neighbor
            let fr = y.sub(&C::from_int(n));
            if fr.cmp_real(&half) == Ordering::Equal {
                v.push(n + 1);
            } else if fr.cmp_real(&half.neg()) == Ordering::Equal {
                v.push(n - 1);
            }
            axis_choices.push(v);
        }
        let mut stack = vec![Vec::<i64>::new()];
        for choices in &axis_choices {
            let mut nxt = Vec::new();
            for pref in &stack {
                for &c in choices {
                    let mut p = pref.clone();
                    p.push(c);
                    nxt.push(p);
                }
            }
            stack = nxt;
        }
        for ns in stack {
            // doubled coordinates 2n + coset
            let idx: Vec<i64> = ns.iter().map(|&n| 2 * n + coset).collect();
            let p: Vec<C> = idx.iter().map(|&v| C::from_ratio(v, 2)).collect();
            let resid: Vec<C> = x.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
            let d2 = resid.iter().fold(C::zero(), |acc, r| acc.add(&r.mul(r)));
            update_best(&mut best, &mut second, idx, p, d2, resid);
        }
    }
    finish(best, second)
}

fn octavian_gap<C: Coef>(x: &[C], doubled: &[i64; 8]) -> f64 {
    if C::EXACT {
        return f64::INFINITY;
    }
    // float path: compare against the best of the other cosets around
    let mut d_best = 0.0;
    for i in 0..8 {
        let r = x[i].to_f64() - doubled[i] as f64 / 2.0;
        d_best += r * r;
    }
    let mut d_second = f64::INFINITY;
    for &mask in &octavian::halving_code() {
        let mut d = 0.0;
        let mut same = true;
        for i in 0..8 {
            let shift = if mask >> i & 1 == 1 { 0.5 } else { 0.0 };
            let y = x[i].to_f64() - shift;
            let n = (y + 0.5).floor();
            let p = n + shift;
            if (2.0 * p) as i64 != doubled[i] {
                same = false;
            }
            let r = x[i].to_f64() - p;
            d += r * r;
        }
        if !same {
            d_second = d_second.min(d);
        }
    }
    (d_second - d_best).abs()
}

/// Known exact squared covering radii of the decoded lattices, as rationals
/// in `Q(√m)` — all happen to be rational for the Table-1 catalog.
pub fn covering_radius_sq(l: &DirichletLattice) -> (i64, i64) {
    match l {
        DirichletLattice::HurwitzQuat => (1, 2),
        DirichletLattice::Octavian => (1, 2),
        DirichletLattice::Basis2 { m, b1, .. } => {
            match (m, b1) {
                // Z[i]: square cell, covering² = 1/2
                (1, [(1, 1), (0, 1)]) => (1, 2),
                _ => unreachable!("covering radius set by the preset constructor"),
            }
        }
    }
}
