//! The octonion integer lattice (Cayley / octavian integers) in the
//! Cayley–Dickson basis, as a scaled E8 lattice: integer vectors together
//! with half-integer vectors whose half-coordinate support is a codeword of
//! the [8,4] extended Hamming code built from the Fano lines of the
//! multiplication table.

use crate::algebra::Coef;

/// Fano lines of the Cayley–Dickson octonion basis: e_a e_b = ±e_c.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [2, 4, 6],
    [3, 4, 7],
    [2, 5, 7],
    [3, 5, 6],
    [1, 6, 7],
];

/// The 16 halving-set codewords as bitmasks over coordinates 0..7.
///
/// The naive choice `{0} ∪ line` (Kirmse's sets) is not closed under
/// multiplication; swapping coordinates 0 and 1 in every set repairs it.
pub fn halving_code() -> Vec<u8> {
    let swap01 = |mask: u8| -> u8 {
        let b0 = mask & 1;
        let b1 = (mask >> 1) & 1;
        (mask & !3) | (b0 << 1) | b1
    };
    let mut code = vec![0u8, 0xff];
    for line in FANO_LINES {
        let mask: u8 = 1 | line.iter().map(|&i| 1u8 << i).sum::<u8>();
        code.push(swap01(mask));
        code.push(swap01(!mask));
    }
    code.sort_unstable();
    code
}

/// Whether a doubled-coordinate vector (entries `2x_i` required integral)
/// belongs to the lattice: the odd-coordinate support must be a codeword.
pub fn doubled_in_lattice(doubled: &[i64; 8]) -> bool {
    let mut mask = 0u8;
    for (i, v) in doubled.iter().enumerate() {
        if v.rem_euclid(2) != 0 {
            mask |= 1 << i;
        }
    }
    halving_code().contains(&mask)
}

/// All 240 unit octavians (norm 1), as doubled coordinates.
pub fn units_doubled() -> Vec<[i64; 8]> {
    let mut out = Vec::new();
    for i in 0..8 {
        for s in [2i64, -2] {
            let mut v = [0i64; 8];
            v[i] = s;
            out.push(v);
        }
    }
    for &mask in &halving_code() {
        if mask.count_ones() != 4 {
            continue;
        }
        let idx: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
        for signs in 0..16u8 {
            let mut v = [0i64; 8];
            for (b, &i) in idx.iter().enumerate() {
                v[i] = if signs >> b & 1 == 1 { -1 } else { 1 };
            }
            out.push(v);
        }
    }
    out
}

/// Nearest octavian to `x` (real coordinates), exact, ties broken by the
/// lexicographically smallest residual `x − p`. Returns doubled integer
/// coordinates of the lattice point.
pub fn nearest_octavian<C: Coef>(x: &[C]) -> [i64; 8] {
    assert_eq!(x.len(), 8);
    let half = C::from_ratio(1, 2);
    let mut best: Option<([i64; 8], C, Vec<C>)> = None;
    for &mask in &halving_code() {
        // candidate: round each coordinate of x − c/2, add back c/2
        let mut doubled = [0i64; 8];
        for i in 0..8 {
            let shift = if mask >> i & 1 == 1 { 1i64 } else { 0 };
            // nearest value of the form n + shift/2
            let y = x[i].sub(&half.mul(&C::from_int(shift)));
            let n = y.round_nearest_int();
            doubled[i] = 2 * n + shift;
        }
        let (d2, resid) = dist_sq_doubled(x, &doubled);
        let better = match &best {
            None => true,
            Some((_, bd, bresid)) => match d2.cmp_real(bd) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => lex_less(&resid, bresid),
            },
        };
        if better {
            best = Some((doubled, d2, resid));
        }
    }
    best.unwrap().0
}

fn dist_sq_doubled<C: Coef>(x: &[C], doubled: &[i64; 8]) -> (C, Vec<C>) {
    let mut d2 = C::zero();
    let mut resid = Vec::with_capacity(8);
    for i in 0..8 {
        let p = C::from_ratio(doubled[i], 2);
        let r = x[i].sub(&p);
        d2 = d2.add(&r.mul(&r));
        resid.push(r);
    }
    (d2, resid)
}

fn lex_less<C: Coef>(a: &[C], b: &[C]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_real(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraKind, Exq, Scalar};

    #[test]
    fn code_is_linear() {
        let code = halving_code();
        assert_eq!(code.len(), 16);
        for &a in &code {
            for &b in &code {
                assert!(code.contains(&(a ^ b)), "code not closed under xor: {a:08b} ^ {b:08b}");
            }
        }
    }

    #[test]
    fn unit_count_is_240() {
        let units = units_doubled();
        assert_eq!(units.len(), 240);
        for u in &units {
            let norm4: i64 = u.iter().map(|v| v * v).sum();
            assert_eq!(norm4, 4, "doubled norm must be 4");
            assert!(doubled_in_lattice(u));
        }
    }

    fn to_scalar(doubled: &[i64; 8]) -> Scalar<Exq> {
        Scalar::new(
            AlgebraKind::O,
            doubled.iter().map(|&v| Exq::from_ratio(v, 2)).collect(),
        )
    }

    #[test]
    fn closed_under_multiplication() {
        // unit · unit stays in the lattice (and stays a unit); this pins the
        // compatibility of the halving code with the multiplication table.
        let units = units_doubled();
        for a in units.iter().step_by(3) {
            for b in units.iter().step_by(5) {
                let p = to_scalar(a).mul(&to_scalar(b));
                let doubled: Vec<i64> = p
                    .coords
                    .iter()
                    .map(|c| {
                        let v = c.mul(&Exq::from_int(2));
                        let r = v.as_rational().expect("rational").clone();
                        assert!(r.is_integer(), "2·coordinate not integral: {r}");
                        use num_traits::ToPrimitive;
                        r.to_integer().to_i64().unwrap()
                    })
                    .collect();
                let arr: [i64; 8] = doubled.try_into().unwrap();
                assert!(doubled_in_lattice(&arr), "product left the lattice");
                assert_eq!(arr.iter().map(|v| v * v).sum::<i64>(), 4, "product not a unit");
            }
        }
    }

    #[test]
    fn decode_tiling_and_covering() {
        // residuals of random rationals stay within the covering radius
        // √(1/2) of the scaled E8 lattice.
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as i64 % 400) - 200
        };
        for _ in 0..50 {
            let x: Vec<Exq> = (0..8).map(|_| Exq::from_ratio(next(), 100)).collect();
            let p = nearest_octavian(&x);
            let mut d2 = Exq::from_int(0);
            for i in 0..8 {
                let r = x[i].sub(&Exq::from_ratio(p[i], 2));
                d2 = d2.add(&r.mul(&r));
            }
            // d² ≤ 1/2
            assert!(d2.cmp_real(&Exq::from_ratio(1, 2)) != std::cmp::Ordering::Greater);
        }
    }
}
