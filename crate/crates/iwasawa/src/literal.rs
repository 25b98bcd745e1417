//! Point literals: rational coordinates joined by `+`/`-` with unit
//! suffixes.
//!
//! Grammar (EBNF):
//! ```text
//! point   = term { ("+" | "-") term } ;
//! term    = rational [ unit ] | unit ;
//! rational= integer [ "/" integer ] ;
//! unit    = "i" | "j" | "k" | "e1" … "e7" | "t" | "ti" | "tj" | "tk" ;
//! ```
//! Units map to coordinates: the bare term is the first real coordinate,
//! `i/j/k` and `e1..e7` are the remaining z-coordinates (for real-kind
//! spaces `e_m` is the (m+1)-th coordinate, with `i, j, k` as aliases of
//! `e1, e2, e3`), and `t`/`ti`/`tj`/`tk` address the imaginary part of the
//! Heisenberg center. Exact backends parse to exact rationals, so
//! `parse(format(x)) = x` holds exactly.

use crate::algebra::Coef;
use crate::error::{Error, Result};
use crate::lattice::{point_from_coords, t_coords, z_coords};
use crate::space::{Point, SpaceParams};

fn unit_index(space: SpaceParams, unit: &str) -> Result<(bool, usize)> {
    // returns (is_t_part, coordinate index within that part)
    let dz = space.n * space.kind.dim();
    let dt = space.kind.dim() - 1;
    let z = |i: usize| -> Result<(bool, usize)> {
        if i < dz {
            Ok((false, i))
        } else {
            Err(Error::Parse(format!("unit `{unit}` out of range for this space")))
        }
    };
    let t = |i: usize| -> Result<(bool, usize)> {
        if i < dt {
            Ok((true, i))
        } else {
            Err(Error::Parse(format!("unit `{unit}` out of range for this space")))
        }
    };
    match unit {
        "" => z(0),
        "i" | "e1" => z(1),
        "j" | "e2" => z(2),
        "k" | "e3" => z(3),
        "e4" => z(4),
        "e5" => z(5),
        "e6" => z(6),
        "e7" => z(7),
        "t" | "ti" => t(0),
        "tj" => t(1),
        "tk" => t(2),
        _ => Err(Error::Parse(format!("unknown unit `{unit}`"))),
    }
}

/// Parse a point literal for the given space.
pub fn parse_point<C: Coef>(space: SpaceParams, s: &str) -> Result<Point<C>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty point literal".into()));
    }
    let dz = space.n * space.kind.dim();
    let dt = space.kind.dim() - 1;
    let mut zc = vec![C::zero(); dz];
    let mut tc = vec![C::zero(); dt];
    // split into signed terms
    let bytes = s.as_bytes();
    let mut idx = 0usize;
    while idx < bytes.len() {
        let mut sign = 1i64;
        while idx < bytes.len() && (bytes[idx] == b'+' || bytes[idx] == b'-') {
            if bytes[idx] == b'-' {
                sign = -sign;
            }
            idx += 1;
        }
        let start = idx;
        while idx < bytes.len() && bytes[idx] != b'+' && bytes[idx] != b'-' {
            idx += 1;
        }
        let term = &s[start..idx];
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        // split numeric part from the unit suffix
        let split = term
            .find(|c: char| c.is_ascii_alphabetic())
            .unwrap_or(term.len());
        let (num_str, unit) = term.split_at(split);
        let value: C = if num_str.is_empty() {
            C::from_int(1)
        } else {
            match num_str.find('/') {
                None => {
                    let n: i64 = num_str
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad number `{num_str}`")))?;
                    C::from_int(n)
                }
                Some(p) => {
                    let n: i64 = num_str[..p]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad numerator in `{num_str}`")))?;
                    let d: i64 = num_str[p + 1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad denominator in `{num_str}`")))?;
                    if d == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    C::from_ratio(n, d)
                }
            }
        };
        let value = if sign < 0 { value.neg() } else { value };
        let (is_t, ci) = unit_index(space, unit)?;
        if is_t {
            tc[ci] = tc[ci].add(&value);
        } else {
            zc[ci] = zc[ci].add(&value);
        }
    }
    Ok(point_from_coords(space, &zc, &tc))
}

fn coef_string<C: Coef>(v: &C) -> String {
    format!("{v:?}")
}

/// Canonical literal of a point (inverse of [`parse_point`] on rational
/// points).
pub fn format_point<C: Coef>(space: SpaceParams, p: &Point<C>) -> String {
    const Z_UNITS: [&str; 8] = ["", "i", "j", "k", "e4", "e5", "e6", "e7"];
    const T_UNITS: [&str; 3] = ["t", "tj", "tk"];
    let mut out = String::new();
    let mut push = |v: &C, unit: &str, out: &mut String| {
        if v.is_zero() {
            return;
        }
        let s = coef_string(v);
        let neg = s.starts_with('-');
        let body = if neg { &s[1..] } else { &s[..] };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(body);
        out.push_str(unit);
    };
    let zc = z_coords(p);
    let dim = space.kind.dim();
    for (i, v) in zc.iter().enumerate() {
        // real-kind spaces address coordinates through e-units directly
        let unit = if space.kind == crate::algebra::AlgebraKind::R {
            Z_UNITS[i.min(7)]
        } else {
            Z_UNITS[i % dim]
        };
        push(v, unit, &mut out);
    }
    for (i, v) in t_coords(p).iter().enumerate() {
        push(v, T_UNITS[i], &mut out);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraKind, Exq};

    #[test]
    fn parse_examples() {
        let c2 = SpaceParams::new(AlgebraKind::R, 2);
        let p: Point<Exq> = parse_point(c2, "2/5+1/5i").unwrap();
        assert_eq!(z_coords(&p), vec![Exq::from_ratio(2, 5), Exq::from_ratio(1, 5)]);
        let r1 = SpaceParams::new(AlgebraKind::R, 1);
        let q: Point<Exq> = parse_point(r1, "5/12").unwrap();
        assert_eq!(z_coords(&q), vec![Exq::from_ratio(5, 12)]);
        let heis = SpaceParams::new(AlgebraKind::C, 1);
        let h: Point<Exq> = parse_point(heis, "1/2-1/3i+3/4t").unwrap();
        assert_eq!(
            z_coords(&h),
            vec![Exq::from_ratio(1, 2), Exq::from_ratio(-1, 3)]
        );
        assert_eq!(t_coords(&h), vec![Exq::from_ratio(3, 4)]);
        // bad literals
        assert!(parse_point::<Exq>(r1, "1/0").is_err());
        assert!(parse_point::<Exq>(r1, "2+3q").is_err());
        assert!(parse_point::<Exq>(r1, "1+2i").is_err(), "unit out of range on X¹_R");
    }

    #[test]
    fn roundtrip_exact() {
        let heis = SpaceParams::new(AlgebraKind::C, 1);
        for (zr, zi, t) in [(1, 2, 3), (-3, 5, -7), (0, -2, 9)] {
            let p = point_from_coords(
                heis,
                &[Exq::from_ratio(zr, 7), Exq::from_ratio(zi, 11)],
                &[Exq::from_ratio(t, 13)],
            );
            let s = format_point(heis, &p);
            let back: Point<Exq> = parse_point(heis, &s).unwrap();
            assert_eq!(back, p, "roundtrip of `{s}`");
        }
        let oct = SpaceParams::new(AlgebraKind::R, 8);
        let coords: Vec<Exq> = (0..8).map(|i| Exq::from_ratio(i as i64 - 3, 5)).collect();
        let p = point_from_coords(oct, &coords, &[]);
        let s = format_point(oct, &p);
        let back: Point<Exq> = parse_point(oct, &s).unwrap();
        assert_eq!(back, p, "octonion roundtrip of `{s}`");
    }
}
