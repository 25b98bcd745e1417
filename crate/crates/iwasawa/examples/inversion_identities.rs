//! The inversion identities, exactly: `‖ιh‖ = 1/‖h‖` and
//! `d(ιh, ιh') = d(h,h')/(‖h‖·‖h'‖)`, in fourth-power form on the exact
//! backend.
//!
//! ```sh
//! cargo run --release --example inversion_identities
//! ```

use iwasawa_cf::algebra::{AlgebraKind, Exq};
use iwasawa_cf::lattice::point_from_coords;
use iwasawa_cf::space::{cygan4_h, gauge4_h, invert_point, Ext, Inversion, SpaceParams};

fn main() {
    let heis = SpaceParams::new(AlgebraKind::C, 1);
    let mk = |zr: (i64, i64), zi: (i64, i64), t: (i64, i64)| {
        point_from_coords(
            heis,
            &[Exq::from_ratio(zr.0, zr.1), Exq::from_ratio(zi.0, zi.1)],
            &[Exq::from_ratio(t.0, t.1)],
        )
        .to_half()
    };
    let h = mk((1, 2), (1, 3), (1, 1));
    let hp = mk((-2, 3), (1, 5), (-1, 2));
    let ih = invert_point(heis, &Inversion::Minus, &Ext::Finite(h.clone())).finite().unwrap();
    let ihp = invert_point(heis, &Inversion::Minus, &Ext::Finite(hp.clone())).finite().unwrap();
    println!("gauge⁴(h)              = {}", gauge4_h(&h));
    println!("gauge⁴(ιh)             = {}", gauge4_h(&ih));
    println!("product                = {}", gauge4_h(&ih).mul(&gauge4_h(&h)));
    println!("d⁴(ιh, ιh')·g⁴(h)g⁴(h') = {}", cygan4_h(&ih, &ihp).mul(&gauge4_h(&h)).mul(&gauge4_h(&hp)));
    println!("d⁴(h, h')               = {}", cygan4_h(&h, &hp));
}
