//! Render the rank-1 cylinder decomposition of the four Hurwitz-family
//! variants as SVG files in the current directory.
//!
//! ```sh
//! cargo run --release --example cylinders
//! ```

use iwasawa_cf::experiments::cylinder_cells;
use iwasawa_cf::lattice::PresetId;
use iwasawa_cf::render::render_svg;

fn main() {
    for (id, file) in [
        (PresetId::Hurwitz, "cells_hurwitz.svg"),
        (PresetId::HurwitzAlpha((3, 10)), "cells_hurwitz_alpha.svg"),
        (PresetId::FoldedHurwitz, "cells_folded_hurwitz.svg"),
        (PresetId::HurwitzTetris, "cells_hurwitz_tetris.svg"),
    ] {
        let grid = cylinder_cells(id, 512, None, 0).unwrap();
        let svg = render_svg(&grid);
        std::fs::write(file, &svg).unwrap();
        println!(
            "{file}: {} cells, unlabeled fraction {:.5}",
            grid.distinct_cells,
            grid.unlabeled_fraction()
        );
    }
}
