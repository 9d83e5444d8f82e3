//! Build a full report for one window and render it as SVG on stdout.
//!
//!     cargo run --example svg_atlas > atlas.svg

use mukai_walls::arith::{int, rat};
use mukai_walls::atlas::Window;
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};
use mukai_walls::report::{fill_walls, AtlasReport};
use mukai_walls::svg::svg_render;

fn main() -> mukai_walls::Result<()> {
    let l = SurfaceLattice::rank_one(1)?;
    let v = MukaiVector::rank_one(2, 1, -2);
    let win = Window::from_t(rat(-11, 5), rat(16, 5), rat(1, 10), rat(2, 1))?;
    let mut rep = AtlasReport::new(&int(1), &v, Some(&win), None);
    fill_walls(&mut rep, &l, &v, &win, None, None)?;
    print!("{}", svg_render(&rep, &win)?);
    eprintln!("{}", rep.to_json());
    Ok(())
}
