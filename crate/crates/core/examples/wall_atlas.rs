//! Walls for v = (2, 1, -2) on a principally polarized abelian surface, and
//! the chamber containing a sample point.

use mukai_walls::arith::rat;
use mukai_walls::atlas::{enumerate_walls, locate_chamber, ChamberSide, Window};
use mukai_walls::charge::{StabilityPoint, WallGeometry};
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};

fn main() -> mukai_walls::Result<()> {
    let l = SurfaceLattice::rank_one(1)?;
    let v = MukaiVector::rank_one(2, 1, -2);
    let win = Window::from_t(rat(-11, 5), rat(16, 5), rat(1, 10), rat(2, 1))?;

    let walls = enumerate_walls(&l, &v, &win)?;
    println!("{} walls for {v} in s ∈ [-11/5, 16/5], t ∈ [1/10, 2]", walls.len());
    for w in &walls {
        let shape = match &w.geometry {
            WallGeometry::Line { s0 } => format!("line s = {s0}"),
            WallGeometry::Circle { center, radius2 } => format!("circle center {center}, radius² {radius2}"),
            WallGeometry::Empty => "empty".into(),
        };
        println!("  {:<12} {shape:<34} witness {}", w.pqr.to_string(), w.witnesses[0]);
    }

    // t² = 1/4 at s = 1/4 lies between the line s = 1/2 and the circles on the left
    let p = StabilityPoint::rank_one(rat(1, 4), rat(1, 4));
    let ch = locate_chamber(&l, &v, &p)?;
    let side = |c: &ChamberSide| match c {
        ChamberSide::Wall(w) => format!("wall {}", w.pqr),
        ChamberSide::Boundary(end) => format!("boundary {end:?}"),
    };
    println!("chamber of {p}: between {} and {}", side(&ch.left), side(&ch.right));
    Ok(())
}
