//! Boundary of the positive cone, movable-cone trichotomy and the Hilbert
//! scheme criterion for a few Mukai vectors.

use mukai_walls::cones::{boundary_rays, hilbert_birational, trichotomy};
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};

fn main() -> mukai_walls::Result<()> {
    for (n, (r, d, a)) in [(1, (1, 0, -3)), (1, (2, 1, -2)), (39, (6, 1, 6)), (2, (1, 1, -1))] {
        let l = SurfaceLattice::rank_one(n)?;
        let v = MukaiVector::rank_one(r, d, a);
        let b = boundary_rays(&l, &v)?;
        let t = trichotomy(&l, &v)?;
        let h = hilbert_birational(&l, &v)?;
        println!("n = {n:>2}, v = {v}");
        println!("  s₋ = {}, s₊ = {}, rational boundary: {}", b.s_minus, b.s_plus, b.rational);
        println!("  case {} ({:?})", t.case, t.certificate);
        println!("  birational to Pic⁰ × Hilb: {}", h.answer);
    }
    Ok(())
}
