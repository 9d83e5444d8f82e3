//! Exceptional classes d_u coming from isotropic u with ⟨v,u⟩ ∈ {1, 2},
//! their reflections and Markman's classification.

use mukai_walls::arith::int;
use mukai_walls::cones::{exceptional_data, isotropic_with_pairing, markman_classify};
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};

fn main() -> mukai_walls::Result<()> {
    let l = SurfaceLattice::rank_one(1)?;
    for v in [MukaiVector::rank_one(1, 0, -3), MukaiVector::rank_one(2, 1, -2)] {
        for k in [1, 2] {
            let iso = isotropic_with_pairing(&l, &v, k, &int(5))?;
            let Some(u) = iso.classes.first() else {
                println!("{v}: no isotropic class with pairing {k}");
                continue;
            };
            let ex = exceptional_data(&l, &v, u)?;
            let m = markman_classify(&l, &ex.d_u, &v)?;
            println!("{v}, u = {u}: d_u = {}, R(d_u) = {}", ex.d_u, ex.reflect(&ex.d_u)?);
            println!("  div {}, {{r, s}} = {{{}, {}}}, case {}", m.div, m.rs.0, m.rs.1, m.case.tag());
        }
    }
    Ok(())
}
