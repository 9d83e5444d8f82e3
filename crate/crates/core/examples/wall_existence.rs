//! Deciding whether any wall exists at all, with and without a search bound.

use mukai_walls::arith::int;
use mukai_walls::atlas::walls_exist;
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};

fn main() -> mukai_walls::Result<()> {
    let cases = [(39, (6, 1, 6), None), (1, (2, 1, -2), None), (11, (3, 1, 3), None), (11, (3, 1, 3), Some(2))];
    for (n, (r, d, a), bound) in cases {
        let l = SurfaceLattice::rank_one(n)?;
        let v = MukaiVector::rank_one(r, d, a);
        let b = bound.map(int);
        let res = walls_exist(&l, &v, b.as_ref())?;
        let shown = bound.map_or("default".to_string(), |b| b.to_string());
        println!("n = {n:>2}, v = {v}, bound {shown}: {res:?}");
    }
    Ok(())
}
