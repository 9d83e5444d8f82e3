//! Pell solutions and the infinite cyclic part of the stabilizer of v.

use mukai_walls::arith::int;
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};
use mukai_walls::pell::{pell_fundamental, sqrt_cf};
use mukai_walls::sym2::{act_on_mukai, stabilizer_generator, Stabilizer};

fn main() -> mukai_walls::Result<()> {
    for d in [5, 13, 61] {
        let (a0, period) = sqrt_cf(&int(d)).expect("not a square");
        let sol = pell_fundamental(&int(d), 1).expect("Pell always solvable");
        let period: Vec<String> = period.iter().map(ToString::to_string).collect();
        println!("√{d} = [{a0}; {}], x² - {d}y² = 1 at ({}, {})", period.join(","), sol.x, sol.y);
    }

    let l = SurfaceLattice::rank_one(1)?;
    let v = MukaiVector::rank_one(2, 1, -2);
    match stabilizer_generator(&l, &v)? {
        Stabilizer::Infinite(g) => {
            println!("stabilizer of {v} generated by {g}, ε = {}", g.epsilon());
            println!("g·v = {}", act_on_mukai(&l, &v, &g)?);
            if let Some((a, b)) = g.fixed_points() {
                println!("fixed points on the boundary: {a}, {b}");
            }
        }
        Stabilizer::Finite => println!("nℓ is a square, no infinite part"),
    }
    Ok(())
}
