use mukai_walls::arith::{int, rat, Int};
use num_traits::Signed;
use mukai_walls::atlas::{brute_force_walls, enumerate_walls, Window};
use mukai_walls::lattice::{MukaiVector, SurfaceLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng) -> (SurfaceLattice, MukaiVector, Window) {
    loop {
        let n = rng.gen_range(1..=5);
        let l = SurfaceLattice::rank_one(n).unwrap();
        let v = MukaiVector::rank_one(rng.gen_range(-6..=6), rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        if !v.is_primitive() || l.square(&v).unwrap() <= int(0) {
            continue;
        }
        let den = rng.gen_range(1..=10);
        let s_lo = rng.gen_range(-30..=20);
        let s_hi = s_lo + rng.gen_range(1..=20);
        let t_lo = rng.gen_range(1..=10);
        let t_hi = t_lo + rng.gen_range(0..=20);
        let win = Window::from_t(rat(s_lo, den), rat(s_hi, den), rat(t_lo, den), rat(t_hi, den)).unwrap();
        return (l, v, win);
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..24 {
        let (l, v, win) = random_instance(&mut rng);
        let fast: Vec<_> = enumerate_walls(&l, &v, &win).unwrap().into_iter().map(|w| w.pqr).collect();
        let slow: Vec<_> = brute_force_walls(&l, &v, &win, 40).unwrap().into_iter().map(|w| w.pqr).collect();
        assert_eq!(fast, slow, "v = {v}, n = {:?}, window {win:?}", l.n());
    }
}

/// On large windows the bounded oracle may miss walls, but only those whose
/// witnesses all lie outside its box.
#[test]
fn brute_force_walls_are_found_and_misses_are_large() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let bound = 40;
    for _ in 0..24 {
        let (l, v, win) = random_instance(&mut rng);
        let fast = enumerate_walls(&l, &v, &win).unwrap();
        let slow: Vec<_> = brute_force_walls(&l, &v, &win, bound).unwrap().into_iter().map(|w| w.pqr).collect();
        for p in &slow {
            assert!(fast.iter().any(|w| &w.pqr == p), "{p} missed for v = {v}");
        }
        for w in fast.iter().filter(|w| !slow.contains(&w.pqr)) {
            for x in &w.witnesses {
                assert!(x.entries().any(|e| e.abs() > Int::from(bound)), "{} has small witness {x}", w.pqr);
            }
        }
    }
}
