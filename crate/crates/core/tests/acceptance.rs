//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mukai_walls::arith::{int, rat, rat_int, Int, Rat};
use mukai_walls::atlas::{brute_force_walls, enumerate_walls, wall_from_witness, walls_exist, Wall, WallExistence, Window};
use mukai_walls::charge::{raw_pqr, wall_determinant, StabilityPoint, WallGeometry};
use mukai_walls::cones::{
    boundary_rays, exceptional_data, hilbert_birational, isotropic_with_pairing, markman_classify, trichotomy, xi_vector,
    MarkmanCase,
};
use mukai_walls::lattice::{pair3, MukaiVector, RationalMukaiVector, SurfaceLattice};
use mukai_walls::pell::{pell_brute, pell_fundamental};
use mukai_walls::quadext::QuadExt;
use mukai_walls::sym2::{act_on_mukai, halfplane_action, stabilizer_generator, Stabilizer};
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn mv(r: i64, d: i64, a: i64) -> MukaiVector {
    MukaiVector::rank_one(r, d, a)
}

fn walls_52() -> (SurfaceLattice, MukaiVector, Window) {
    let l = SurfaceLattice::rank_one(1).unwrap();
    let win = Window::from_t(rat(-11, 5), rat(16, 5), rat(1, 10), rat(2, 1)).unwrap();
    (l, mv(2, 1, -2), win)
}

/// Random primitive v with ⟨v²⟩ > 0, |entries| ≤ `e`, n ≤ `nmax`.
fn random_v(rng: &mut ChaCha8Rng, nmax: i64, e: i64, nonzero_rank: bool) -> (SurfaceLattice, MukaiVector) {
    loop {
        let n = rng.gen_range(1..=nmax);
        let (r, d, a) = (rng.gen_range(-e..=e), rng.gen_range(-e..=e), rng.gen_range(-e..=e));
        let ell = n * d * d - r * a;
        if r.gcd(&d).gcd(&a) != 1 || ell <= 0 || (nonzero_rank && r == 0) {
            continue;
        }
        return (SurfaceLattice::rank_one(n).unwrap(), mv(r, d, a));
    }
}

fn c1_walls_52() -> Outcome {
    let (l, v, win) = walls_52();
    let start = Instant::now();
    let walls = enumerate_walls(&l, &v, &win).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(walls.len() == 7, "{} walls", walls.len());
    let geo: Vec<WallGeometry> = walls.iter().map(|w| w.geometry.clone()).collect();
    ensure!(geo.contains(&WallGeometry::Line { s0: rat(1, 2) }), "line s = 1/2 missing");
    // t² + s(s + 2) = 0
    ensure!(walls.iter().any(|w| w.pqr.0 == [int(1), int(2), int(0)]), "circle t² + s(s+2) = 0 missing");
    let circle = |c: Rat, r2: Rat| WallGeometry::Circle { center: c, radius2: r2 };
    for (c, r2) in [(rat(-2, 3), rat(1, 9)), (rat(-5, 8), rat(1, 64)), (rat(2, 1), rat(1, 1)), (rat(5, 3), rat(1, 9)), (rat(13, 8), rat(1, 64))] {
        ensure!(geo.contains(&circle(c.clone(), r2.clone())), "circle ({c}, {r2}) missing");
    }
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(())
}

fn c2_no_wall() -> Outcome {
    let l = SurfaceLattice::rank_one(39).unwrap();
    let v = mv(6, 1, 6);
    let ex = walls_exist(&l, &v, None).map_err(|e| e.to_string())?;
    ensure!(matches!(ex, WallExistence::NoWallCertified(_)), "{ex:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut wins = vec![Window::from_t(rat(-100, 1), rat(100, 1), rat(1, 1000), rat(100, 1)).unwrap()];
    for _ in 0..20 {
        let q = rng.gen_range(1..=50);
        let lo = rng.gen_range(-200..=200);
        let t = rng.gen_range(1..=100);
        wins.push(Window::from_t(rat(lo, q), rat(lo + rng.gen_range(1..=100), q), rat(t, 100), rat(t + rng.gen_range(0..=500), 100)).unwrap());
    }
    for w in &wins {
        let found = enumerate_walls(&l, &v, w).map_err(|e| e.to_string())?;
        ensure!(found.is_empty(), "{} walls in {w:?}", found.len());
    }
    Ok(())
}

/// Fundamental solution of x² - Dy² = 1 by the chakravala method.
fn chakravala(d: i128) -> (i128, i128) {
    let root = d.sqrt();
    let (mut a, mut b) = (if (root + 1) * (root + 1) - d < d - root * root { root + 1 } else { root }, 1i128);
    let mut k = a * a - d;
    while k != 1 {
        let ka = k.abs();
        // m ≡ m₀ mod |k| with k | a + bm, closest to √D in |m² - D|
        let m0 = (0..ka).find(|m| (a + b * m) % ka == 0).unwrap();
        let below = m0 + ((root - m0).div_euclid(ka)) * ka;
        let m = [below, below + ka]
            .into_iter()
            .filter(|m| *m > 0)
            .min_by_key(|m| (m * m - d).abs())
            .unwrap();
        (a, b, k) = ((a * m + d * b) / ka, (a + b * m) / ka, (m * m - d) / k);
        (a, b) = (a.abs(), b.abs());
    }
    (a, b)
}

fn c3_pell() -> Outcome {
    let start = Instant::now();
    for (d, x, y) in [(5, 9, 4), (13, 649, 180)] {
        let sol = pell_fundamental(&int(d), 1).ok_or("no solution")?;
        ensure!((sol.x.clone(), sol.y.clone()) == (int(x), int(y)), "D = {d}: ({}, {})", sol.x, sol.y);
        let brute = pell_brute(&int(d), 1, 1000).ok_or("brute force found nothing")?;
        ensure!(brute == sol, "D = {d}: brute force disagrees");
    }
    for d in 2..=200i64 {
        if d.sqrt() * d.sqrt() == d {
            continue;
        }
        let sol = pell_fundamental(&int(d), 1).ok_or(format!("D = {d}: no solution"))?;
        let (x, y) = chakravala(d as i128);
        ensure!(sol.x == Int::from(x) && sol.y == Int::from(y), "D = {d}: ({}, {}) vs ({x}, {y})", sol.x, sol.y);
        if y <= 20_000 {
            ensure!(pell_brute(&int(d), 1, y as u64).as_ref() == Some(&sol), "D = {d}: brute force disagrees");
        }
    }
    ensure!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
    Ok(())
}

fn c4_stabilizer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    while done < 50 {
        let (l, v) = random_v(&mut rng, 6, 9, false);
        let nl: Int = l.n().unwrap() * l.square(&v).unwrap() / 2;
        if nl.sqrt() * nl.sqrt() == nl {
            continue;
        }
        let Stabilizer::Infinite(g) = stabilizer_generator(&l, &v).map_err(|e| e.to_string())? else {
            return Err(format!("{v}: no infinite stabilizer"));
        };
        ensure!(act_on_mukai(&l, &v, &g).map_err(|e| e.to_string())? == v, "{v} moved by {g}");
        ensure!(g.epsilon() == 1, "{v}: ε = {}", g.epsilon());
        done += 1;
    }
    let l = SurfaceLattice::rank_one(1).unwrap();
    let Stabilizer::Infinite(g) = stabilizer_generator(&l, &mv(2, 1, -2)).map_err(|e| e.to_string())? else {
        return Err("(2,1,-2): no infinite stabilizer".into());
    };
    ensure!([&g.a, &g.b, &g.c, &g.d] == [&int(5), &int(8), &int(8), &int(13)], "generator {g}");
    Ok(())
}

fn c5_determinant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rq = |rng: &mut ChaCha8Rng, lo: i64| rat(rng.gen_range(lo..=30), rng.gen_range(1..=9));
    let mut zeros = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=6);
        let l = SurfaceLattice::rank_one(n).unwrap();
        let v = loop {
            let v = mv(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if !v.r.is_zero() {
                break v;
            }
        };
        let v1 = RationalMukaiVector::rank_one(rq(&mut rng, -30), rq(&mut rng, -30), rq(&mut rng, -30));
        let (s, t2) = if i % 2 == 0 {
            (rq(&mut rng, -30), rq(&mut rng, 1))
        } else {
            // a point on the wall of v₁ when it is a circle
            let t = v.triple().unwrap();
            let den = v1.entries().fold(Int::from(1), |acc, x| acc.lcm(x.denom()));
            let w: [Int; 3] = std::array::from_fn(|j| (v1.entries().nth(j).unwrap() * rat_int(&den)).to_integer());
            let [p, q, r] = raw_pqr(&int(n), &t, &w).map(|x| rat_int(&x));
            if p.is_zero() {
                (rq(&mut rng, -30), rq(&mut rng, 1))
            } else {
                let c = -&q / (&p * rat(2, 1));
                let rho2 = &c * &c - &r / &p;
                if !rho2.is_positive() {
                    (rq(&mut rng, -30), rq(&mut rng, 1))
                } else {
                    let delta = &rho2 / (rat(1, 1) + &rho2) * rat(rng.gen_range(-9..=9), 10);
                    (&c + &delta, &rho2 - &delta * &delta)
                }
            }
        };
        let p = StabilityPoint::rank_one(s, t2);
        let det = wall_determinant(&l, &v.to_rational(), &v1, &p).map_err(|e| e.to_string())?;
        let xi = xi_vector(&l, &v, &p).map_err(|e| e.to_string())?;
        let r_xi = rat_int(&v.r) * l.pairing_q(&xi, &v1).map_err(|e| e.to_string())?;
        ensure!(det.is_zero() == r_xi.is_zero(), "zero sets differ for {v}, {v1:?}");
        ensure!(r_xi == rat_int(&v.r) * &det, "constant is not r for {v}, {v1:?}");
        zeros += det.is_zero() as usize;
    }
    ensure!(zeros >= 20, "only {zeros} on-wall cases exercised");
    Ok(())
}

fn pair_e(n: &Int, x: &[QuadExt; 3], y: &[QuadExt; 3]) -> QuadExt {
    let two_n = QuadExt::rational(rat_int(&(n * 2)));
    two_n.mul(&x[1]).mul(&y[1]).sub(&x[0].mul(&y[2])).sub(&x[2].mul(&y[0]))
}

fn c6_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (l, v) = random_v(&mut rng, 6, 9, true);
        let n = l.n().unwrap();
        let ell = l.square(&v).unwrap() / 2;
        let b = boundary_rays(&l, &v).map_err(|e| e.to_string())?;
        let tv = v.triple().unwrap().map(|x| QuadExt::rational(rat_int(&x)));
        for (ray, s) in [(&b.lower, &b.s_minus), (&b.upper, &b.s_plus)] {
            let x = ray.quadratic_class();
            ensure!(pair_e(&n, &x, &x).is_zero(), "{v}: boundary class not isotropic");
            ensure!(pair_e(&n, &x, &tv).is_zero(), "{v}: boundary class not in v⊥");
            // n(rs - d)² = ℓ
            let dev = s.scale(&rat_int(&v.r)).add_rat(&-rat_int(&v.c1[0]));
            ensure!(dev.mul(&dev).scale(&rat_int(&n)) == QuadExt::rational(rat_int(&ell)), "{v}: s± = {s}");
        }
        ensure!(b.s_minus.sub(&b.s_plus).is_negative(), "{v}: s₋ ≥ s₊");
    }
    Ok(())
}

fn c7_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut with_walls = 0;
    for _ in 0..24 {
        let (l, v) = random_v(&mut rng, 5, 6, false);
        // small windows (|s| ≤ 3, t ≤ 3) keep every witness inside the brute-force box
        let den = rng.gen_range(1..=10);
        let s_lo = rng.gen_range(-3 * den..=2 * den);
        let t_lo = rng.gen_range(1..=den);
        let win = Window::from_t(
            rat(s_lo, den),
            rat(s_lo + rng.gen_range(1..=den), den),
            rat(t_lo, den),
            rat(t_lo + rng.gen_range(0..=2 * den), den),
        )
        .unwrap();
        let pqrs = |w: Vec<Wall>| w.into_iter().map(|w| w.pqr).collect::<Vec<_>>();
        let fast = pqrs(enumerate_walls(&l, &v, &win).map_err(|e| e.to_string())?);
        let slow = pqrs(brute_force_walls(&l, &v, &win, 40).map_err(|e| e.to_string())?);
        ensure!(fast == slow, "{v}, n = {:?}: {} vs {} walls", l.n(), fast.len(), slow.len());
        with_walls += !fast.is_empty() as usize;
    }
    ensure!(with_walls >= 12, "only {with_walls} instances have walls");
    Ok(())
}

fn c8_trichotomy() -> Outcome {
    let l1 = SurfaceLattice::rank_one(1).unwrap();
    for ell in 3..=10 {
        let v = mv(1, 0, -ell);
        let t = trichotomy(&l1, &v).map_err(|e| e.to_string())?;
        ensure!(t.case == 3, "{v}: case {}", t.case);
        ensure!(hilbert_birational(&l1, &v).map_err(|e| e.to_string())?.answer, "{v}: not birational to Hilb");
    }
    let v = mv(2, 1, -2);
    let t = trichotomy(&l1, &v).map_err(|e| e.to_string())?;
    ensure!(t.case == 2, "{v}: case {}", t.case);
    ensure!(!hilbert_birational(&l1, &v).map_err(|e| e.to_string())?.answer, "{v}: birational to Hilb");
    let l39 = SurfaceLattice::rank_one(39).unwrap();
    let t = trichotomy(&l39, &mv(6, 1, 6)).map_err(|e| e.to_string())?;
    ensure!(t.case == 1, "(6,1,6): case {}", t.case);
    Ok(())
}

fn c9_markman() -> Outcome {
    let l = SurfaceLattice::rank_one(1).unwrap();
    // pairing-one class u = (0,0,-1) on (1,0,-ℓ)
    for ell in 3..=10 {
        let v = mv(1, 0, -ell);
        let u = mv(0, 0, -1);
        ensure!(l.pairing(&v, &u).unwrap() == int(1), "⟨v,u⟩ ≠ 1");
        let ex = exceptional_data(&l, &v, &u).map_err(|e| e.to_string())?;
        // d_u = v - ⟨v²⟩/⟨v,u⟩ u
        ensure!(ex.d_u == v.sub(&u.scale(&l.square(&v).unwrap())), "d_u = {}", ex.d_u);
        let m = markman_classify(&l, &ex.d_u, &v).map_err(|e| e.to_string())?;
        ensure!(m.div == int(2 * ell) && m.rs == (int(1), int(ell)), "ℓ = {ell}: div {} rs {:?}", m.div, m.rs);
        ensure!(m.spe && m.case == MarkmanCase::One, "ℓ = {ell}: case {}", m.case.tag());
    }
    // pairing-two class u = (1,0,0) on (2,1,-2), ℓ = 5
    let v = mv(2, 1, -2);
    let u = mv(1, 0, 0);
    ensure!(l.pairing(&v, &u).unwrap() == int(2), "⟨v,u⟩ ≠ 2");
    let ex = exceptional_data(&l, &v, &u).map_err(|e| e.to_string())?;
    ensure!(ex.d_u == mv(-3, 1, -2), "d_u = {}", ex.d_u);
    let m = markman_classify(&l, &ex.d_u, &v).map_err(|e| e.to_string())?;
    ensure!(m.div == int(5) && m.rs == (int(1), int(5)), "div {} rs {:?}", m.div, m.rs);
    ensure!(m.spe && m.case == MarkmanCase::TwoB, "case {}", m.case.tag());
    Ok(())
}

/// A window around the top of a wall, so an enumeration there must list it.
fn window_around(w: &Wall) -> Window {
    match &w.geometry {
        WallGeometry::Line { s0 } => Window::new(s0 - rat(1, 1), s0 + rat(1, 1), rat(1, 1), rat(2, 1)).unwrap(),
        WallGeometry::Circle { center, radius2 } => {
            let half = rat(1, 1) + radius2;
            Window::new(center - &half, center + &half, radius2 / rat(4, 1), radius2.clone()).unwrap()
        }
        WallGeometry::Empty => unreachable!("enumerated walls are nonempty"),
    }
}

fn c10_equivariance() -> Outcome {
    let (l, v, win) = walls_52();
    let Stabilizer::Infinite(g) = stabilizer_generator(&l, &v).map_err(|e| e.to_string())? else {
        return Err("no infinite stabilizer".into());
    };
    for w in enumerate_walls(&l, &v, &win).map_err(|e| e.to_string())? {
        for h in [g.clone(), g.inverse()] {
            let moved = act_on_mukai(&l, &w.witnesses[0], &h).map_err(|e| e.to_string())?;
            let image = wall_from_witness(&l, &v, &moved).map_err(|e| e.to_string())?;
            let [p, q, r] = w.pqr.0.clone().map(|x| rat_int(&x));
            let pt = if p.is_zero() {
                StabilityPoint::rank_one(-&r / &q, rat(1, 1))
            } else {
                let c = -&q / (&p * rat(2, 1));
                StabilityPoint::rank_one(c.clone(), &c * &c - &r / &p)
            };
            let hp = halfplane_action(&h, &pt).map_err(|e| e.to_string())?;
            ensure!(image.pqr.eval(hp.s(), &hp.t2).is_zero(), "{} does not land on {}", w.pqr, image.pqr);
            let atlas = enumerate_walls(&l, &v, &window_around(&image)).map_err(|e| e.to_string())?;
            ensure!(atlas.iter().any(|x| x.pqr == image.pqr), "{} not in the extended atlas", image.pqr);
        }
    }
    let (a, b) = g.fixed_points().ok_or("no fixed points")?;
    let br = boundary_rays(&l, &v).map_err(|e| e.to_string())?;
    let mut fixed = [a, b];
    fixed.sort_by(|x, y| x.sub(y).signum());
    ensure!(fixed[0] == br.s_minus && fixed[1] == br.s_plus, "fixed points {} {}", fixed[0], fixed[1]);
    ensure!(br.s_plus.radicand() == &int(5), "radicand {}", br.s_plus.radicand());
    Ok(())
}

fn c11_reflection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 100 {
        let (l, v) = random_v(&mut rng, 5, 6, false);
        let k = rng.gen_range(1..=2u32);
        let found = isotropic_with_pairing(&l, &v, k, &int(30)).map_err(|e| e.to_string())?;
        if found.classes.is_empty() {
            continue;
        }
        let u = &found.classes[rng.gen_range(0..found.classes.len())];
        let ex = exceptional_data(&l, &v, u).map_err(|e| e.to_string())?;
        let n = l.n().unwrap();
        let tv = v.triple().unwrap();
        let du = ex.d_u.triple().unwrap();
        let dd = pair3(&n, &du, &du);
        ensure!(dd == -l.square(&v).unwrap(), "⟨d_u²⟩ = {dd}");
        ensure!(ex.reflect(&ex.d_u).map_err(|e| e.to_string())? == ex.d_u.neg(), "R(d_u) ≠ -d_u");
        // random elements of v⊥, reflected by x - 2⟨d_u,x⟩/⟨d_u²⟩ d_u
        let f = [-tv[2].clone(), &n * 2 * &tv[1], -tv[0].clone()];
        let cross = |a: &[Int; 3], b: &[Int; 3]| -> [Int; 3] {
            [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
        };
        let mut xs = Vec::new();
        for _ in 0..2 {
            let z = [0; 3].map(|_| int(rng.gen_range(-9..=9)));
            let x = cross(&f, &z);
            if x.iter().any(|e| !e.is_zero()) {
                xs.push(x);
            }
        }
        let mut images = Vec::new();
        for x in &xs {
            let coef = Rat::new(pair3(&n, &du, x) * 2, dd.clone());
            let want: [Rat; 3] = std::array::from_fn(|i| rat_int(&x[i]) - &coef * rat_int(&du[i]));
            ensure!(want.iter().all(|c| c.is_integer()), "reflection of {x:?} is not integral");
            let got = ex.reflect(&MukaiVector::from_triple(x)).map_err(|e| e.to_string())?;
            ensure!(got.triple().unwrap().map(|c| rat_int(&c)) == want, "R({x:?}) = {got}");
            let back = ex.reflect(&got).map_err(|e| e.to_string())?;
            ensure!(back.triple().unwrap() == *x, "R is not an involution");
            images.push(got.triple().unwrap());
        }
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                ensure!(pair3(&n, &images[i], &images[j]) == pair3(&n, &xs[i], &xs[j]), "R is not an isometry");
            }
        }
        done += 1;
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mukai-walls")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn has_float(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(x) => !x.is_i64() && !x.is_u64(),
        serde_json::Value::String(s) => {
            let b = s.as_bytes();
            (1..b.len().saturating_sub(1)).any(|i| b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit())
        }
        serde_json::Value::Array(a) => a.iter().any(has_float),
        serde_json::Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

fn c12_cli() -> Outcome {
    let base = ["walls", "--n", "1", "--v", "2,1,-2", "--window", "-2.2:3.2,0.1:2"];
    let with = |fmt: &str| {
        let mut a = base.to_vec();
        a.extend(["--format", fmt]);
        run_cli(&a.iter().map(|s| &**s).collect::<Vec<_>>())
    };
    let json = with("json")?;
    ensure!(json == with("json")?, "JSON differs between runs");
    let svg = with("svg")?;
    ensure!(svg == with("svg")?, "SVG differs between runs");
    let text = String::from_utf8(json).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure!(!has_float(&value), "JSON contains a floating-point literal");
    let svg = String::from_utf8(svg).map_err(|e| e.to_string())?;
    let paths = svg.matches(r#"class="wall""#).count();
    ensure!(paths == 7, "{paths} wall paths");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("atlas of (2,1,-2) on the reference window", c1_walls_52),
        ("no wall for (6,1,6) with n = 39", c2_no_wall),
        ("Pell fundamental solutions", c3_pell),
        ("stabilizer generators", c4_stabilizer),
        ("wall determinant against the xi pairing", c5_determinant),
        ("boundary isotropy", c6_boundary),
        ("enumeration against brute force", c7_oracle),
        ("trichotomy and birationality to Hilb", c8_trichotomy),
        ("Markman invariants", c9_markman),
        ("equivariance and fixed points", c10_equivariance),
        ("reflections", c11_reflection),
        ("CLI determinism and format", c12_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
