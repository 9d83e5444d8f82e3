//! Walls of a rank-1 Mukai vector in a window of the (s, t) half-plane,
//! chamber location and certified wall-freeness.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{exact_sqrt, Int, Rat};
use crate::charge::{raw_pqr, Pqr, StabilityPoint, WallGeometry};
use crate::error::{Error, Result};
use crate::lattice::{pair3, MukaiVector, SurfaceLattice};
use crate::perp::{kernel_basis, PerpPlane, V3};
use crate::sym2::{stabilizer_generator, GHat, Stabilizer};

pub use crate::perp::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Codim {
    /// v = ℓv₁ + v₂ with v₁, v₂ isotropic and ⟨v₁, v₂⟩ = 1.
    Codim0 { v1: MukaiVector, v2: MukaiVector },
    /// v₁ primitive isotropic with ⟨v, v₁⟩ = 2.
    Codim1 { v1: MukaiVector },
    Higher,
}

impl Codim {
    pub fn tag(&self) -> &'static str {
        match self {
            Codim::Codim0 { .. } => "codim0",
            Codim::Codim1 { .. } => "codim1",
            Codim::Higher => "higher",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub pqr: Pqr,
    pub geometry: WallGeometry,
    /// sorted, each satisfying the candidate and nonemptiness conditions
    pub witnesses: Vec<MukaiVector>,
    pub codim: Codim,
}

pub(crate) struct Setup {
    pub n: Int,
    pub t: V3,
    pub plane: PerpPlane,
}

pub(crate) fn setup(l: &SurfaceLattice, v: &MukaiVector) -> Result<Setup> {
    let n = l.require_rank_one()?;
    let t = v.triple().ok_or(Error::NotRankOne)?;
    if !v.is_primitive() {
        return Err(Error::NotPrimitive(v.to_string()));
    }
    let plane = PerpPlane::new(&n, &t)?;
    Ok(Setup { n, t, plane })
}

fn l1(x: &V3) -> Int {
    x.iter().map(|c| c.abs()).sum()
}

/// Order used to pick representative witnesses: small first.
pub(crate) fn witness_key(x: &V3) -> (Int, Int, Int, V3) {
    (l1(x), x[0].abs(), x[1].abs(), x.clone())
}

fn cross(x: &V3, y: &V3) -> V3 {
    [&x[1] * &y[2] - &x[2] * &y[1], &x[2] * &y[0] - &x[0] * &y[2], &x[0] * &y[1] - &x[1] * &y[0]]
}

/// Classify the wall through v₁ from the isotropic classes of the saturated
/// lattice ℤ³ ∩ span(v, v₁).
pub(crate) fn codim_of(n: &Int, v: &V3, v1: &V3) -> Codim {
    let normal = cross(v, v1);
    let (_, [g1, g2]) = kernel_basis(&normal);
    let a = pair3(n, &g1, &g1);
    let b = pair3(n, &g1, &g2);
    let c = pair3(n, &g2, &g2);
    let Some(root) = exact_sqrt(&(&b * &b - &a * &c)) else {
        return Codim::Higher;
    };
    // a x² + 2b xy + c y² = 0
    let dirs: Vec<[Int; 2]> = if a.is_zero() {
        vec![[Int::from(1), Int::zero()], [c.clone(), -Int::from(2) * &b]]
    } else {
        vec![[-&b + &root, a.clone()], [-&b - &root, a.clone()]]
    };
    let ell = pair3(n, v, v) / 2;
    let mut found: Vec<(Int, V3)> = Vec::new();
    for [x, y] in dirs {
        let g = x.gcd(&y);
        let (x, y) = (x / &g, y / &g);
        let mut u: V3 = std::array::from_fn(|i| &x * &g1[i] + &y * &g2[i]);
        let mut k = pair3(n, v, &u);
        if k.is_negative() {
            u = u.map(|e| -e);
            k = -k;
        }
        found.push((k, u));
    }
    found.sort();
    for (k, u) in &found {
        if k == &Int::from(1) {
            let v2: V3 = std::array::from_fn(|i| &v[i] - &ell * &u[i]);
            return Codim::Codim0 { v1: MukaiVector::from_triple(u), v2: MukaiVector::from_triple(&v2) };
        }
    }
    for (k, u) in &found {
        if k == &Int::from(2) {
            return Codim::Codim1 { v1: MukaiVector::from_triple(u) };
        }
    }
    Codim::Higher
}

fn is_wall_class(n: &Int, v: &V3, v1: &V3) -> bool {
    let w: V3 = std::array::from_fn(|i| &v[i] - &v1[i]);
    let k = pair3(n, v, v1);
    let s1 = pair3(n, v1, v1);
    pair3(n, v1, &w).is_positive()
        && !s1.is_negative()
        && !pair3(n, &w, &w).is_negative()
        && &k * &k > pair3(n, v, v) * &s1
}

fn build_walls(su: &Setup, found: BTreeMap<Pqr, BTreeSet<V3>>) -> Vec<Wall> {
    found
        .into_iter()
        .map(|(pqr, ws)| {
            let first = ws.iter().next().expect("nonempty witness set");
            Wall {
                geometry: pqr.geometry(),
                codim: codim_of(&su.n, &su.t, first),
                witnesses: ws.iter().map(MukaiVector::from_triple).collect(),
                pqr,
            }
        })
        .collect()
}

/// Every wall meeting the closed window, keyed and sorted by (P, Q, R).
pub fn enumerate_walls(l: &SurfaceLattice, v: &MukaiVector, win: &Window) -> Result<Vec<Wall>> {
    let su = setup(l, v)?;
    let (t1, t2) = su.plane.window_interval(win);
    let mut found: BTreeMap<Pqr, BTreeSet<V3>> = BTreeMap::new();
    su.plane.wall_classes_in(&t1, &t2, &mut None, &mut |v1, pqr| {
        if win.meets(pqr) {
            found.entry(pqr.clone()).or_default().insert(v1.clone());
        }
    });
    Ok(build_walls(&su, found))
}

fn brute_generic<T>(n: T, v: [T; 3], bound: i64, emit: &mut dyn FnMut([T; 3]))
where
    T: Integer + Signed + Clone + From<i64>,
{
    let pair = |x: &[T; 3], y: &[T; 3]| -> T {
        T::from(2) * n.clone() * x[1].clone() * y[1].clone()
            - x[0].clone() * y[2].clone()
            - x[2].clone() * y[0].clone()
    };
    let vsq = pair(&v, &v);
    for r1 in -bound..=bound {
        for d1 in -bound..=bound {
            for a1 in -bound..=bound {
                let x = [T::from(r1), T::from(d1), T::from(a1)];
                let w = [v[0].clone() - x[0].clone(), v[1].clone() - x[1].clone(), v[2].clone() - x[2].clone()];
                let cross = pair(&x, &w);
                if !cross.is_positive() {
                    continue;
                }
                let s1 = pair(&x, &x);
                if s1.is_negative() || pair(&w, &w).is_negative() {
                    continue;
                }
                let k = cross + s1.clone();
                if k.clone() * k > vsq.clone() * s1 {
                    emit(x);
                }
            }
        }
    }
}

/// Test oracle: all classes with |r₁|, |d₁|, |a₁| ≤ bound.
pub fn brute_force_walls(l: &SurfaceLattice, v: &MukaiVector, win: &Window, bound: u32) -> Result<Vec<Wall>> {
    let n = l.require_rank_one()?;
    let t = v.triple().ok_or(Error::NotRankOne)?;
    let mut found: BTreeMap<Pqr, BTreeSet<V3>> = BTreeMap::new();
    let mut keep = |x: V3| {
        if let Some(pqr) = Pqr::normalized(raw_pqr(&n, &t, &x)) {
            if win.meets(&pqr) {
                found.entry(pqr).or_default().insert(x);
            }
        }
    };
    let small = |x: &Int| x.abs() < Int::from(1i64 << 28);
    if t.iter().all(small) && small(&n) && bound < (1 << 20) {
        let c = |x: &Int| -> i128 { x.try_into().unwrap() };
        brute_generic::<i128>(c(&n), t.clone().map(|x| c(&x)), bound.into(), &mut |x| {
            keep(x.map(Int::from));
        });
    } else {
        brute_generic::<Int>(n.clone(), t.clone(), bound.into(), &mut keep);
    }
    let nn = n.clone();
    let plane = PerpPlane::new(&n, &t).ok();
    let walls = found
        .into_iter()
        .map(|(pqr, ws)| {
            let first = ws.iter().next().unwrap();
            let codim = if plane.is_some() { codim_of(&nn, &t, first) } else { Codim::Higher };
            Wall {
                geometry: pqr.geometry(),
                codim,
                witnesses: ws.iter().map(MukaiVector::from_triple).collect(),
                pqr,
            }
        })
        .collect();
    Ok(walls)
}

/// The wall induced by a single class, validated.
pub fn wall_from_witness(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector) -> Result<Wall> {
    let su = setup(l, v)?;
    let t1 = v1.triple().ok_or(Error::NotRankOne)?;
    if !is_wall_class(&su.n, &su.t, &t1) {
        return Err(Error::NotAWall(v1.to_string()));
    }
    let pqr = Pqr::normalized(raw_pqr(&su.n, &su.t, &t1)).ok_or(Error::Proportional)?;
    Ok(Wall { geometry: pqr.geometry(), codim: codim_of(&su.n, &su.t, &t1), witnesses: vec![v1.clone()], pqr })
}

/// Numerical codimension of a wall of v. Every witness is validated.
pub fn classify_wall(l: &SurfaceLattice, v: &MukaiVector, wall: &Wall) -> Result<Codim> {
    let su = setup(l, v)?;
    let first = wall.witnesses.first().ok_or_else(|| Error::NotAWall(wall.pqr.to_string()))?;
    for w in &wall.witnesses {
        let t1 = w.triple().ok_or(Error::NotRankOne)?;
        let ok = is_wall_class(&su.n, &su.t, &t1)
            && Pqr::normalized(raw_pqr(&su.n, &su.t, &t1)).as_ref() == Some(&wall.pqr);
        if !ok {
            return Err(Error::NotAWall(w.to_string()));
        }
    }
    Ok(codim_of(&su.n, &su.t, &first.triple().unwrap()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoWallReason {
    /// every value ⟨v, ·⟩ is a multiple of g ≥ ⟨v²⟩
    PairingGcd { g: Int },
    /// exhaustive search of one fundamental domain of the stabilizer, or of
    /// the whole (finite) ray space when the boundary is rational
    FundamentalDomain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallExistence {
    NoWallCertified(NoWallReason),
    WallFound(MukaiVector),
    UndecidedUpTo(Int),
}

pub fn default_bound(l: &SurfaceLattice, v: &MukaiVector) -> Result<Int> {
    Ok(l.square(v)? * 10)
}

/// How the chart τ of a plane is tiled by the stabilizer.
pub(crate) enum Domain {
    /// rational boundary: finitely many walls on [τ₋, τ₊]
    Closed { lo: Rat, hi: Rat },
    /// h moves every interior ray strictly up in τ
    Periodic { h: GHat, h_inv: GHat, flip: bool },
}

impl Domain {
    pub fn new(l: &SurfaceLattice, v: &MukaiVector, plane: &PerpPlane) -> Result<Domain> {
        if plane.rational {
            return Ok(Domain::Closed {
                lo: plane.tau_lo.as_rational().unwrap().clone(),
                hi: plane.tau_hi.as_rational().unwrap().clone(),
            });
        }
        let Stabilizer::Infinite(mut g) = stabilizer_generator(l, v)? else {
            return Err(Error::Precondition("irrational boundary with a finite stabilizer".into()));
        };
        let c = plane.c.clone();
        let tc = plane.tau_int(&c);
        let other = plane.ray_at(&((&tc + plane.inner_hi(16)) / Rat::from_integer(2.into())));
        let image = |g: &GHat, x: &V3| -> V3 {
            let y = g.act(x);
            if plane.pair_int(&c, &y).is_negative() {
                y.map(|e| -e)
            } else {
                y
            }
        };
        if plane.tau_int(&image(&g, &c)) > plane.tau_int(&image(&g, &other)) {
            g = g.compose(&g)?;
        }
        let mut h_inv = g.inverse();
        if plane.tau_int(&image(&g, &c)) < tc {
            std::mem::swap(&mut g, &mut h_inv);
        }
        let flip = plane.pair_int(&c, &g.act(&c)).is_negative();
        Ok(Domain::Periodic { h: g, h_inv, flip })
    }

    fn shift(&self, x: &V3, forward: bool) -> V3 {
        match self {
            Domain::Closed { .. } => x.clone(),
            Domain::Periodic { h, h_inv, flip } => {
                let y = if forward { h.act(x) } else { h_inv.act(x) };
                if *flip {
                    y.map(|e| -e)
                } else {
                    y
                }
            }
        }
    }

    /// One closed τ-interval meeting every orbit of wall rays.
    pub fn fundamental(&self, plane: &PerpPlane) -> (Rat, Rat) {
        match self {
            Domain::Closed { lo, hi } => (lo.clone(), hi.clone()),
            Domain::Periodic { .. } => {
                let c = plane.c.clone();
                (plane.tau_int(&c), plane.tau_int(&self.shift(&c, true)))
            }
        }
    }

    /// Outer limits for a search starting at the ray x: every orbit has a
    /// representative in [lower, τ(x)] and in [τ(x), upper].
    pub fn limits(&self, plane: &PerpPlane, x: &V3) -> (Rat, Rat) {
        match self {
            Domain::Closed { lo, hi } => (lo.clone(), hi.clone()),
            Domain::Periodic { .. } => (plane.tau_int(&self.shift(x, false)), plane.tau_int(&self.shift(x, true))),
        }
    }
}

/// Exact decision: gcd fast path, then exhaustive enumeration of one
/// fundamental domain within a work budget of bound³ lattice points.
pub fn walls_exist(l: &SurfaceLattice, v: &MukaiVector, bound: Option<&Int>) -> Result<WallExistence> {
    let su = setup(l, v)?;
    let g = su.plane.pairing_gcd.clone();
    if g >= su.plane.vsq {
        return Ok(WallExistence::NoWallCertified(NoWallReason::PairingGcd { g }));
    }
    let bound = match bound {
        Some(b) => b.clone(),
        None => default_bound(l, v)?,
    };
    // small witnesses are common and the shell order is global, so a hit
    // here is already the reported witness
    if let Some(w) = shell_search(&su, &Int::from(QUICK_SHELL).min(bound.clone())) {
        return Ok(WallExistence::WallFound(MukaiVector::from_triple(&w)));
    }
    let domain = Domain::new(l, v, &su.plane)?;
    let (lo, hi) = domain.fundamental(&su.plane);
    let cube = &bound * &bound * &bound;
    let mut budget: Option<u64> = Some(cube.try_into().unwrap_or(u64::MAX));
    let mut best: Option<V3> = None;
    let complete = su.plane.wall_classes_in(&lo, &hi, &mut budget, &mut |v1, _| {
        if best.as_ref().is_none_or(|b| witness_key(v1) < witness_key(b)) {
            best = Some(v1.clone());
        }
    });
    if !complete {
        return Ok(match shell_search(&su, &bound) {
            Some(w) => WallExistence::WallFound(MukaiVector::from_triple(&w)),
            None => WallExistence::UndecidedUpTo(bound),
        });
    }
    match best {
        None => Ok(WallExistence::NoWallCertified(NoWallReason::FundamentalDomain)),
        Some(b) => {
            // report the first witness in shell order, which is at most as
            // large as the one found
            let w = shell_search(&su, &l1(&b)).unwrap_or(b);
            Ok(WallExistence::WallFound(MukaiVector::from_triple(&w)))
        }
    }
}

const QUICK_SHELL: i64 = 8;

/// First wall class in order of (|r₁|+|d₁|+|a₁|, |r₁|, |d₁|, r₁, d₁, a₁).
fn shell_search(su: &Setup, max_norm: &Int) -> Option<V3> {
    let max: i64 = max_norm.try_into().unwrap_or(i64::MAX);
    let mut h = 1i64;
    while h <= max {
        let mut shell: Vec<(i64, i64, i64, i64, i64)> = Vec::new();
        for r1 in -h..=h {
            let rest = h - r1.abs();
            for d1 in -rest..=rest {
                let a_abs = rest - d1.abs();
                let mut a_vals = vec![-a_abs];
                if a_abs != 0 {
                    a_vals.push(a_abs);
                }
                for a1 in a_vals {
                    shell.push((r1.abs(), d1.abs(), r1, d1, a1));
                }
            }
        }
        shell.sort();
        for (_, _, r1, d1, a1) in shell {
            let x = [Int::from(r1), Int::from(d1), Int::from(a1)];
            if is_wall_class(&su.n, &su.t, &x) {
                return Some(x);
            }
        }
        h += 1;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallRef {
    pub pqr: Pqr,
    pub witness: MukaiVector,
    /// primitive class spanning the wall ray v⊥ ∩ v₁⊥ inside P⁺
    pub ray: MukaiVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryEnd {
    /// the s₋ end (for r = 0 the finite end)
    Lower,
    /// the s₊ end
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberSide {
    Wall(WallRef),
    Boundary(BoundaryEnd),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberDescriptor {
    pub left: ChamberSide,
    pub right: ChamberSide,
}

pub(crate) enum Scan {
    /// classes whose ray passes through the start
    OnRay(Vec<V3>),
    Nearest(Vec<V3>),
    Nothing,
}

/// Search outward from τ₀ toward `limit` with doubling steps. `collect`
/// returns the (τ, class) pairs with τ in a closed interval.
pub(crate) fn scan_outward(
    tau0: &Rat,
    limit: &Rat,
    collect: &mut dyn FnMut(&Rat, &Rat) -> Vec<(Rat, V3)>,
) -> Scan {
    let dist = (limit - tau0).abs();
    if dist.is_zero() {
        return Scan::Nothing;
    }
    let up = limit > tau0;
    let mut delta = &dist / Rat::from_integer(64.into());
    loop {
        let last = delta >= dist;
        let edge = if last { limit.clone() } else if up { tau0 + &delta } else { tau0 - &delta };
        let (a, b) = if up { (tau0.clone(), edge) } else { (edge, tau0.clone()) };
        let hits = collect(&a, &b);
        let on: Vec<V3> = hits.iter().filter(|(t, _)| t == tau0).map(|(_, x)| x.clone()).collect();
        if !on.is_empty() {
            return Scan::OnRay(on);
        }
        let best = if up { hits.iter().map(|(t, _)| t).min() } else { hits.iter().map(|(t, _)| t).max() };
        if let Some(best) = best.cloned() {
            return Scan::Nearest(hits.into_iter().filter(|(t, _)| *t == best).map(|(_, x)| x).collect());
        }
        if last {
            return Scan::Nothing;
        }
        delta *= Rat::from_integer(2.into());
    }
}

pub(crate) fn smallest(xs: &[V3]) -> V3 {
    xs.iter().min_by_key(|x| witness_key(x)).unwrap().clone()
}

fn wall_ref(su: &Setup, v1: &V3) -> WallRef {
    WallRef {
        pqr: Pqr::normalized(raw_pqr(&su.n, &su.t, v1)).expect("wall class"),
        witness: MukaiVector::from_triple(v1),
        ray: MukaiVector::from_triple(&su.plane.orthogonal_ray(&su.plane.project(v1))),
    }
}

pub(crate) fn point_ray(su: &Setup, p: &StabilityPoint, l: &SurfaceLattice) -> Result<V3> {
    p.validate(l, false)?;
    Ok(crate::perp::primitive_q3(&su.plane.xi(p.s(), &p.t2)))
}

/// The two walls (or boundary ends) adjacent to the chamber of p, ordered
/// along the ray space from the s₋ end to the s₊ end.
pub fn locate_chamber(l: &SurfaceLattice, v: &MukaiVector, p: &StabilityPoint) -> Result<ChamberDescriptor> {
    let su = setup(l, v)?;
    let x = point_ray(&su, p, l)?;
    if su.plane.pairing_gcd >= su.plane.vsq {
        return Ok(ChamberDescriptor {
            left: ChamberSide::Boundary(BoundaryEnd::Lower),
            right: ChamberSide::Boundary(BoundaryEnd::Upper),
        });
    }
    let tau = su.plane.tau_int(&x);
    let domain = Domain::new(l, v, &su.plane)?;
    let (lo, hi) = domain.limits(&su.plane, &x);
    let mut collect = |a: &Rat, b: &Rat| -> Vec<(Rat, V3)> {
        let mut out = Vec::new();
        su.plane.wall_classes_in(a, b, &mut None, &mut |v1, _| {
            out.push((su.plane.wall_tau(v1), v1.clone()));
        });
        out
    };
    let mut sides = Vec::new();
    for (limit, end) in [(lo, BoundaryEnd::Lower), (hi, BoundaryEnd::Upper)] {
        match scan_outward(&tau, &limit, &mut collect) {
            Scan::OnRay(ws) => {
                let w = wall_ref(&su, &smallest(&ws));
                return Err(Error::OnWall { pqr: w.pqr.to_string(), witness: w.witness.to_string() });
            }
            Scan::Nearest(ws) => sides.push(ChamberSide::Wall(wall_ref(&su, &smallest(&ws)))),
            Scan::Nothing => sides.push(ChamberSide::Boundary(end)),
        }
    }
    let right = sides.pop().unwrap();
    let left = sides.pop().unwrap();
    Ok(ChamberDescriptor { left, right })
}

/// Chart value of a wall ray, for ordering walls along the ray space.
pub fn wall_order_key(l: &SurfaceLattice, v: &MukaiVector, wall: &Wall) -> Result<Rat> {
    let su = setup(l, v)?;
    let w = wall.witnesses.first().ok_or_else(|| Error::NotAWall(wall.pqr.to_string()))?;
    Ok(su.plane.wall_tau(&w.triple().ok_or(Error::NotRankOne)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn mv(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::rank_one(r, d, a)
    }

    #[test]
    fn section_5_2_window() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let win = Window::new(rat(-11, 5), rat(16, 5), rat(1, 100), rat(4, 1)).unwrap();
        let walls = enumerate_walls(&l, &mv(2, 1, -2), &win).unwrap();
        assert_eq!(walls.len(), 7);
        assert!(walls.iter().any(|w| w.geometry == WallGeometry::Line { s0: rat(1, 2) }));
    }

    #[test]
    fn codim_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let w = wall_from_witness(&l, &mv(1, 0, -3), &mv(0, 0, -1)).unwrap();
        assert_eq!(w.codim, Codim::Codim0 { v1: mv(0, 0, -1), v2: mv(1, 0, 0) });
        let w = wall_from_witness(&l, &mv(2, 1, -2), &mv(1, 0, 0)).unwrap();
        assert_eq!(w.codim, Codim::Codim1 { v1: mv(1, 0, 0) });
        assert!(matches!(wall_from_witness(&l, &mv(1, 0, -3), &mv(1, 1, 0)), Err(Error::NotAWall(_))));
    }

    #[test]
    fn existence_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        assert_eq!(walls_exist(&l, &mv(2, 1, -2), None).unwrap(), WallExistence::WallFound(mv(0, 0, -1)));
        assert_eq!(walls_exist(&l, &mv(1, 0, -3), None).unwrap(), WallExistence::WallFound(mv(0, 0, -1)));
        let l39 = SurfaceLattice::rank_one(39).unwrap();
        assert_eq!(
            walls_exist(&l39, &mv(6, 1, 6), None).unwrap(),
            WallExistence::NoWallCertified(NoWallReason::PairingGcd { g: int(6) })
        );
    }

    #[test]
    fn chamber_of_quarter_point() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let p = StabilityPoint::rank_one(rat(1, 4), rat(1, 1));
        let ch = locate_chamber(&l, &mv(2, 1, -2), &p).unwrap();
        let ChamberSide::Wall(left) = &ch.left else { panic!("{ch:?}") };
        let ChamberSide::Wall(right) = &ch.right else { panic!("{ch:?}") };
        assert_eq!(left.pqr.geometry(), WallGeometry::Circle { center: rat(-1, 1), radius2: rat(1, 1) });
        assert_eq!(right.pqr.geometry(), WallGeometry::Line { s0: rat(1, 2) });
        let on = StabilityPoint::rank_one(rat(1, 2), rat(3, 1));
        match locate_chamber(&l, &mv(2, 1, -2), &on) {
            Err(Error::OnWall { witness, .. }) => assert_eq!(witness, "(0,0,-1)"),
            other => panic!("{other:?}"),
        }
    }
}
