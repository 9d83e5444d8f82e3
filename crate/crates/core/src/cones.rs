//! ξ, the positive cone of v⊥ and the rays bounding nef and movable cones.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, exact_sqrt, rat_int, Int, Rat};
use crate::atlas::{locate_chamber, scan_outward, setup, smallest, BoundaryEnd, ChamberSide, Domain, Scan, Setup};
use crate::charge::{StabilityPoint, WallGeometry};
use crate::error::{Error, Result};
use crate::forms::{mat_inv_sl2, split_form_reps, Form, IndefiniteForm, Mat2};
use crate::lattice::{pair3, MukaiVector, RationalMukaiVector, SurfaceLattice};
use crate::perp::{primitive_q3, E3, V3};
use crate::quadext::QuadExt;

/// ξ(β, H, t) = A·(0, H, (β,H)) - B·(1, β, ((β²) - t²(H²))/2), where
/// A + iBt is the central charge of v. For r = 0 this is the rank-0
/// definition.
pub fn xi_vector(l: &SurfaceLattice, v: &MukaiVector, p: &StabilityPoint) -> Result<RationalMukaiVector> {
    p.validate(l, true)?;
    if v.c1.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), found: v.c1.len() });
    }
    if v.r.is_zero() && v.c1.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("ξ is undefined for r = 0 and c₁ = 0".into()));
    }
    let c1: Vec<Rat> = v.c1.iter().map(rat_int).collect();
    let h: Vec<Rat> = p.h.iter().map(rat_int).collect();
    let r = rat_int(&v.r);
    let two = Rat::from_integer(2.into());
    let beta2 = l.form_q(&p.beta, &p.beta);
    let h2 = l.form_q(&h, &h);
    let bh = l.form_q(&p.beta, &h);
    let a = l.form_q(&p.beta, &c1) - rat_int(&v.a) - &r * &beta2 / &two + &r * &p.t2 * &h2 / &two;
    let shifted: Vec<Rat> = c1.iter().zip(&p.beta).map(|(c, b)| c - &r * b).collect();
    let b = l.form_q(&shifted, &h);
    let im = RationalMukaiVector::new(Rat::zero(), h.clone(), bh);
    let re = RationalMukaiVector::new(Rat::one(), p.beta.clone(), (&beta2 - &p.t2 * &h2) / &two);
    Ok(im.scale(&a).sub(&re.scale(&b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RayClass {
    /// primitive integral generator
    Rational(MukaiVector),
    Quadratic(E3),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayKind {
    WallRay,
    BoundaryRay,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRay {
    pub class: RayClass,
    pub kind: RayKind,
    /// parameter of the circle family C_{v,λ} through the ray, λ ∈ [s₋, s₊]
    pub lambda: Option<QuadExt>,
}

impl ConeRay {
    pub fn quadratic_class(&self) -> E3 {
        match &self.class {
            RayClass::Rational(m) => m.triple().unwrap().map(|x| QuadExt::rational(rat_int(&x))),
            RayClass::Quadratic(e) => e.clone(),
        }
    }
}

/// Orientation making classes positive for the functional ⟨·, H + (H,δ)ϱ⟩.
/// For r = 0 the ξ-side is kept (limit convention).
fn orientation(su: &Setup) -> Int {
    if su.t[0].is_negative() {
        -Int::one()
    } else {
        Int::one()
    }
}

fn orient_int(su: &Setup, x: &V3) -> MukaiVector {
    let o = orientation(su);
    MukaiVector::from_triple(&x.clone().map(|e| e * &o))
}

fn boundary_ray(su: &Setup, end: BoundaryEnd) -> ConeRay {
    let pl = &su.plane;
    let raw = match end {
        BoundaryEnd::Lower => &pl.bound_lo,
        BoundaryEnd::Upper => &pl.bound_hi,
    };
    let o = rat_int(&orientation(su));
    let vec: E3 = std::array::from_fn(|i| raw[i].scale(&o));
    let class = if pl.rational {
        let q: [Rat; 3] = std::array::from_fn(|i| vec[i].as_rational().unwrap().clone());
        RayClass::Rational(MukaiVector::from_triple(&primitive_q3(&q)))
    } else {
        RayClass::Quadratic(vec)
    };
    let lambda = match (pl.s_pm(), end) {
        (Some((lo, _)), BoundaryEnd::Lower) => Some(lo),
        (Some((_, hi)), BoundaryEnd::Upper) => Some(hi),
        (None, BoundaryEnd::Lower) => {
            let [_, d, a] = &su.t;
            Some(QuadExt::rational(Rat::new(a.clone(), Int::from(2) * &su.n * d)))
        }
        (None, BoundaryEnd::Upper) => None,
    };
    ConeRay { class, kind: RayKind::BoundaryRay, lambda }
}

/// λ for the wall circle: the end point of the circle inside [s₋, s₊].
pub fn wall_lambda(v: &MukaiVector, geometry: &WallGeometry) -> Option<QuadExt> {
    let [r, d, _] = v.triple()?;
    if r.is_zero() {
        return None;
    }
    let mid = Rat::new(d, r);
    match geometry {
        WallGeometry::Line { s0 } => Some(QuadExt::rational(s0.clone())),
        WallGeometry::Circle { center, radius2 } => {
            let root = QuadExt::sqrt_of(radius2);
            Some(if &mid >= center { root.add_rat(center) } else { root.neg().add_rat(center) })
        }
        WallGeometry::Empty => None,
    }
}

fn wall_ray(su: &Setup, v1: &V3) -> ConeRay {
    let x = su.plane.orthogonal_ray(&su.plane.project(v1));
    let pqr = crate::charge::Pqr::normalized(crate::charge::raw_pqr(&su.n, &su.t, v1)).expect("wall class");
    ConeRay {
        class: RayClass::Rational(orient_int(su, &x)),
        kind: RayKind::WallRay,
        lambda: wall_lambda(&MukaiVector::from_triple(&su.t), &pqr.geometry()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRays {
    pub lower: ConeRay,
    pub upper: ConeRay,
    pub s_minus: QuadExt,
    pub s_plus: QuadExt,
    /// nℓ is a square; the rays are then Lagrangian-fibration classes
    pub rational: bool,
}

/// The isotropic rays ξ(s±, 0) bounding P⁺(v⊥).
pub fn boundary_rays(l: &SurfaceLattice, v: &MukaiVector) -> Result<BoundaryRays> {
    let su = setup(l, v)?;
    let Some((s_minus, s_plus)) = su.plane.s_pm() else {
        return Err(Error::Precondition("boundary rays need r ≠ 0".into()));
    };
    Ok(BoundaryRays {
        lower: boundary_ray(&su, BoundaryEnd::Lower),
        upper: boundary_ray(&su, BoundaryEnd::Upper),
        s_minus,
        s_plus,
        rational: su.plane.rational,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicClasses {
    pub exists: bool,
    /// all primitive classes with entries bounded by the search bound
    pub classes: Vec<MukaiVector>,
}

pub const DEFAULT_CLASS_BOUND: i64 = 100;

fn coprime_ok(p: &Int, q: &Int, r1: &Int, r2: &Int) -> bool {
    p.gcd(r2).is_one() && q.gcd(r1).is_one()
}

fn class_of(sign: &Int, r1: &Int, r2: &Int, p: &Int, q: &Int) -> V3 {
    [sign * r1 * p * p, sign * p * q, sign * r2 * q * q]
}

fn max_abs(x: &V3) -> Int {
    x.iter().map(|e| e.abs()).max().unwrap()
}

fn apply(m: &Mat2, pq: &(Int, Int)) -> (Int, Int) {
    (&m[0][0] * &pq.0 + &m[0][1] * &pq.1, &m[1][0] * &pq.0 + &m[1][1] * &pq.1)
}

/// Primitive isotropic w with ⟨v, w⟩ = k ≠ 0, through the forms
/// F(P, Q) = ⟨v, (R₁P², PQ, R₂Q²)⟩ over all factorizations n = R₁R₂.
/// Returns a witness (if any) and, with a bound, every class within it.
fn isotropic_search(su: &Setup, k: &Int, list_bound: Option<&Int>) -> (Option<V3>, Vec<V3>) {
    let [r, d, a] = &su.t;
    let n = &su.n;
    let mut witness: Option<V3> = None;
    let mut classes: BTreeSet<V3> = BTreeSet::new();
    for r1 in divisors(n) {
        let r2 = n / &r1;
        let f = Form::new(-a * &r1, Int::from(2) * n * d, -r * &r2);
        let square = exact_sqrt(&f.disc()).is_some();
        for m in [k.clone(), -k.clone()] {
            let sign = if m.is_negative() { -Int::one() } else { Int::one() };
            let ok = |p: &Int, q: &Int| coprime_ok(p, q, &r1, &r2);
            if square {
                for (p, q) in split_form_reps(&f, &m) {
                    if ok(&p, &q) {
                        let w = class_of(&sign, &r1, &r2, &p, &q);
                        if witness.as_ref().is_none_or(|x| max_abs(&w) < max_abs(x)) {
                            witness = Some(w.clone());
                        }
                        if list_bound.is_some_and(|b| &max_abs(&w) <= b) {
                            classes.insert(w);
                        }
                    }
                }
                continue;
            }
            let form = IndefiniteForm::new(f.clone());
            for rep in form.primitive_reps(&m) {
                if witness.is_none() {
                    if let Some((p, q)) = form.orbit_find(&rep, n, ok) {
                        witness = Some(class_of(&sign, &r1, &r2, &p, &q));
                    }
                }
                let Some(bound) = list_bound else { continue };
                let back = mat_inv_sl2(&form.automorph);
                for (step, skip_start) in [(&form.automorph, false), (&back, true)] {
                    let mut cur = rep.clone();
                    let mut prev: Option<Int> = None;
                    let mut first = true;
                    loop {
                        let size = std::cmp::max(cur.0.abs(), cur.1.abs());
                        if !(first && skip_start) && ok(&cur.0, &cur.1) {
                            let w = class_of(&sign, &r1, &r2, &cur.0, &cur.1);
                            if &max_abs(&w) <= bound {
                                classes.insert(w);
                            }
                        }
                        // |Aʲx| is unimodal in j: stop once past the bound and growing
                        if &size > bound && prev.as_ref().is_some_and(|p| &size > p) {
                            break;
                        }
                        prev = Some(size);
                        first = false;
                        cur = apply(step, &cur);
                    }
                }
            }
        }
    }
    (witness, classes.into_iter().collect())
}

/// 𝔉I_k for k ∈ {0, 1, 2}: exact existence, and the classes within `bound`.
pub fn isotropic_with_pairing(l: &SurfaceLattice, v: &MukaiVector, k: u32, bound: &Int) -> Result<IsotropicClasses> {
    if k > 2 {
        return Err(Error::Precondition(format!("pairing {k} is not in {{0, 1, 2}}")));
    }
    let su = setup(l, v)?;
    if k == 0 {
        if !su.plane.rational {
            return Ok(IsotropicClasses { exists: false, classes: vec![] });
        }
        let mut classes = BTreeSet::new();
        for end in [&su.plane.bound_lo, &su.plane.bound_hi] {
            let q: [Rat; 3] = std::array::from_fn(|i| end[i].as_rational().unwrap().clone());
            let w = primitive_q3(&q);
            if &max_abs(&w) <= bound {
                classes.insert(w.clone().map(|e| -e));
                classes.insert(w);
            }
        }
        let classes = classes.iter().map(MukaiVector::from_triple).collect();
        return Ok(IsotropicClasses { exists: true, classes });
    }
    let (witness, classes) = isotropic_search(&su, &Int::from(k), Some(bound));
    Ok(IsotropicClasses { exists: witness.is_some(), classes: classes.iter().map(MukaiVector::from_triple).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrichotomyCertificate {
    /// an isotropic class realizing the minimal pairing
    Isotropic { u: MukaiVector },
    /// every pairing value is a multiple of g ≥ 3
    PairingGcd { g: Int },
    /// neither 1 nor 2 is represented by any of the forms
    NonRepresentation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trichotomy {
    /// 1, 2 or 3 as in the movable-cone theorem
    pub case: u8,
    /// minimal positive pairing with an isotropic class: 1, 2, or None for ≥ 3
    pub min_pairing: Option<u8>,
    pub certificate: TrichotomyCertificate,
}

fn require_big(su: &Setup) -> Result<()> {
    if su.plane.vsq < Int::from(6) {
        return Err(Error::Precondition(format!("⟨v²⟩ = {} < 6", su.plane.vsq)));
    }
    Ok(())
}

pub fn trichotomy(l: &SurfaceLattice, v: &MukaiVector) -> Result<Trichotomy> {
    let su = setup(l, v)?;
    require_big(&su)?;
    for (k, case) in [(1u8, 3u8), (2, 2)] {
        if let (Some(u), _) = isotropic_search(&su, &Int::from(k), None) {
            return Ok(Trichotomy {
                case,
                min_pairing: Some(k),
                certificate: TrichotomyCertificate::Isotropic { u: MukaiVector::from_triple(&u) },
            });
        }
    }
    let g = su.plane.pairing_gcd.clone();
    let certificate = if g >= Int::from(3) {
        TrichotomyCertificate::PairingGcd { g }
    } else {
        TrichotomyCertificate::NonRepresentation
    };
    Ok(Trichotomy { case: 1, min_pairing: None, certificate })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exceptional {
    n: Int,
    pub v: MukaiVector,
    pub u: MukaiVector,
    pub pairing: Int,
    pub d_u: MukaiVector,
}

impl Exceptional {
    /// R_u(x) = x - 2⟨d_u, x⟩/⟨d_u²⟩ d_u = x - (2/⟨v,u⟩)⟨x, u⟩ d_u on v⊥.
    pub fn reflect(&self, x: &MukaiVector) -> Result<MukaiVector> {
        let t = x.triple().ok_or(Error::NotRankOne)?;
        let v = self.v.triple().unwrap();
        if !pair3(&self.n, &t, &v).is_zero() {
            return Err(Error::Precondition(format!("{x} is not orthogonal to v")));
        }
        let xu = pair3(&self.n, &t, &self.u.triple().unwrap());
        let coeff = (Int::from(2) * xu) / &self.pairing;
        Ok(x.sub(&self.d_u.scale(&coeff)))
    }
}

/// d_u = v - (⟨v²⟩/⟨v,u⟩)u and the reflection it defines.
pub fn exceptional_data(l: &SurfaceLattice, v: &MukaiVector, u: &MukaiVector) -> Result<Exceptional> {
    let su = setup(l, v)?;
    let tu = u.triple().ok_or(Error::NotRankOne)?;
    if !u.is_primitive() {
        return Err(Error::NotPrimitive(u.to_string()));
    }
    if !pair3(&su.n, &tu, &tu).is_zero() {
        return Err(Error::Precondition(format!("{u} is not isotropic")));
    }
    let k = pair3(&su.n, &su.t, &tu);
    if k != Int::from(1) && k != Int::from(2) {
        return Err(Error::Precondition(format!("⟨v, u⟩ = {k} is not 1 or 2")));
    }
    let d_u = v.sub(&u.scale(&(&su.plane.vsq / &k)));
    let sq = l.square(&d_u)?;
    assert!(sq == -su.plane.vsq.clone() && d_u.is_primitive(), "d_u has square -⟨v²⟩ and is primitive");
    Ok(Exceptional { n: su.n, v: v.clone(), u: u.clone(), pairing: k, d_u })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MovableKind {
    IsotropicPairing1,
    IsotropicPairing2,
    PositiveConeBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovableSide {
    pub ray: ConeRay,
    pub kind: MovableKind,
    /// the isotropic class u whose u⊥ bounds this side
    pub u: Option<MukaiVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovableRays {
    pub lower: MovableSide,
    pub upper: MovableSide,
}

/// Isotropic u with ⟨v,u⟩ ∈ {1, 2} (primitive) whose ray u⊥ ∩ v⊥ has chart
/// value in [a, b].
fn movable_classes(su: &Setup, a: &Rat, b: &Rat) -> Vec<(Rat, V3)> {
    let mut out = Vec::new();
    for k in [Int::from(1), Int::from(2)] {
        let target = Rat::new(&k * &k, su.plane.vsq.clone());
        su.plane.visit_slice(&k, a, b, &target, &mut None, &mut |u, x2| {
            if -x2 == target && (k.is_one() || MukaiVector::from_triple(u).is_primitive()) {
                out.push((su.plane.wall_tau(u), u.clone()));
            }
        });
    }
    out
}

/// The component of P⁺(v⊥) minus the hyperplanes u⊥ (u ∈ 𝔉I₁ ∪ 𝔉I₂)
/// containing ξ(basepoint), as two rays ordered from the s₋ side.
pub fn movable_rays(l: &SurfaceLattice, v: &MukaiVector, basepoint: &StabilityPoint) -> Result<MovableRays> {
    let su = setup(l, v)?;
    require_big(&su)?;
    basepoint.validate(l, false)?;
    let x = primitive_q3(&su.plane.xi(basepoint.s(), &basepoint.t2));
    let tau = su.plane.tau_int(&x);
    let empty = isotropic_search(&su, &Int::one(), None).0.is_none()
        && isotropic_search(&su, &Int::from(2), None).0.is_none();
    let domain = Domain::new(l, v, &su.plane)?;
    let (lo, hi) = domain.limits(&su.plane, &x);
    let mut sides = Vec::new();
    for (limit, end) in [(lo, BoundaryEnd::Lower), (hi, BoundaryEnd::Upper)] {
        let scan = if empty { Scan::Nothing } else { scan_outward(&tau, &limit, &mut |a, b| movable_classes(&su, a, b)) };
        sides.push(match scan {
            Scan::OnRay(us) => {
                let u = smallest(&us);
                return Err(Error::OnWall {
                    pqr: format!("u⊥ for u = {}", MukaiVector::from_triple(&u)),
                    witness: MukaiVector::from_triple(&u).to_string(),
                });
            }
            Scan::Nearest(us) => {
                let k1: Vec<V3> = us.iter().filter(|u| pair3(&su.n, &su.t, u).is_one()).cloned().collect();
                let (kind, pool) =
                    if k1.is_empty() { (MovableKind::IsotropicPairing2, us) } else { (MovableKind::IsotropicPairing1, k1) };
                let u = smallest(&pool);
                MovableSide { ray: wall_ray(&su, &u), kind, u: Some(MukaiVector::from_triple(&u)) }
            }
            Scan::Nothing => {
                MovableSide { ray: boundary_ray(&su, end), kind: MovableKind::PositiveConeBoundary, u: None }
            }
        });
    }
    let upper = sides.pop().unwrap();
    let lower = sides.pop().unwrap();
    Ok(MovableRays { lower, upper })
}

/// The two rays of the chamber of p in P⁺(v⊥), ordered from the s₋ side.
pub fn nef_rays(l: &SurfaceLattice, v: &MukaiVector, p: &StabilityPoint) -> Result<(ConeRay, ConeRay)> {
    let su = setup(l, v)?;
    let ch = locate_chamber(l, v, p)?;
    let side = |s: &ChamberSide| match s {
        ChamberSide::Wall(w) => wall_ray(&su, &w.witness.triple().unwrap()),
        ChamberSide::Boundary(end) => boundary_ray(&su, *end),
    };
    Ok((side(&ch.left), side(&ch.right)))
}

/// Chart value of a ray, for exact ordering of cone rays of v.
pub fn ray_order(l: &SurfaceLattice, v: &MukaiVector, ray: &ConeRay) -> Result<QuadExt> {
    let su = setup(l, v)?;
    let o = rat_int(&orientation(&su));
    let x: E3 = ray.quadratic_class().map(|e| e.scale(&o));
    Ok(su.plane.tau_e(&x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertWitness {
    /// r x² + 2d xy + a y² = ±1 (n = 1)
    Form { x: Int, y: Int, value: Int },
    /// isotropic w with ⟨v, w⟩ = 1
    Isotropic(MukaiVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hilbert {
    pub answer: bool,
    pub witness: Option<HilbertWitness>,
}

/// Whether the moduli space is birational to Pic⁰ × Hilbᶫ, i.e. 𝔉I₁ ≠ ∅.
pub fn hilbert_birational(l: &SurfaceLattice, v: &MukaiVector) -> Result<Hilbert> {
    let su = setup(l, v)?;
    require_big(&su)?;
    if !su.t[0].is_positive() {
        return Err(Error::Precondition("needs r > 0".into()));
    }
    let Some(u) = isotropic_search(&su, &Int::one(), None).0 else {
        return Ok(Hilbert { answer: false, witness: None });
    };
    if !su.n.is_one() {
        return Ok(Hilbert { answer: true, witness: Some(HilbertWitness::Isotropic(MukaiVector::from_triple(&u))) });
    }
    let [r, d, a] = &su.t;
    let q = |x: &Int, y: &Int| r * x * x + Int::from(2) * d * x * y + a * y * y;
    // max-norm shells, x ≥ 0, ascending x then y; a solution exists, so this stops
    let mut h = Int::one();
    loop {
        let mut x = Int::zero();
        while x <= h {
            let mut y = -h.clone();
            while y <= h {
                let on_shell = x == h || y.abs() == h;
                if on_shell && (x.is_positive() || y.is_positive()) {
                    let val = q(&x, &y);
                    if val.abs().is_one() {
                        return Ok(Hilbert {
                            answer: true,
                            witness: Some(HilbertWitness::Form { x, y, value: val }),
                        });
                    }
                }
                y += 1;
            }
            x += 1;
        }
        h += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkmanCase {
    /// div = 2ℓ, {r, s} = {1, ℓ}
    One,
    /// div = ℓ, {r, s} = {2, ℓ/2}, ℓ ≥ 6, ℓ ≡ 2 mod 4
    TwoA,
    /// div = ℓ, {r, s} = {1, ℓ}, ℓ odd
    TwoB,
    /// div = ℓ, {r, s} = {1, ℓ/2}, ℓ even
    TwoC,
    NotExceptional,
}

impl MarkmanCase {
    pub fn tag(&self) -> &'static str {
        match self {
            MarkmanCase::One => "1",
            MarkmanCase::TwoA => "2a",
            MarkmanCase::TwoB => "2b",
            MarkmanCase::TwoC => "2c",
            MarkmanCase::NotExceptional => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Markman {
    pub div: Int,
    pub rho: Int,
    pub sigma: Int,
    /// {r, s}, smaller first
    pub rs: (Int, Int),
    pub spe: bool,
    pub case: MarkmanCase,
}

pub fn markman_classify(l: &SurfaceLattice, e: &MukaiVector, v: &MukaiVector) -> Result<Markman> {
    let su = setup(l, v)?;
    let te = e.triple().ok_or(Error::NotRankOne)?;
    if !e.is_primitive() {
        return Err(Error::NotPrimitive(e.to_string()));
    }
    if !pair3(&su.n, &te, &su.t).is_zero() {
        return Err(Error::Precondition(format!("{e} is not orthogonal to v")));
    }
    let vsq = su.plane.vsq.clone();
    if pair3(&su.n, &te, &te) != -vsq.clone() {
        return Err(Error::Precondition(format!("{e} does not have square -⟨v²⟩")));
    }
    let ell: Int = &vsq / 2;
    if ell < Int::from(3) {
        return Err(Error::Precondition("needs ℓ ≥ 3".into()));
    }
    let [f1, f2] = &su.plane.basis;
    let div = pair3(&su.n, &te, f1).gcd(&pair3(&su.n, &te, f2));
    let rho = e.add(v).content();
    let sigma = e.sub(v).content();
    let g = rho.gcd(&sigma);
    let (r, s) = (&rho / &g, &sigma / &g);
    let rs = if r <= s { (r, s) } else { (s, r) };
    let is = |x: i64, y: &Int| rs == (Int::from(x), y.clone());
    let two = Int::from(2);
    let case = if div == &ell * 2 && is(1, &ell) {
        MarkmanCase::One
    } else if div == ell {
        let half: Int = &ell / 2;
        let even = ell.is_even();
        if even && (&ell % Int::from(4)) == two && ell >= Int::from(6) && rs == (two.clone().min(half.clone()), two.clone().max(half.clone())) {
            MarkmanCase::TwoA
        } else if !even && is(1, &ell) {
            MarkmanCase::TwoB
        } else if even && is(1, &half) {
            MarkmanCase::TwoC
        } else {
            MarkmanCase::NotExceptional
        }
    } else {
        MarkmanCase::NotExceptional
    };
    Ok(Markman { div, rho, sigma, rs, spe: case != MarkmanCase::NotExceptional, case })
}
