//! The Sym₂(ℤ, n) model of the rank-1 Mukai lattice and the group Ĝ of
//! matrices ((a√R, b√S), (c√S, d√R)) with RS = n acting on it.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, exact_sqrt, rat_int, squarefree_split, Int, Rat};
use crate::charge::StabilityPoint;
use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, SurfaceLattice};
use crate::pell::pell_fundamental;
use crate::quadext::QuadExt;

/// ((x, y√n), (y√n, z)), the image of (r, d, a) = (x, y, z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sym2Matrix {
    pub x: Int,
    pub y: Int,
    pub z: Int,
}

impl Sym2Matrix {
    pub fn from_mukai(v: &[Int; 3]) -> Self {
        Sym2Matrix { x: v[0].clone(), y: v[1].clone(), z: v[2].clone() }
    }

    pub fn to_mukai(&self) -> [Int; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    /// B(M₁, M₂) = 2n y₁y₂ - (x₁z₂ + z₁x₂).
    pub fn b_form(&self, o: &Sym2Matrix, n: &Int) -> Int {
        Int::from(2) * n * &self.y * &o.y - (&self.x * &o.z + &self.z * &o.x)
    }
}

/// An element of Ĝ modulo ±1, stored canonically: smallest admissible R
/// for the underlying real matrix and first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GHat {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
    pub r: Int,
    pub s: Int,
}

/// k·√m with m squarefree.
#[derive(Clone, Debug)]
struct Surd {
    coef: Int,
    rad: Int,
}

fn surd(coef: Int, rad: &Int) -> Surd {
    let (f, m) = squarefree_split(rad);
    Surd { coef: coef * f, rad: m }
}

fn surd_add(x: Surd, y: Surd) -> Option<Surd> {
    if x.coef.is_zero() {
        return Some(y);
    }
    if y.coef.is_zero() {
        return Some(x);
    }
    (x.rad == y.rad).then(|| Surd { coef: x.coef + y.coef, rad: x.rad })
}

/// Integer k with k√R = x, if any.
fn over_root(x: &Surd, r: &Int) -> Option<Int> {
    if x.coef.is_zero() {
        return Some(Int::zero());
    }
    let num = &x.coef * &x.coef * &x.rad;
    let (q, rem) = num.div_rem(r);
    if !rem.is_zero() {
        return None;
    }
    let k = exact_sqrt(&q)?;
    Some(if x.coef.is_negative() { -k } else { k })
}

impl GHat {
    pub fn new(a: Int, b: Int, c: Int, d: Int, r: Int, s: Int) -> Result<GHat> {
        if !r.is_positive() || !s.is_positive() {
            return Err(Error::InvalidGroupElement("split must be positive".into()));
        }
        let g = GHat { a, b, c, d, r, s };
        let det = g.det();
        if !det.abs().is_one() {
            return Err(Error::InvalidGroupElement(format!("adR - bcS = {det}")));
        }
        Ok(g.canonical())
    }

    pub fn from_i64(m: [[i64; 2]; 2], r: i64, s: i64) -> Result<GHat> {
        GHat::new(m[0][0].into(), m[0][1].into(), m[1][0].into(), m[1][1].into(), r.into(), s.into())
    }

    pub fn identity(n: &Int) -> GHat {
        GHat { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one(), r: Int::one(), s: n.clone() }
    }

    pub fn n(&self) -> Int {
        &self.r * &self.s
    }

    /// adR - bcS = ε.
    pub fn det(&self) -> Int {
        &self.a * &self.d * &self.r - &self.b * &self.c * &self.s
    }

    pub fn epsilon(&self) -> i8 {
        if self.det().is_positive() {
            1
        } else {
            -1
        }
    }

    fn entries(&self) -> [Surd; 4] {
        [
            surd(self.a.clone(), &self.r),
            surd(self.b.clone(), &self.s),
            surd(self.c.clone(), &self.s),
            surd(self.d.clone(), &self.r),
        ]
    }

    /// Re-express a real matrix of surds in Ĝ shape.
    fn from_surds(e: [Surd; 4], n: &Int) -> Option<GHat> {
        for r in divisors(n) {
            let s = n / &r;
            let (Some(a), Some(b), Some(c), Some(d)) =
                (over_root(&e[0], &r), over_root(&e[1], &s), over_root(&e[2], &s), over_root(&e[3], &r))
            else {
                continue;
            };
            let g = GHat { a, b, c, d, r, s };
            if g.det().abs().is_one() {
                return Some(g.signed());
            }
        }
        None
    }

    fn signed(self) -> GHat {
        let lead = [&self.a, &self.b, &self.c, &self.d].into_iter().find(|x| !x.is_zero()).cloned();
        match lead {
            Some(x) if x.is_negative() => GHat {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
                r: self.r,
                s: self.s,
            },
            _ => self,
        }
    }

    fn canonical(&self) -> GHat {
        GHat::from_surds(self.entries(), &self.n()).expect("a valid element re-expresses itself")
    }

    pub fn compose(&self, o: &GHat) -> Result<GHat> {
        let n = self.n();
        if n != o.n() {
            return Err(Error::InvalidGroupElement("elements for different n".into()));
        }
        let [a1, b1, c1, d1] = self.entries();
        let [a2, b2, c2, d2] = o.entries();
        let m = |x: &Surd, y: &Surd| surd(&x.coef * &y.coef, &(&x.rad * &y.rad));
        let sum = |x: Surd, y: Surd| {
            surd_add(x, y).ok_or_else(|| Error::InvalidGroupElement("mixed radicands in product".into()))
        };
        let e = [
            sum(m(&a1, &a2), m(&b1, &c2))?,
            sum(m(&a1, &b2), m(&b1, &d2))?,
            sum(m(&c1, &a2), m(&d1, &c2))?,
            sum(m(&c1, &b2), m(&d1, &d2))?,
        ];
        GHat::from_surds(e, &n).ok_or_else(|| Error::InvalidGroupElement("product is not in Ĝ".into()))
    }

    pub fn inverse(&self) -> GHat {
        let e = Int::from(self.epsilon());
        GHat {
            a: &e * &self.d,
            b: -&e * &self.b,
            c: -&e * &self.c,
            d: &e * &self.a,
            r: self.r.clone(),
            s: self.s.clone(),
        }
        .canonical()
    }

    pub fn pow(&self, k: i64) -> GHat {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GHat::identity(&self.n());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base).expect("powers stay in Ĝ");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == GHat::identity(&self.n())
    }

    /// diag(1, -1)·g.
    pub fn dualize(&self) -> GHat {
        GHat { c: -&self.c, d: -&self.d, ..self.clone() }.canonical()
    }

    /// Right action v ↦ ᵗg ι(v) g on (r, d, a).
    pub fn act(&self, v: &[Int; 3]) -> [Int; 3] {
        let n = self.n();
        let (a, b, c, d, rr, ss) = (&self.a, &self.b, &self.c, &self.d, &self.r, &self.s);
        let [x, y, z] = v;
        let two = Int::from(2);
        [
            a * a * rr * x + &two * a * c * &n * y + c * c * ss * z,
            a * b * x + (a * d * rr + b * c * ss) * y + c * d * z,
            b * b * ss * x + &two * b * d * &n * y + d * d * rr * z,
        ]
    }

    /// Coefficients (α, β, γ, δ) of z ↦ (αz + β)/(γz + δ) on the half-plane.
    pub fn mobius(&self) -> [Int; 4] {
        [&self.d * &self.r, self.b.clone(), &self.c * self.n(), &self.a * &self.r]
    }

    /// Fixed points on the real line, when the map is hyperbolic.
    pub fn fixed_points(&self) -> Option<(QuadExt, QuadExt)> {
        let [al, be, ga, de] = self.mobius();
        if ga.is_zero() {
            return None;
        }
        // γz² + (δ - α)z - β = 0
        let disc = (&de - &al) * (&de - &al) + Int::from(4) * &be * &ga;
        if !disc.is_positive() {
            return None;
        }
        let root = QuadExt::sqrt_of(&rat_int(&disc));
        let two_g = rat_int(&(Int::from(2) * &ga));
        let base = QuadExt::rational(rat_int(&(&al - &de)));
        let z1 = base.sub(&root).scale(&two_g.recip());
        let z2 = base.add(&root).scale(&two_g.recip());
        Some(if z1 <= z2 { (z1, z2) } else { (z2, z1) })
    }
}

impl fmt::Display for GHat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.a, self.b, self.c, self.d)?;
        if !self.r.is_one() {
            write!(f, "[R={},S={}]", self.r, self.s)?;
        }
        Ok(())
    }
}

pub fn act_on_mukai(l: &SurfaceLattice, v: &MukaiVector, g: &GHat) -> Result<MukaiVector> {
    let n = l.require_rank_one()?;
    if g.n() != n {
        return Err(Error::InvalidGroupElement(format!("element for n = {}, surface has n = {n}", g.n())));
    }
    let t = v.triple().ok_or(Error::NotRankOne)?;
    Ok(MukaiVector::from_triple(&g.act(&t)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stabilizer {
    Infinite(GHat),
    /// nℓ is a square: only torsion survives.
    Finite,
}

/// The element built from the fundamental solution of p² - nℓq² = 1:
/// ((p - dnq, -aq√n), (rq√n, p + dnq)).
pub fn stabilizer_generator(l: &SurfaceLattice, v: &MukaiVector) -> Result<Stabilizer> {
    let n = l.require_rank_one()?;
    let [r, d, a] = v.triple().ok_or(Error::NotRankOne)?;
    if !v.is_primitive() {
        return Err(Error::NotPrimitive(v.to_string()));
    }
    let sq = l.square(v)?;
    if !sq.is_positive() {
        return Err(Error::NonPositiveSquare(sq.to_string()));
    }
    let nl = &n * &sq / 2;
    let Some(sol) = pell_fundamental(&nl, 1) else {
        return Ok(Stabilizer::Finite);
    };
    let (p, q) = (sol.x, sol.y);
    let g = GHat::new(&p - &d * &n * &q, -&a * &q, &r * &q, &p + &d * &n * &q, Int::one(), n)?;
    Ok(Stabilizer::Infinite(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabAction {
    FixesV,
    FixesNegV,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabMembership {
    pub action: StabAction,
    /// g(v) = det(g)·v.
    pub in_stab0: bool,
    /// In Stab₀(v) with determinant 1 and upper-right entry in √n·ℤ.
    pub in_stab0_star: bool,
}

pub fn in_stab(l: &SurfaceLattice, g: &GHat, v: &MukaiVector) -> Result<StabMembership> {
    let w = act_on_mukai(l, v, g)?;
    let action = if w == *v {
        StabAction::FixesV
    } else if w == v.neg() {
        StabAction::FixesNegV
    } else {
        StabAction::No
    };
    let eps = g.epsilon();
    let in_stab0 = match action {
        StabAction::FixesV => eps == 1 || v.is_zero(),
        StabAction::FixesNegV => eps == -1,
        StabAction::No => false,
    };
    // b√S ∈ √n·ℤ  ⇔  b²/R is a square
    let upper_right = {
        let (q, rem) = (&g.b * &g.b).div_rem(&g.r);
        rem.is_zero() && exact_sqrt(&q).is_some()
    };
    Ok(StabMembership { action, in_stab0, in_stab0_star: in_stab0 && eps == 1 && upper_right })
}

/// Image of (s, t²) under z ↦ (b + dRz)/(R(a + cSz)); t stays positive.
pub fn halfplane_action(g: &GHat, p: &StabilityPoint) -> Result<StabilityPoint> {
    if p.beta.len() != 1 {
        return Err(Error::NotRankOne);
    }
    if !p.t2.is_positive() {
        return Err(Error::Precondition("t² must be positive".into()));
    }
    let [al, be, ga, de] = g.mobius().map(|x| rat_int(&x));
    let s = p.s();
    let t2 = &p.t2;
    let denom = (&ga * s + &de) * (&ga * s + &de) + &ga * &ga * t2;
    if denom.is_zero() {
        return Err(Error::DegenerateAction);
    }
    let modulus = s * s + t2;
    let s_new = (&al * &ga * &modulus + (&al * &de + &be * &ga) * s + &be * &de) / &denom;
    let det = &al * &de - &be * &ga;
    let t2_new = &det * &det * t2 / (&denom * &denom);
    Ok(StabilityPoint::rank_one(s_new, t2_new))
}

/// Image of a real boundary point s (t = 0); None at the pole.
pub fn boundary_action(g: &GHat, s: &Rat) -> Option<Rat> {
    let [al, be, ga, de] = g.mobius().map(|x| rat_int(&x));
    let den = &ga * s + &de;
    (!den.is_zero()).then(|| (&al * s + &be) / den)
}
