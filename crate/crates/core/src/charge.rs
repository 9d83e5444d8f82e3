//! Central charges Z = A + iBt, wall predicates and rank-1 wall geometry.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, rat_int, rat_str, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, RationalMukaiVector, SurfaceLattice};

/// A point (β, tH) stored through t². On rank 1, β = sH and H is the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityPoint {
    pub beta: Vec<Rat>,
    pub h: Vec<Int>,
    pub t2: Rat,
}

impl StabilityPoint {
    pub fn rank_one(s: Rat, t2: Rat) -> Self {
        StabilityPoint { beta: vec![s], h: vec![Int::one()], t2 }
    }

    pub fn general(beta: Vec<Rat>, h: Vec<Int>, t2: Rat) -> Self {
        StabilityPoint { beta, h, t2 }
    }

    /// s for a rank-1 point.
    pub fn s(&self) -> &Rat {
        &self.beta[0]
    }

    pub(crate) fn validate(&self, l: &SurfaceLattice, allow_boundary: bool) -> Result<()> {
        let k = l.rank();
        if self.beta.len() != k || self.h.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: if self.beta.len() != k { self.beta.len() } else { self.h.len() },
            });
        }
        if self.t2.is_negative() || (!allow_boundary && self.t2.is_zero()) {
            return Err(Error::Precondition("t² must be positive".into()));
        }
        if !l.form(&self.h, &self.h).is_positive() || !l.form(&self.h, l.ample()).is_positive() {
            return Err(Error::Precondition("H must be ample".into()));
        }
        if k == 1 && !self.h[0].is_one() {
            return Err(Error::Precondition("rank 1 points use H itself".into()));
        }
        Ok(())
    }
}

impl fmt::Display for StabilityPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta.len() == 1 {
            write!(f, "(s={}, t²={})", rat_str(&self.beta[0]), rat_str(&self.t2))
        } else {
            let b: Vec<String> = self.beta.iter().map(rat_str).collect();
            write!(f, "(β=[{}], t²={})", b.join(","), rat_str(&self.t2))
        }
    }
}

/// Z = A + i·B·t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargePair {
    pub a: Rat,
    pub b: Rat,
}

impl ChargePair {
    pub fn new(a: Rat, b: Rat) -> Self {
        ChargePair { a, b }
    }
}

pub(crate) fn charge_q(l: &SurfaceLattice, v: &RationalMukaiVector, p: &StabilityPoint) -> ChargePair {
    let h: Vec<Rat> = p.h.iter().map(rat_int).collect();
    let h2 = l.form(&p.h, &p.h);
    let beta2 = l.form_q(&p.beta, &p.beta);
    // ⟨e^β, v⟩ with e^β = (1, β, β²/2)
    let e_beta = l.form_q(&p.beta, &v.c1) - &v.a - &beta2 / Rat::from_integer(2.into()) * &v.r;
    let a = e_beta + &v.r * &p.t2 * rat_int(&h2) / Rat::from_integer(2.into());
    let shifted: Vec<Rat> = v.c1.iter().zip(&p.beta).map(|(c, b)| c - &v.r * b).collect();
    let b = l.form_q(&shifted, &h);
    ChargePair { a, b }
}

pub fn central_charge(l: &SurfaceLattice, v: &MukaiVector, p: &StabilityPoint) -> Result<ChargePair> {
    central_charge_q(l, &v.to_rational(), p)
}

pub fn central_charge_q(l: &SurfaceLattice, v: &RationalMukaiVector, p: &StabilityPoint) -> Result<ChargePair> {
    p.validate(l, false)?;
    if v.c1.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), found: v.c1.len() });
    }
    Ok(charge_q(l, v, p))
}

/// A·B₁ - A₁·B, which vanishes exactly on the wall of v₁.
pub fn wall_determinant(
    l: &SurfaceLattice,
    v: &RationalMukaiVector,
    v1: &RationalMukaiVector,
    p: &StabilityPoint,
) -> Result<Rat> {
    let z = central_charge_q(l, v, p)?;
    let z1 = central_charge_q(l, v1, p)?;
    Ok(&z.a * &z1.b - &z1.a * &z.b)
}

pub fn wall_candidate_check(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector) -> Result<bool> {
    let w = v.sub(v1);
    Ok(l.pairing(v1, &w)?.is_positive()
        && !l.square(v1)?.is_negative()
        && !l.square(&w)?.is_negative()
        && !v.proportional(v1))
}

pub fn wall_nonempty(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector) -> Result<bool> {
    if !wall_candidate_check(l, v, v1)? {
        return Err(Error::Precondition(format!("{v1} is not a wall candidate for {v}")));
    }
    let p = l.pairing(v, v1)?;
    Ok(&p * &p > l.square(v)? * l.square(v1)?)
}

pub fn on_wall(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector, p: &StabilityPoint) -> Result<bool> {
    Ok(wall_determinant(l, &v.to_rational(), &v1.to_rational(), p)?.is_zero())
}

/// Primitive sign-normalized coefficients of P(s²+t²) + Qs + R = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pqr(pub [Int; 3]);

impl Pqr {
    /// Normalize an arbitrary nonzero triple.
    pub fn normalized(raw: [Int; 3]) -> Option<Pqr> {
        let g = gcd_all(raw.iter());
        if g.is_zero() {
            return None;
        }
        let lead = if !raw[0].is_zero() { &raw[0] } else if !raw[1].is_zero() { &raw[1] } else { &raw[2] };
        let g = if lead.is_negative() { -g } else { g };
        Some(Pqr(raw.map(|x| x / &g)))
    }

    pub fn p(&self) -> &Int {
        &self.0[0]
    }
    pub fn q(&self) -> &Int {
        &self.0[1]
    }
    pub fn r(&self) -> &Int {
        &self.0[2]
    }

    pub fn geometry(&self) -> WallGeometry {
        let [p, q, r] = &self.0;
        if p.is_zero() {
            if q.is_zero() {
                return WallGeometry::Empty;
            }
            return WallGeometry::Line { s0: Rat::new(-r, q.clone()) };
        }
        let center = Rat::new(-q, p * 2);
        let radius2 = &center * &center - Rat::new(r.clone(), p.clone());
        if radius2.is_positive() {
            WallGeometry::Circle { center, radius2 }
        } else {
            WallGeometry::Empty
        }
    }

    /// P(s²+t²) + Qs + R at a point.
    pub fn eval(&self, s: &Rat, t2: &Rat) -> Rat {
        let [p, q, r] = &self.0;
        rat_int(p) * (s * s + t2) + rat_int(q) * s + rat_int(r)
    }
}

impl fmt::Display for Pqr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallGeometry {
    Line { s0: Rat },
    Circle { center: Rat, radius2: Rat },
    Empty,
}

impl WallGeometry {
    /// Whether two walls share a point of the open upper half-plane.
    pub fn meets(&self, o: &WallGeometry) -> bool {
        use WallGeometry::*;
        match (self, o) {
            (Empty, _) | (_, Empty) => false,
            (Line { s0 }, Line { s0: s1 }) => s0 == s1,
            (Line { s0 }, Circle { center, radius2 }) | (Circle { center, radius2 }, Line { s0 }) => {
                let d = s0 - center;
                &d * &d < *radius2
            }
            (Circle { center: c1, radius2: r1 }, Circle { center: c2, radius2: r2 }) => {
                if c1 == c2 {
                    return r1 == r2;
                }
                // |ρ1-ρ2| < |c1-c2| < ρ1+ρ2, squared out
                let d = c1 - c2;
                let e = &d * &d - r1 - r2;
                &e * &e < Rat::from_integer(4.into()) * r1 * r2
            }
        }
    }
}

/// Unnormalized rank-1 coefficients; A·B₁ - A₁·B = 2n·(P(s²+t²) + Qs + R).
pub fn raw_pqr(n: &Int, v: &[Int; 3], v1: &[Int; 3]) -> [Int; 3] {
    let [r, d, a] = v;
    let [r1, d1, a1] = v1;
    [n * (r * d1 - r1 * d), a * r1 - a1 * r, a1 * d - a * d1]
}

pub fn wall_pqr(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector) -> Result<Pqr> {
    let n = l.require_rank_one()?;
    let (Some(t), Some(t1)) = (v.triple(), v1.triple()) else {
        return Err(Error::DimensionMismatch { expected: 1, found: v.c1.len().max(v1.c1.len()) });
    };
    Pqr::normalized(raw_pqr(&n, &t, &t1)).ok_or(Error::Proportional)
}

/// The locus where Z(v₁) and Z(v) are real-proportional. It depends only on
/// the line through v₁ modulo v, so no candidate inequality is imposed here.
pub fn wall_geometry_rank1(l: &SurfaceLattice, v: &MukaiVector, v1: &MukaiVector) -> Result<(Pqr, WallGeometry)> {
    let pqr = wall_pqr(l, v, v1)?;
    let g = pqr.geometry();
    Ok((pqr, g))
}

/// Compare phases in (0, 1] of two admissible charges.
pub fn phase_precedes(z1: &ChargePair, z2: &ChargePair) -> Result<Ordering> {
    for z in [z1, z2] {
        if z.b.is_negative() || (z.b.is_zero() && !z.a.is_negative()) {
            return Err(Error::InadmissibleCharge(format!("{}, {}", rat_str(&z.a), rat_str(&z.b))));
        }
    }
    Ok(match (z1.b.is_zero(), z2.b.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        // z2 counterclockwise of z1 means a larger phase
        (false, false) => (&z2.a * &z1.b).cmp(&(&z1.a * &z2.b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn v(r: i64, d: i64, a: i64) -> MukaiVector {
        MukaiVector::rank_one(r, d, a)
    }

    fn pt(s: Rat, t2: Rat) -> StabilityPoint {
        StabilityPoint::rank_one(s, t2)
    }

    #[test]
    fn charge_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let c = |x: MukaiVector, p: StabilityPoint| central_charge(&l, &x, &p).unwrap();
        assert_eq!(c(v(0, 0, 1), pt(rat(3, 7), rat(5, 2))), ChargePair::new(rat(-1, 1), rat(0, 1)));
        assert_eq!(c(v(1, 0, 0), pt(rat(0, 1), rat(1, 1))), ChargePair::new(rat(1, 1), rat(0, 1)));
        assert_eq!(c(v(2, 1, -2), pt(rat(1, 2), rat(1, 1))), ChargePair::new(rat(9, 2), rat(0, 1)));
        assert!(central_charge(&l, &v(1, 0, 0), &pt(rat(0, 1), rat(0, 1))).is_err());
    }

    #[test]
    fn rank_one_formula_matches_general() {
        // A = -a + 2nds - rn(s² - t²), B = 2n(d - rs), checked by expansion
        let l = SurfaceLattice::rank_one(3).unwrap();
        let (r, d, a) = (2, -1, 5);
        let (s, t2) = (rat(-2, 3), rat(7, 5));
        let n = rat(3, 1);
        let rr = rat(r, 1);
        let dd = rat(d, 1);
        let aa = rat(a, 1);
        let exp_a = -&aa + rat(2, 1) * &n * &dd * &s - &rr * &n * (&s * &s - &t2);
        let exp_b = rat(2, 1) * &n * (&dd - &rr * &s);
        assert_eq!(central_charge(&l, &v(r, d, a), &pt(s, t2)).unwrap(), ChargePair::new(exp_a, exp_b));
    }

    #[test]
    fn candidate_examples() {
        let l1 = SurfaceLattice::rank_one(1).unwrap();
        let l39 = SurfaceLattice::rank_one(39).unwrap();
        assert!(wall_candidate_check(&l1, &v(2, 1, -2), &v(1, 0, 0)).unwrap());
        assert!(!wall_candidate_check(&l39, &v(6, 1, 6), &v(0, 0, -1)).unwrap());
        assert_eq!(l39.square(&v(6, 1, 7)).unwrap(), int(-6));
        assert!(!wall_candidate_check(&l1, &v(2, 1, -2), &v(4, 2, -4)).unwrap());
    }

    #[test]
    fn nonempty_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        assert!(wall_nonempty(&l, &v(2, 1, -2), &v(1, 0, 0)).unwrap());
        // ⟨v,v1⟩ = 3, ⟨v²⟩⟨v1²⟩ = 6·2
        assert!(!wall_nonempty(&l, &v(1, 0, -3), &v(1, 1, 0)).unwrap());
        assert!(matches!(wall_nonempty(&l, &v(2, 1, -2), &v(4, 2, -4)), Err(Error::Precondition(_))));
    }

    #[test]
    fn on_wall_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let w = v(2, 1, -2);
        assert!(on_wall(&l, &w, &v(0, 0, -1), &pt(rat(1, 2), rat(1, 1))).unwrap());
        assert!(on_wall(&l, &w, &v(1, 0, 0), &pt(rat(-1, 1), rat(1, 1))).unwrap());
        assert!(!on_wall(&l, &w, &v(1, 0, 0), &pt(rat(0, 1), rat(1, 1))).unwrap());
    }

    #[test]
    fn geometry_examples() {
        let l = SurfaceLattice::rank_one(1).unwrap();
        let w = v(2, 1, -2);
        let g = |x| wall_geometry_rank1(&l, &w, &x).unwrap().1;
        assert_eq!(g(v(0, 0, -1)), WallGeometry::Line { s0: rat(1, 2) });
        assert_eq!(g(v(1, 0, 0)), WallGeometry::Circle { center: rat(-1, 1), radius2: rat(1, 1) });
        assert_eq!(g(v(-1, -1, -1)), WallGeometry::Circle { center: rat(2, 1), radius2: rat(1, 1) });
        assert_eq!(wall_geometry_rank1(&l, &w, &v(4, 2, -4)), Err(Error::Proportional));
    }

    #[test]
    fn phase_examples() {
        let z = |a, b| ChargePair::new(rat(a, 1), rat(b, 1));
        assert_eq!(phase_precedes(&z(0, 2), &z(-1, 0)).unwrap(), Ordering::Less);
        assert_eq!(phase_precedes(&z(-1, 0), &z(-1, 0)).unwrap(), Ordering::Equal);
        assert_eq!(phase_precedes(&z(1, 1), &z(-1, 1)).unwrap(), Ordering::Less);
        assert_eq!(phase_precedes(&z(-1, 1), &z(1, 1)).unwrap(), Ordering::Greater);
        assert!(phase_precedes(&ChargePair::new(rat(9, 2), rat(0, 1)), &z(-1, 0)).is_err());
    }

    #[test]
    fn circle_meeting() {
        let c = |c, r2| WallGeometry::Circle { center: rat(c, 1), radius2: rat(r2, 1) };
        assert!(!c(-1, 1).meets(&c(2, 1)));
        assert!(c(0, 4).meets(&c(2, 4)));
        assert!(!c(0, 9).meets(&c(1, 1))); // nested
        assert!(WallGeometry::Line { s0: rat(0, 1) }.meets(&c(0, 1)));
        assert!(!WallGeometry::Line { s0: rat(1, 2) }.meets(&c(-1, 1)));
    }
}
