//! Mukai lattice arithmetic: vectors (r, c1, a), the pairing
//! (c1, c1') - r a' - a r', predicates and twists by e^{kH}.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, int, lcm_denoms, rat_int, Int, Rat};
use crate::error::{Error, Result};

/// Néron-Severi data of an abelian surface: Gram matrix and an ample class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    gram: Vec<Vec<Int>>,
    ample: Vec<Int>,
}

impl SurfaceLattice {
    /// Validates symmetry, even diagonal, signature (1, rank-1) and H² > 0.
    pub fn new(gram: Vec<Vec<Int>>, ample: Vec<Int>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidLattice("empty Gram matrix".into()));
        }
        if gram.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidLattice("Gram matrix is not square".into()));
        }
        if ample.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: ample.len() });
        }
        for i in 0..rank {
            if gram[i][i].is_odd() {
                return Err(Error::InvalidLattice("odd diagonal entry".into()));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
                }
            }
        }
        let q: Vec<Vec<Rat>> = gram.iter().map(|r| r.iter().map(rat_int).collect()).collect();
        let (pos, neg, zero) = inertia(&q);
        if pos != 1 || neg != rank - 1 || zero != 0 {
            return Err(Error::InvalidLattice(format!(
                "signature ({pos}, {neg}) with {zero} null directions; need (1, {})",
                rank - 1
            )));
        }
        let lat = SurfaceLattice { gram, ample };
        if !lat.form(&lat.ample, &lat.ample).is_positive() {
            return Err(Error::InvalidLattice("ample class has non-positive square".into()));
        }
        if rank == 1 && !lat.ample[0].is_one() {
            return Err(Error::InvalidLattice(
                "on a rank 1 surface the ample class must be the generator H".into(),
            ));
        }
        Ok(lat)
    }

    /// NS = Z·H with (H²) = 2n.
    pub fn rank_one(n: impl Into<Int>) -> Result<Self> {
        let n = n.into();
        if !n.is_positive() {
            return Err(Error::InvalidLattice("rank 1 surfaces need n >= 1".into()));
        }
        Self::new(vec![vec![&n * 2]], vec![Int::one()])
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn ample(&self) -> &[Int] {
        &self.ample
    }

    /// n = (H²)/2, only meaningful on rank 1.
    pub fn n(&self) -> Option<Int> {
        (self.rank() == 1).then(|| &self.gram[0][0] / 2)
    }

    pub fn require_rank_one(&self) -> Result<Int> {
        self.n().ok_or(Error::NotRankOne)
    }

    /// Intersection form on NS coordinates.
    pub fn form(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn form_q(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * rat_int(&self.gram[i][j]) * yj;
            }
        }
        acc
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank(), found: len })
        }
    }

    pub fn pairing(&self, u: &MukaiVector, v: &MukaiVector) -> Result<Int> {
        self.check_dim(u.c1.len())?;
        self.check_dim(v.c1.len())?;
        Ok(self.form(&u.c1, &v.c1) - &u.r * &v.a - &u.a * &v.r)
    }

    pub fn pairing_q(&self, u: &RationalMukaiVector, v: &RationalMukaiVector) -> Result<Rat> {
        self.check_dim(u.c1.len())?;
        self.check_dim(v.c1.len())?;
        Ok(self.form_q(&u.c1, &v.c1) - &u.r * &v.a - &u.a * &v.r)
    }

    pub fn square(&self, v: &MukaiVector) -> Result<Int> {
        self.pairing(v, v)
    }

    pub fn predicates(&self, v: &MukaiVector) -> Result<VectorPredicates> {
        let square = self.square(v)?;
        if v.is_zero() {
            return Ok(VectorPredicates {
                square,
                isotropic: false,
                primitive: false,
                positive: false,
            });
        }
        let c1_zero = v.c1.iter().all(Zero::is_zero);
        let positive = if v.r.is_positive() {
            true
        } else if v.r.is_zero() && !c1_zero {
            // effectivity of ξ tested numerically
            !self.form(&v.c1, &v.c1).is_negative() && self.form(&v.c1, &self.ample).is_positive()
        } else {
            v.r.is_zero() && v.a.is_positive()
        };
        Ok(VectorPredicates {
            isotropic: square.is_zero(),
            primitive: v.is_primitive(),
            positive,
            square,
        })
    }

    /// v · e^{kH} with H the ample class.
    pub fn twist(&self, v: &MukaiVector, k: &Int) -> Result<MukaiVector> {
        self.check_dim(v.c1.len())?;
        let h2 = self.form(&self.ample, &self.ample);
        let c1: Vec<Int> = v.c1.iter().zip(&self.ample).map(|(c, h)| c + &v.r * k * h).collect();
        let a = &v.a + k * self.form(&v.c1, &self.ample) + &v.r * k * k * h2 / 2;
        Ok(MukaiVector { r: v.r.clone(), c1, a })
    }

    /// Gram matrix of the whole Mukai lattice in the basis
    /// (1,0,0), (0,e_i,0), (0,0,1).
    pub fn mukai_gram(&self) -> Vec<Vec<Int>> {
        let k = self.rank();
        let mut m = vec![vec![Int::zero(); k + 2]; k + 2];
        m[0][k + 1] = int(-1);
        m[k + 1][0] = int(-1);
        for i in 0..k {
            for j in 0..k {
                m[i + 1][j + 1] = self.gram[i][j].clone();
            }
        }
        m
    }
}

/// Counts of positive, negative and zero pivots of a symmetric matrix
/// under congruence (Sylvester).
pub fn inertia(m: &[Vec<Rat>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish; mix in an off-diagonal one
                let mut found = None;
                'outer: for i in k..n {
                    for j in (i + 1)..n {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                i
            }
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (k + 1)..n {
            let f = &a[i][k] / &d;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for j in k..n {
                let t = &f * &a[j][k];
                a[j][i] -= t;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MukaiVector {
    pub r: Int,
    pub c1: Vec<Int>,
    pub a: Int,
}

impl MukaiVector {
    pub fn new(r: impl Into<Int>, c1: Vec<Int>, a: impl Into<Int>) -> Self {
        MukaiVector { r: r.into(), c1, a: a.into() }
    }

    /// Rank-1 shorthand (r, dH, a).
    pub fn rank_one(r: impl Into<Int>, d: impl Into<Int>, a: impl Into<Int>) -> Self {
        MukaiVector { r: r.into(), c1: vec![d.into()], a: a.into() }
    }

    pub fn from_triple(t: &[Int; 3]) -> Self {
        Self::rank_one(t[0].clone(), t[1].clone(), t[2].clone())
    }

    /// (r, d, a) when c1 has length 1.
    pub fn triple(&self) -> Option<[Int; 3]> {
        (self.c1.len() == 1).then(|| [self.r.clone(), self.c1[0].clone(), self.a.clone()])
    }

    pub fn entries(&self) -> impl Iterator<Item = &Int> {
        std::iter::once(&self.r).chain(self.c1.iter()).chain(std::iter::once(&self.a))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Zero::is_zero)
    }

    pub fn content(&self) -> Int {
        gcd_all(self.entries())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divide by the gcd of the entries. The zero vector is returned as is.
    pub fn primitive_part(&self) -> MukaiVector {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        self.map(|x| x / &g)
    }

    pub fn map(&self, f: impl Fn(&Int) -> Int) -> MukaiVector {
        MukaiVector { r: f(&self.r), c1: self.c1.iter().map(&f).collect(), a: f(&self.a) }
    }

    pub fn scale(&self, k: &Int) -> MukaiVector {
        self.map(|x| x * k)
    }

    pub fn add(&self, o: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &o.r,
            c1: self.c1.iter().zip(&o.c1).map(|(x, y)| x + y).collect(),
            a: &self.a + &o.a,
        }
    }

    pub fn sub(&self, o: &MukaiVector) -> MukaiVector {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MukaiVector {
        self.map(|x| -x)
    }

    pub fn to_rational(&self) -> RationalMukaiVector {
        RationalMukaiVector {
            r: rat_int(&self.r),
            c1: self.c1.iter().map(rat_int).collect(),
            a: rat_int(&self.a),
        }
    }

    /// True when `o` is a rational multiple of self (both nonzero or not).
    pub fn proportional(&self, o: &MukaiVector) -> bool {
        let x: Vec<&Int> = self.entries().collect();
        let y: Vec<&Int> = o.entries().collect();
        if x.len() != y.len() {
            return false;
        }
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                if x[i] * y[j] != x[j] * y[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.len() == 1 {
            write!(f, "({},{},{})", self.r, self.c1[0], self.a)
        } else {
            let c: Vec<String> = self.c1.iter().map(ToString::to_string).collect();
            write!(f, "({},[{}],{})", self.r, c.join(","), self.a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMukaiVector {
    pub r: Rat,
    pub c1: Vec<Rat>,
    pub a: Rat,
}

impl RationalMukaiVector {
    pub fn new(r: Rat, c1: Vec<Rat>, a: Rat) -> Self {
        RationalMukaiVector { r, c1, a }
    }

    pub fn rank_one(r: Rat, d: Rat, a: Rat) -> Self {
        RationalMukaiVector { r, c1: vec![d], a }
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rat> {
        std::iter::once(&self.r).chain(self.c1.iter()).chain(std::iter::once(&self.a))
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> RationalMukaiVector {
        RationalMukaiVector { r: f(&self.r), c1: self.c1.iter().map(&f).collect(), a: f(&self.a) }
    }

    pub fn scale(&self, k: &Rat) -> RationalMukaiVector {
        self.map(|x| x * k)
    }

    pub fn add(&self, o: &RationalMukaiVector) -> RationalMukaiVector {
        RationalMukaiVector {
            r: &self.r + &o.r,
            c1: self.c1.iter().zip(&o.c1).map(|(x, y)| x + y).collect(),
            a: &self.a + &o.a,
        }
    }

    pub fn sub(&self, o: &RationalMukaiVector) -> RationalMukaiVector {
        self.add(&o.map(|x| -x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Zero::is_zero)
    }

    /// The primitive integer vector on the same ray (zero stays zero).
    pub fn primitive_integral(&self) -> MukaiVector {
        let l = lcm_denoms(self.entries());
        let v = MukaiVector {
            r: (&self.r * rat_int(&l)).to_integer(),
            c1: self.c1.iter().map(|x| (x * rat_int(&l)).to_integer()).collect(),
            a: (&self.a * rat_int(&l)).to_integer(),
        };
        v.primitive_part()
    }
}

impl From<&MukaiVector> for RationalMukaiVector {
    fn from(v: &MukaiVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Display for RationalMukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::arith::rat_str;
        let c: Vec<String> = self.c1.iter().map(s).collect();
        if self.c1.len() == 1 {
            write!(f, "({},{},{})", s(&self.r), c[0], s(&self.a))
        } else {
            write!(f, "({},[{}],{})", s(&self.r), c.join(","), s(&self.a))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPredicates {
    pub square: Int,
    pub isotropic: bool,
    pub primitive: bool,
    pub positive: bool,
}

/// Rank-1 pairing on bare triples, the hot path of the enumerators.
pub fn pair3(n: &Int, u: &[Int; 3], v: &[Int; 3]) -> Int {
    Int::from(2) * n * &u[1] * &v[1] - &u[0] * &v[2] - &u[2] * &v[0]
}

pub fn pair3_q(n: &Int, u: &[Rat; 3], v: &[Rat; 3]) -> Rat {
    rat_int(&(Int::from(2) * n)) * &u[1] * &v[1] - &u[0] * &v[2] - &u[2] * &v[0]
}
