//! Exact elements x + y√m of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_sqrt, isqrt, rat_int, rat_str, squarefree_split, Int, Rat};

/// x + y√m with m squarefree ≥ 2, or y = 0 and m = 0 for rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rat: Rat,
    irr: Rat,
    radicand: Int,
}

impl QuadExt {
    pub fn new(rat: Rat, irr: Rat, radicand: Int) -> QuadExt {
        assert!(!radicand.is_negative(), "negative radicand");
        let (f, m) = squarefree_split(&radicand);
        if irr.is_zero() || m.is_zero() {
            return QuadExt::rational(rat);
        }
        if m.is_one() {
            return QuadExt::rational(rat + irr * rat_int(&f));
        }
        QuadExt { rat, irr: irr * rat_int(&f), radicand: m }
    }

    pub fn rational(x: Rat) -> QuadExt {
        QuadExt { rat: x, irr: Rat::zero(), radicand: Int::zero() }
    }

    /// √x for a nonnegative rational x.
    pub fn sqrt_of(x: &Rat) -> QuadExt {
        assert!(!x.is_negative(), "square root of a negative rational");
        // √(p/q) = √(pq)/q
        QuadExt::new(Rat::zero(), Rat::new(Int::one(), x.denom().clone()), x.numer() * x.denom())
    }

    pub fn rat_part(&self) -> &Rat {
        &self.rat
    }

    pub fn irr_part(&self) -> &Rat {
        &self.irr
    }

    pub fn radicand(&self) -> &Int {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rat)
    }

    fn common(&self, o: &QuadExt) -> Int {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => o.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert_eq!(self.radicand, o.radicand, "mixing different quadratic fields");
                self.radicand.clone()
            }
        }
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        let m = self.common(o);
        QuadExt::new(&self.rat + &o.rat, &self.irr + &o.irr, m)
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { rat: -&self.rat, irr: -&self.irr, radicand: self.radicand.clone() }
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        let m = self.common(o);
        let mq = rat_int(&m);
        QuadExt::new(
            &self.rat * &o.rat + &self.irr * &o.irr * mq,
            &self.rat * &o.irr + &self.irr * &o.rat,
            m,
        )
    }

    pub fn scale(&self, k: &Rat) -> QuadExt {
        QuadExt::new(&self.rat * k, &self.irr * k, self.radicand.clone())
    }

    pub fn add_rat(&self, k: &Rat) -> QuadExt {
        QuadExt { rat: &self.rat + k, ..self.clone() }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { irr: -&self.irr, ..self.clone() }
    }

    /// x² - m y², the field norm.
    pub fn norm(&self) -> Rat {
        &self.rat * &self.rat - &self.irr * &self.irr * rat_int(&self.radicand)
    }

    pub fn inv(&self) -> QuadExt {
        let nm = self.norm();
        assert!(!nm.is_zero(), "division by zero in quadratic field");
        self.conj().scale(&nm.recip())
    }

    pub fn div(&self, o: &QuadExt) -> QuadExt {
        self.mul(&o.inv())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    /// Exact sign of x + y√m.
    pub fn signum(&self) -> Ordering {
        let sx = self.rat.cmp(&Rat::zero());
        let sy = self.irr.cmp(&Rat::zero());
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        // opposite signs: compare x² with m y²
        let x2 = &self.rat * &self.rat;
        let y2m = &self.irr * &self.irr * rat_int(&self.radicand);
        match x2.cmp(&y2m) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Comparison with a rational; valid across any radicand.
    pub fn cmp_rat(&self, k: &Rat) -> Ordering {
        self.add_rat(&-k).signum()
    }

    /// Exact floor.
    pub fn floor(&self) -> Int {
        if self.is_rational() {
            return self.rat.floor().to_integer();
        }
        // (a + b√m)/e with integer a, b and e > 0
        let e = self.rat.denom().lcm(self.irr.denom());
        let a = (&self.rat * rat_int(&e)).to_integer();
        let b = (&self.irr * rat_int(&e)).to_integer();
        let n = &b * &b * &self.radicand;
        let root = isqrt(&n);
        let fl = if b.is_positive() {
            a + root
        } else {
            let exact = exact_sqrt(&n).is_some();
            a - root - if exact { Int::zero() } else { Int::one() }
        };
        fl.div_floor(&e)
    }

    /// A rational strictly above self within 2^-bits.
    pub fn rational_above(&self, bits: u32) -> Rat {
        let scale = num_traits::pow(Int::from(2), bits as usize);
        let fl = self.scale(&rat_int(&scale)).floor();
        Rat::new(fl + 1, scale)
    }

    /// A rational strictly below self within 2^-bits.
    pub fn rational_below(&self, bits: u32) -> Rat {
        -self.neg().rational_above(bits)
    }

    /// Parse the rendering produced by `Display`.
    pub fn parse(s: &str) -> Option<QuadExt> {
        let s = s.trim();
        let Some(idx) = s.find("sqrt(") else {
            return crate::arith::parse_rat(s).map(QuadExt::rational);
        };
        let m: Int = s[idx + 5..].strip_suffix(')')?.parse().ok()?;
        let head = s[..idx].strip_suffix('*')?;
        // split "x + y" / "x - y" at the last binary operator
        let pos = head.rfind(" + ").or_else(|| head.rfind(" - "))?;
        let x = crate::arith::parse_rat(&head[..pos])?;
        let mut y = crate::arith::parse_rat(&head[pos + 3..])?;
        if &head[pos..pos + 3] == " - " {
            y = -y;
        }
        Some(QuadExt::new(x, y, m))
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QuadExt {
    /// Only meaningful within one field (or against rationals).
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).signum()
    }
}

impl From<Rat> for QuadExt {
    fn from(x: Rat) -> Self {
        QuadExt::rational(x)
    }
}

impl fmt::Display for QuadExt {
    /// "p/q + r/s*sqrt(m)"; rationals print bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&rat_str(&self.rat));
        }
        let sign = if self.irr.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", rat_str(&self.rat), sign, rat_str(&self.irr.abs()), self.radicand)
    }
}
