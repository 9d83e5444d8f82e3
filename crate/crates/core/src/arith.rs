//! Small exact-arithmetic helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

/// Parse "p", "p/q" or a finite decimal like "-2.25" exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().ok()?;
        let q: Int = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num: Int = if digits.is_empty() { Int::zero() } else { digits.parse().ok()? };
        if neg {
            num = -num;
        }
        let den = num_traits::pow(int(10), frac.len());
        return Some(Rat::new(num, den));
    }
    s.parse::<Int>().ok().map(Rat::from_integer)
}

/// Exact string form: "p" or "p/q".
pub fn rat_str(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(Rat::new(n, d))
}

/// Write n = f² · m with m squarefree (sign carried by m). Trial division,
/// which is fine for the radicands this crate meets.
pub fn squarefree_split(n: &Int) -> (Int, Int) {
    if n.is_zero() {
        return (Int::one(), Int::zero());
    }
    let mut m = n.abs();
    let mut f = Int::one();
    let mut p = int(2);
    let mut out = Int::one();
    while &p * &p <= m {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            f *= &p;
        }
        if (&m % &p).is_zero() {
            m /= &p;
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    if n.is_negative() {
        out = -out;
    }
    (f, out)
}

pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

pub fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Positive divisors in increasing order.
pub fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rat("-2.2"), Some(rat(-11, 5)));
        assert_eq!(parse_rat("0.1"), Some(rat(1, 10)));
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rat("-.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("1.2.3"), None);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(&int(20)), (int(2), int(5)));
        assert_eq!(squarefree_split(&int(72)), (int(6), int(2)));
        assert_eq!(squarefree_split(&int(-12)), (int(2), int(-3)));
        assert_eq!(squarefree_split(&int(1)), (int(1), int(1)));
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(&int(12)), [1, 2, 3, 4, 6, 12].map(int).to_vec());
        assert_eq!(divisors(&int(39)), [1, 3, 13, 39].map(int).to_vec());
    }
}
