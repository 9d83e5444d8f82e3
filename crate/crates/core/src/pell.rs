//! x² - D y² = ±1 through the periodic continued fraction of √D.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_sqrt, isqrt, Int};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub x: Int,
    pub y: Int,
    pub sign: i8,
}

/// Partial quotients of √D for one full period, plus a0.
pub fn sqrt_cf(d: &Int) -> Option<(Int, Vec<Int>)> {
    if exact_sqrt(d).is_some() || d <= &Int::zero() {
        return None;
    }
    let a0 = isqrt(d);
    let (mut m, mut q, mut a) = (Int::zero(), Int::one(), a0.clone());
    let mut period = Vec::new();
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        period.push(a.clone());
        if a == &a0 * 2 {
            return Some((a0, period));
        }
    }
}

/// Fundamental solution, or None when D is a square or the negative
/// equation has no solution (even period).
pub fn pell_fundamental(d: &Int, sign: i8) -> Option<PellSolution> {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let (a0, period) = sqrt_cf(d)?;
    let odd = period.len() % 2 == 1;
    if sign == -1 && !odd {
        return None;
    }
    // the ±1 hits sit at the ends of periods
    let len = if sign == 1 && odd { 2 * period.len() } else { period.len() };
    let (mut h0, mut h1) = (Int::one(), a0.clone());
    let (mut k0, mut k1) = (Int::zero(), Int::one());
    for i in 0..len - 1 {
        let a = &period[i % period.len()];
        let h2 = a * &h1 + &h0;
        let k2 = a * &k1 + &k0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    let value = &h1 * &h1 - d * &k1 * &k1;
    debug_assert_eq!(value, Int::from(sign));
    Some(PellSolution { x: h1, y: k1, sign })
}

/// Ascending-y search kept as an independent oracle.
pub fn pell_brute(d: &Int, sign: i8, max_y: u64) -> Option<PellSolution> {
    for y in 1..=max_y {
        let y = Int::from(y);
        let x2 = d * &y * &y + Int::from(sign);
        if let Some(x) = exact_sqrt(&x2) {
            if !x.is_zero() {
                return Some(PellSolution { x, y, sign });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn known_solutions() {
        let s = pell_fundamental(&int(5), 1).unwrap();
        assert_eq!((s.x, s.y), (int(9), int(4)));
        let s = pell_fundamental(&int(13), 1).unwrap();
        assert_eq!((s.x, s.y), (int(649), int(180)));
        let s = pell_fundamental(&int(2), -1).unwrap();
        assert_eq!((s.x, s.y), (int(1), int(1)));
        assert_eq!(pell_fundamental(&int(4), 1), None);
        assert_eq!(pell_fundamental(&int(4), -1), None);
        assert_eq!(pell_fundamental(&int(3), -1), None);
    }

    #[test]
    fn large_fundamental_solution() {
        // D = 61 has the famous x = 1766319049
        let s = pell_fundamental(&int(61), 1).unwrap();
        assert_eq!(s.x, int(1766319049));
        assert_eq!(s.y, int(226153980));
    }

    #[test]
    fn cf_period_of_sqrt_7() {
        let (a0, p) = sqrt_cf(&int(7)).unwrap();
        assert_eq!(a0, int(2));
        assert_eq!(p, [1, 1, 1, 4].map(int).to_vec());
    }
}
