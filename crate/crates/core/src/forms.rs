//! Indefinite binary quadratic forms ax² + bxy + cy²: reduction, cycles,
//! proper equivalence, automorphs and primitive representations.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, exact_sqrt, gcd_all, isqrt, Int};

/// 2×2 integer matrix, row-major.
pub type Mat2 = [[Int; 2]; 2];

pub fn mat_id() -> Mat2 {
    [[Int::one(), Int::zero()], [Int::zero(), Int::one()]]
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Inverse of a determinant-1 matrix.
pub fn mat_inv_sl2(x: &Mat2) -> Mat2 {
    [[x[1][1].clone(), -&x[0][1]], [-&x[1][0], x[0][0].clone()]]
}

fn mat_mod(x: &Mat2, m: &Int) -> Mat2 {
    let f = |v: &Int| v.mod_floor(m);
    [[f(&x[0][0]), f(&x[0][1])], [f(&x[1][0]), f(&x[1][1])]]
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl Form {
    pub fn new(a: Int, b: Int, c: Int) -> Form {
        Form { a, b, c }
    }

    pub fn disc(&self) -> Int {
        &self.b * &self.b - Int::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> Int {
        gcd_all([&self.a, &self.b, &self.c])
    }

    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// f∘U, i.e. (x, y) ↦ f(U·(x, y)).
    pub fn transform(&self, u: &Mat2) -> Form {
        let [[al, be], [ga, de]] = u;
        Form {
            a: self.eval(al, ga),
            b: Int::from(2) * &self.a * al * be + &self.b * (al * de + be * ga) + Int::from(2) * &self.c * ga * de,
            c: self.eval(be, de),
        }
    }

    /// |√Δ - 2|a|| < b < √Δ, for non-square Δ > 0.
    pub fn is_reduced(&self, root: &Int) -> bool {
        let a2 = Int::from(2) * self.a.abs();
        self.b.is_positive() && &self.b <= root && &a2 - &self.b <= *root && &a2 + &self.b > *root
    }

    /// One reduction step and its matrix ((0,-1),(1,t)).
    pub fn rho(&self, disc: &Int, root: &Int) -> (Form, Mat2) {
        let c = &self.c;
        let m = Int::from(2) * c.abs();
        let nb = -&self.b;
        let r = if c.abs() > *root {
            // representative of -b mod 2|c| in (-|c|, |c|]
            let mut r = nb.mod_floor(&m);
            if r > c.abs() {
                r -= &m;
            }
            r
        } else {
            // the one in (√Δ - 2|c|, √Δ)
            root - (root - &nb).mod_floor(&m)
        };
        let t = (&r + &self.b) / (Int::from(2) * c);
        let next = Form { a: c.clone(), b: r.clone(), c: (&r * &r - disc) / (Int::from(4) * c) };
        (next, [[Int::zero(), -Int::one()], [Int::one(), t]])
    }

    /// Reduced form and U with self∘U = reduced.
    pub fn reduce(&self) -> (Form, Mat2) {
        let disc = self.disc();
        let root = isqrt(&disc);
        let mut f = self.clone();
        let mut u = mat_id();
        while !f.is_reduced(&root) {
            let (g, m) = f.rho(&disc, &root);
            f = g;
            u = mat_mul(&u, &m);
        }
        (f, u)
    }

    /// The ρ-cycle of a reduced form: forms and cumulative matrices, with
    /// cycle[0] = (self, I). The last matrix closes the cycle.
    pub fn cycle(&self) -> (Vec<(Form, Mat2)>, Mat2) {
        let disc = self.disc();
        let root = isqrt(&disc);
        let mut out = vec![(self.clone(), mat_id())];
        let mut f = self.clone();
        let mut u = mat_id();
        loop {
            let (g, m) = f.rho(&disc, &root);
            u = mat_mul(&u, &m);
            if g == *self {
                return (out, u);
            }
            out.push((g.clone(), u.clone()));
            f = g;
        }
    }
}

/// Precomputed data for repeated equivalence tests against one form.
pub struct IndefiniteForm {
    pub form: Form,
    reduced_u: Mat2,
    cycle: Vec<(Form, Mat2)>,
    /// Generator of the proper automorphs of `form`.
    pub automorph: Mat2,
}

impl IndefiniteForm {
    /// Requires Δ > 0 non-square.
    pub fn new(form: Form) -> IndefiniteForm {
        let disc = form.disc();
        assert!(disc.is_positive() && exact_sqrt(&disc).is_none(), "needs non-square positive discriminant");
        let (red, u) = form.reduce();
        let (cycle, closing) = red.cycle();
        let automorph = mat_mul(&mat_mul(&u, &closing), &mat_inv_sl2(&u));
        IndefiniteForm { form, reduced_u: u, cycle, automorph }
    }

    /// U ∈ SL₂(ℤ) with form∘U = g, if properly equivalent.
    pub fn equivalence_to(&self, g: &Form) -> Option<Mat2> {
        let (g_red, ug) = g.reduce();
        let (_, cj) = self.cycle.iter().find(|(f, _)| *f == g_red)?;
        // form∘U_F∘C_j = g_red = g∘U_G
        Some(mat_mul(&mat_mul(&self.reduced_u, cj), &mat_inv_sl2(&ug)))
    }

    /// One coprime representation (P, Q) of m per Aut⁺-orbit.
    pub fn primitive_reps(&self, m: &Int) -> Vec<(Int, Int)> {
        assert!(!m.is_zero());
        let disc = self.form.disc();
        let four_m = Int::from(4) * m.abs();
        let two_m = Int::from(2) * m.abs();
        let mut out = Vec::new();
        let mut b = Int::zero();
        while b < two_m {
            if (&b * &b - &disc).mod_floor(&four_m).is_zero() {
                let g = Form::new(m.clone(), b.clone(), (&b * &b - &disc) / (Int::from(4) * m));
                if let Some(u) = self.equivalence_to(&g) {
                    out.push((u[0][0].clone(), u[1][0].clone()));
                }
            }
            b += 1;
        }
        out
    }

    /// Walk the automorph orbit of (p, q) modulo `modulus` and return the
    /// first member accepted by `pred`, if any. Finite because the
    /// automorph has finite order mod any modulus.
    pub fn orbit_find(
        &self,
        pq: &(Int, Int),
        modulus: &Int,
        pred: impl Fn(&Int, &Int) -> bool,
    ) -> Option<(Int, Int)> {
        let id = mat_mod(&mat_id(), modulus);
        let step = mat_mod(&self.automorph, modulus);
        let mut acc = mat_id();
        let mut acc_mod = id.clone();
        loop {
            let p = &acc[0][0] * &pq.0 + &acc[0][1] * &pq.1;
            let q = &acc[1][0] * &pq.0 + &acc[1][1] * &pq.1;
            if pred(&p, &q) {
                return Some((p, q));
            }
            acc = mat_mul(&acc, &self.automorph);
            acc_mod = mat_mod(&mat_mul(&acc_mod, &step), modulus);
            if acc_mod == id {
                return None;
            }
        }
    }
}

/// All coprime (P, Q) with f(P, Q) = m for a form with square discriminant
/// (f factors over ℚ), m ≠ 0. The solution set is finite.
pub fn split_form_reps(f: &Form, m: &Int) -> Vec<(Int, Int)> {
    assert!(!m.is_zero());
    let disc = f.disc();
    let s = exact_sqrt(&disc).expect("square discriminant");
    assert!(s.is_positive(), "degenerate form");
    let mut out = Vec::new();
    if f.a.is_zero() && f.c.is_zero() {
        // b·P·Q = m
        if f.b.is_zero() || !(m % &f.b).is_zero() {
            return out;
        }
        let k = m / &f.b;
        for d in divisors(&k) {
            let e = &k / &d;
            for (p, q) in [(d.clone(), e.clone()), (-&d, -&e)] {
                if p.gcd(&q).is_one() {
                    out.push((p, q));
                }
            }
        }
        return out;
    }
    let swap = f.a.is_zero();
    let g = if swap { Form::new(f.c.clone(), f.b.clone(), f.a.clone()) } else { f.clone() };
    // 4a·g(P,Q) = (2aP + (b - s)Q)(2aP + (b + s)Q)
    let target = Int::from(4) * &g.a * m;
    let two_a = Int::from(2) * &g.a;
    for d in divisors(&target) {
        for d1 in [d.clone(), -&d] {
            let d2 = &target / &d1;
            // L1 - L2 = -2sQ
            let diff = &d1 - &d2;
            let two_s = Int::from(2) * &s;
            if !(&diff % &two_s).is_zero() {
                continue;
            }
            let q = -(&diff / &two_s);
            let num = &d1 - (&g.b - &s) * &q;
            if !(&num % &two_a).is_zero() {
                continue;
            }
            let p = &num / &two_a;
            if p.gcd(&q).is_one() && g.eval(&p, &q) == *m {
                out.push(if swap { (q, p) } else { (p, q) });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(int(a), int(b), int(c))
    }

    #[test]
    fn reduction_and_cycle() {
        let x = f(1, 0, -5);
        let (red, u) = x.reduce();
        assert_eq!(x.transform(&u), red);
        let root = isqrt(&red.disc());
        assert!(red.is_reduced(&root));
        let (cyc, closing) = red.cycle();
        assert!(!cyc.is_empty());
        assert_eq!(red.transform(&closing), red);
    }

    #[test]
    fn automorph_is_pell() {
        // x² - 13y²: automorph built from (649, 180)
        let fx = IndefiniteForm::new(f(1, 0, -13));
        let m = &fx.automorph;
        assert_eq!(fx.form.transform(m), fx.form);
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert_eq!(det, int(1));
        assert!(m[0][0].abs() == int(649) || m[0][0].abs() == int(649 * 649 + 13 * 180 * 180));
    }

    #[test]
    fn representations_match_brute_force() {
        for (a, b, c) in [(1, 0, -5), (2, 2, -2), (-3, 4, 2), (1, 1, -1), (5, 3, -7)] {
            let form = f(a, b, c);
            let fx = IndefiniteForm::new(form.clone());
            for m in -12i64..=12 {
                if m == 0 {
                    continue;
                }
                let reps = fx.primitive_reps(&int(m));
                for (p, q) in &reps {
                    assert_eq!(form.eval(p, q), int(m));
                    assert!(p.gcd(q).is_one());
                }
                let brute = (-60i64..=60).any(|p| {
                    (-60i64..=60).any(|q| num_integer::gcd(p, q) == 1 && form.eval(&int(p), &int(q)) == int(m))
                });
                assert_eq!(!reps.is_empty(), brute, "form {form:?} value {m}");
            }
        }
    }

    #[test]
    fn split_forms() {
        // P·Q form and a product of distinct linear factors
        let reps = split_form_reps(&f(0, 2, 0), &int(6));
        assert!(reps.contains(&(int(1), int(3))) && reps.contains(&(int(-3), int(-1))));
        let form = f(1, 0, -4); // (P-2Q)(P+2Q)
        for m in [-5i64, -3, 1, 3, 5, 12] {
            let reps = split_form_reps(&form, &int(m));
            let mut brute = Vec::new();
            for p in -40i64..=40 {
                for q in -40i64..=40 {
                    if num_integer::gcd(p, q) == 1 && form.eval(&int(p), &int(q)) == int(m) {
                        brute.push((int(p), int(q)));
                    }
                }
            }
            assert_eq!(reps, brute, "value {m}");
        }
    }
}
