//! The rank-2 lattice v⊥ for a rank-1 Mukai vector v and the ray space of
//! its positive cone.
//!
//! Rays of P⁺(v⊥) are ordered by the projective chart
//! τ(x) = o·⟨y₀, x⟩ / ⟨c, x⟩, where c = ξ(0, 1) is an interior reference
//! class, y₀ a second basis direction and o = ±1 makes τ increase from the
//! boundary ray at s₋ to the one at s₊. Since ⟨c, x⟩ > 0 on the closed cone
//! minus 0, τ is a monotone bijection from the closed arc of rays onto a
//! closed interval [τ₋, τ₊] ⊂ ℝ.
//!
//! Walls are located through x = π(v₁) = v₁ - (⟨v,v₁⟩/⟨v²⟩)v, which is
//! η/⟨v²⟩ for the usual η = ⟨v²⟩v₁ - ⟨v,v₁⟩v. The wall of v₁ is the ray
//! orthogonal to x inside v⊥.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{floor_rat, ceil_rat, gcd_all, isqrt, lcm_denoms, rat_int, Int, Rat};
use crate::charge::{raw_pqr, Pqr};
use crate::error::{Error, Result};
use crate::lattice::pair3;
use crate::quadext::QuadExt;

pub type V3 = [Int; 3];
pub type Q3 = [Rat; 3];
pub type E3 = [QuadExt; 3];

/// Closed rectangle s ∈ [s_lo, s_hi], t² ∈ [t2_lo, t2_hi].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub s_lo: Rat,
    pub s_hi: Rat,
    pub t2_lo: Rat,
    pub t2_hi: Rat,
}

impl Window {
    pub fn new(s_lo: Rat, s_hi: Rat, t2_lo: Rat, t2_hi: Rat) -> Result<Window> {
        if s_lo >= s_hi {
            return Err(Error::InvalidWindow("need s_lo < s_hi".into()));
        }
        if !t2_lo.is_positive() || t2_lo > t2_hi {
            return Err(Error::InvalidWindow("need 0 < t²_lo ≤ t²_hi".into()));
        }
        Ok(Window { s_lo, s_hi, t2_lo, t2_hi })
    }

    /// From t-bounds rather than t²-bounds.
    pub fn from_t(s_lo: Rat, s_hi: Rat, t_lo: Rat, t_hi: Rat) -> Result<Window> {
        if !t_lo.is_positive() || t_lo > t_hi {
            return Err(Error::InvalidWindow("need 0 < t_lo ≤ t_hi".into()));
        }
        Window::new(s_lo, s_hi, &t_lo * &t_lo, &t_hi * &t_hi)
    }

    pub fn center(&self) -> (Rat, Rat) {
        let two = Rat::from_integer(2.into());
        ((&self.s_lo + &self.s_hi) / &two, (&self.t2_lo + &self.t2_hi) / two)
    }

    /// Exact (min, max) of P(s² + t²) + Qs + R over the rectangle.
    pub fn extremes(&self, p: &Rat, q: &Rat, r: &Rat) -> (Rat, Rat) {
        let g = |s: &Rat| p * s * s + q * s + r;
        let mut cands = vec![g(&self.s_lo), g(&self.s_hi)];
        if !p.is_zero() {
            let vertex = -q / (Rat::from_integer(2.into()) * p);
            if vertex > self.s_lo && vertex < self.s_hi {
                cands.push(g(&vertex));
            }
        }
        let smin = cands.iter().min().unwrap().clone();
        let smax = cands.iter().max().unwrap().clone();
        let (tmin, tmax) = if p.is_negative() {
            (p * &self.t2_hi, p * &self.t2_lo)
        } else {
            (p * &self.t2_lo, p * &self.t2_hi)
        };
        (smin + tmin, smax + tmax)
    }

    /// Whether the wall P(s²+t²) + Qs + R = 0 meets the closed rectangle.
    pub fn meets(&self, pqr: &Pqr) -> bool {
        let [p, q, r] = pqr.0.clone().map(Rat::from_integer);
        let (lo, hi) = self.extremes(&p, &q, &r);
        !lo.is_positive() && !hi.is_negative()
    }

    pub fn contains_window(&self, o: &Window) -> bool {
        self.s_lo <= o.s_lo && o.s_hi <= self.s_hi && self.t2_lo <= o.t2_lo && o.t2_hi <= self.t2_hi
    }
}

fn pq(n: &Int, x: &Q3, y: &Q3) -> Rat {
    rat_int(&(Int::from(2) * n)) * &x[1] * &y[1] - &x[0] * &y[2] - &x[2] * &y[0]
}

fn pe(n: &Int, x: &Q3, y: &E3) -> QuadExt {
    let two_n = rat_int(&(Int::from(2) * n));
    y[1].scale(&(&two_n * &x[1])).sub(&y[2].scale(&x[0])).sub(&y[0].scale(&x[2]))
}

pub(crate) fn to_q3(x: &V3) -> Q3 {
    x.clone().map(Rat::from_integer)
}

pub(crate) fn primitive_q3(x: &Q3) -> V3 {
    let l = lcm_denoms(x.iter());
    let y: V3 = x.clone().map(|c| (c * rat_int(&l)).to_integer());
    let g = gcd_all(y.iter());
    y.map(|c| c / &g)
}

/// Kernel basis of x ↦ λ·x on ℤ³ together with w, λ·w = gcd(λ).
pub(crate) fn kernel_basis(lambda: &V3) -> (V3, [V3; 2]) {
    // column operations on λ tracked in U until λU = (g, 0, 0)
    let mut l = lambda.clone();
    let mut u: [V3; 3] = [
        [Int::one(), Int::zero(), Int::zero()],
        [Int::zero(), Int::one(), Int::zero()],
        [Int::zero(), Int::zero(), Int::one()],
    ]; // u[j] = column j
    loop {
        let nz: Vec<usize> = (0..3).filter(|&i| !l[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| l[i].abs()).unwrap();
        for &j in &nz {
            if j == p {
                continue;
            }
            let q = l[j].div_floor(&l[p]);
            l[j] = &l[j] - &q * &l[p];
            let col_p = u[p].clone();
            for k in 0..3 {
                u[j][k] = &u[j][k] - &q * &col_p[k];
            }
        }
    }
    let p = (0..3).find(|&i| !l[i].is_zero()).expect("nonzero linear form");
    let mut w = u[p].clone();
    if l[p].is_negative() {
        w = w.map(|x| -x);
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != p).collect();
    (w, [u[others[0]].clone(), u[others[1]].clone()])
}

fn norm2(x: &V3) -> Int {
    x.iter().map(|c| c * c).sum()
}

/// Gauss-Lagrange reduction of a 2-dimensional lattice in ℤ³ (Euclidean).
fn lagrange(mut a: V3, mut b: V3) -> [V3; 2] {
    let dot = |x: &V3, y: &V3| -> Int { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    loop {
        if norm2(&a) > norm2(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        let na = norm2(&a);
        let mu = Rat::new(dot(&a, &b), na).round().to_integer();
        if mu.is_zero() {
            return [a, b];
        }
        for k in 0..3 {
            b[k] = &b[k] - &mu * &a[k];
        }
        if norm2(&b) >= norm2(&a) {
            return [a, b];
        }
    }
}

/// v⊥ and the chart on its ray space.
#[derive(Debug, Clone)]
pub struct PerpPlane {
    pub n: Int,
    pub v: V3,
    /// ⟨v²⟩
    pub vsq: Int,
    /// gcd of the values ⟨v, ·⟩ on ℤ³
    pub pairing_gcd: Int,
    /// ⟨v, w_unit⟩ = pairing_gcd
    w_unit: V3,
    pub basis: [V3; 2],
    pub gram: [[Int; 2]; 2],
    minor: (usize, usize, Int),
    /// ξ(s, t²) = (s² + t²)·xi_w + s·xi_u + xi_c
    pub xi_w: V3,
    pub xi_u: V3,
    pub xi_c: V3,
    /// interior reference c = ξ(0, 1)
    pub c: V3,
    y0: V3,
    orient: i8,
    inv_chart: [[Rat; 2]; 2],
    /// boundary rays in τ order, and whether they are rational
    pub bound_lo: E3,
    pub bound_hi: E3,
    pub tau_lo: QuadExt,
    pub tau_hi: QuadExt,
    pub rational: bool,
}

impl PerpPlane {
    pub fn new(n: &Int, v: &V3) -> Result<PerpPlane> {
        let vsq = pair3(n, v, v);
        if !vsq.is_positive() {
            return Err(Error::NonPositiveSquare(vsq.to_string()));
        }
        let [r, d, a] = v.clone();
        let two_n = Int::from(2) * n;
        let lambda: V3 = [-&a, &two_n * &d, -&r];
        let pairing_gcd = gcd_all(lambda.iter());
        let (w_unit, ker) = kernel_basis(&lambda);
        let basis = lagrange(ker[0].clone(), ker[1].clone());
        let gram = [
            [pair3(n, &basis[0], &basis[0]), pair3(n, &basis[0], &basis[1])],
            [pair3(n, &basis[1], &basis[0]), pair3(n, &basis[1], &basis[1])],
        ];
        let minor = {
            let (f1, f2) = (&basis[0], &basis[1]);
            [(0, 1), (0, 2), (1, 2)]
                .into_iter()
                .map(|(i, j)| (i, j, &f1[i] * &f2[j] - &f1[j] * &f2[i]))
                .find(|(_, _, m)| !m.is_zero())
                .expect("independent basis")
        };
        let xi_w = [Int::zero(), n * &r, n * &two_n * &d];
        let xi_u = [&two_n * &r, Int::zero(), -&two_n * &a];
        let xi_c = [-&two_n * &d, -a.clone(), Int::zero()];
        let c: V3 = std::array::from_fn(|i| &xi_w[i] + &xi_c[i]);
        let omega = |x: &V3, y: &V3| {
            // proportionality test in ℤ³
            (0..3).any(|i| (0..3).any(|j| &x[i] * &y[j] != &x[j] * &y[i]))
        };
        let y0 = if omega(&c, &basis[0]) { basis[0].clone() } else { basis[1].clone() };

        let mut plane = PerpPlane {
            n: n.clone(),
            v: v.clone(),
            vsq,
            pairing_gcd,
            w_unit,
            basis,
            gram,
            minor,
            xi_w,
            xi_u,
            xi_c,
            c,
            y0,
            orient: 1,
            inv_chart: [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]],
            bound_lo: std::array::from_fn(|_| QuadExt::rational(Rat::zero())),
            bound_hi: std::array::from_fn(|_| QuadExt::rational(Rat::zero())),
            tau_lo: QuadExt::rational(Rat::zero()),
            tau_hi: QuadExt::rational(Rat::zero()),
            rational: false,
        };
        let (lo, hi) = plane.boundary_vectors();
        plane.rational = lo.iter().chain(hi.iter()).all(QuadExt::is_rational);
        let t_lo = plane.tau_raw_e(&lo);
        let t_hi = plane.tau_raw_e(&hi);
        if t_lo > t_hi {
            plane.orient = -1;
        }
        plane.tau_lo = plane.tau_e(&lo);
        plane.tau_hi = plane.tau_e(&hi);
        plane.bound_lo = lo;
        plane.bound_hi = hi;
        // chart inverse: (⟨c,f_j⟩; o⟨y0,f_j⟩) · y = (1; τ)
        let m = [
            [plane.pair_int(&plane.c, &plane.basis[0]), plane.pair_int(&plane.c, &plane.basis[1])],
            [
                plane.pair_int(&plane.y0, &plane.basis[0]) * plane.orient,
                plane.pair_int(&plane.y0, &plane.basis[1]) * plane.orient,
            ],
        ];
        let det = rat_int(&(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]));
        plane.inv_chart = [
            [rat_int(&m[1][1]) / &det, rat_int(&-&m[0][1]) / &det],
            [rat_int(&-&m[1][0]) / &det, rat_int(&m[0][0]) / &det],
        ];
        Ok(plane)
    }

    pub fn pair_int(&self, x: &V3, y: &V3) -> Int {
        pair3(&self.n, x, y)
    }

    pub fn pair_q(&self, x: &Q3, y: &Q3) -> Rat {
        pq(&self.n, x, y)
    }

    pub fn pair_e(&self, x: &Q3, y: &E3) -> QuadExt {
        pe(&self.n, x, y)
    }

    pub fn square_e(&self, x: &E3) -> QuadExt {
        let two_n = QuadExt::rational(rat_int(&(Int::from(2) * &self.n)));
        two_n.mul(&x[1]).mul(&x[1]).sub(&x[0].mul(&x[2]).scale(&Rat::from_integer(2.into())))
    }

    /// ℓ = ⟨v²⟩/2
    pub fn ell(&self) -> Int {
        &self.vsq / 2
    }

    /// ξ(s, t²) in ℤ³ ⊗ ℚ.
    pub fn xi(&self, s: &Rat, t2: &Rat) -> Q3 {
        let m = s * s + t2;
        std::array::from_fn(|i| &m * rat_int(&self.xi_w[i]) + s * rat_int(&self.xi_u[i]) + rat_int(&self.xi_c[i]))
    }

    /// ξ(s, 0) for s in a quadratic field.
    pub fn xi_boundary(&self, s: &QuadExt) -> E3 {
        let s2 = s.mul(s);
        std::array::from_fn(|i| {
            s2.scale(&rat_int(&self.xi_w[i]))
                .add(&s.scale(&rat_int(&self.xi_u[i])))
                .add_rat(&rat_int(&self.xi_c[i]))
        })
    }

    /// s₋ < s₊ for r ≠ 0.
    pub fn s_pm(&self) -> Option<(QuadExt, QuadExt)> {
        let [r, d, _] = &self.v;
        if r.is_zero() {
            return None;
        }
        // d/r ± √(nℓ)/(n|r|)
        let root = QuadExt::sqrt_of(&rat_int(&(&self.n * self.ell())));
        let off = root.scale(&Rat::new(Int::one(), &self.n * r.abs()));
        let mid = QuadExt::rational(Rat::new(d.clone(), r.clone()));
        Some((mid.sub(&off), mid.add(&off)))
    }

    fn boundary_vectors(&self) -> (E3, E3) {
        if let Some((lo, hi)) = self.s_pm() {
            (self.xi_boundary(&lo), self.xi_boundary(&hi))
        } else {
            // r = 0: the finite limit point a/(2nd) and the point at infinity
            let [_, d, a] = &self.v;
            let s0 = Rat::new(a.clone(), Int::from(2) * &self.n * d);
            let lo = self.xi(&s0, &Rat::zero()).map(QuadExt::rational);
            let w = if d.is_positive() { self.xi_w.clone() } else { self.xi_w.clone().map(|x| -x) };
            let hi = to_q3(&w).map(QuadExt::rational);
            (lo, hi)
        }
    }

    fn tau_raw_e(&self, x: &E3) -> QuadExt {
        self.pair_e(&to_q3(&self.y0), x).div(&self.pair_e(&to_q3(&self.c), x))
    }

    pub fn tau_e(&self, x: &E3) -> QuadExt {
        self.tau_raw_e(x).scale(&Rat::from_integer(self.orient.into()))
    }

    /// Chart value of a class in the closed positive cone.
    pub fn tau(&self, x: &Q3) -> Rat {
        let num = self.pair_q(&to_q3(&self.y0), x);
        let den = self.pair_q(&to_q3(&self.c), x);
        num / den * Rat::from_integer(self.orient.into())
    }

    pub fn tau_int(&self, x: &V3) -> Rat {
        self.tau(&to_q3(x))
    }

    /// The primitive integral class on the ray with chart value τ.
    pub fn ray_at(&self, tau: &Rat) -> V3 {
        let y1 = &self.inv_chart[0][0] + &self.inv_chart[0][1] * tau;
        let y2 = &self.inv_chart[1][0] + &self.inv_chart[1][1] * tau;
        let x: Q3 = std::array::from_fn(|i| &y1 * rat_int(&self.basis[0][i]) + &y2 * rat_int(&self.basis[1][i]));
        primitive_q3(&x)
    }

    /// Whether a rational class lies in the open positive cone.
    pub fn in_positive_cone(&self, x: &Q3) -> bool {
        self.pair_q(x, x).is_positive() && self.pair_q(&to_q3(&self.c), x).is_positive()
    }

    pub fn coords(&self, x: &Q3) -> [Rat; 2] {
        let (i, j, m) = &self.minor;
        let (f1, f2) = (&self.basis[0], &self.basis[1]);
        let m = rat_int(m);
        let y1 = (&x[*i] * rat_int(&f2[*j]) - &x[*j] * rat_int(&f2[*i])) / &m;
        let y2 = (rat_int(&f1[*i]) * &x[*j] - rat_int(&f1[*j]) * &x[*i]) / &m;
        [y1, y2]
    }

    pub fn embed(&self, e: &[Int; 2]) -> V3 {
        std::array::from_fn(|i| &e[0] * &self.basis[0][i] + &e[1] * &self.basis[1][i])
    }

    /// The ray of P⁺ orthogonal to a negative class x ∈ v⊥ ⊗ ℚ, primitive.
    pub fn orthogonal_ray(&self, x: &Q3) -> V3 {
        let e = self.coords(x);
        let w0 = rat_int(&self.gram[0][0]) * &e[0] + rat_int(&self.gram[0][1]) * &e[1];
        let w1 = rat_int(&self.gram[1][0]) * &e[0] + rat_int(&self.gram[1][1]) * &e[1];
        let y: Q3 = std::array::from_fn(|i| -&w1 * rat_int(&self.basis[0][i]) + &w0 * rat_int(&self.basis[1][i]));
        let y = primitive_q3(&y);
        if self.pair_int(&self.c, &y).is_negative() {
            y.map(|c| -c)
        } else {
            y
        }
    }

    /// π(v₁) = v₁ - (⟨v,v₁⟩/⟨v²⟩) v.
    pub fn project(&self, v1: &V3) -> Q3 {
        let k = Rat::new(self.pair_int(&self.v, v1), self.vsq.clone());
        std::array::from_fn(|i| rat_int(&v1[i]) - &k * rat_int(&self.v[i]))
    }

    /// Chart value of the wall ray of a class v₁ ∉ ℚv with a nonempty wall.
    pub fn wall_tau(&self, v1: &V3) -> Rat {
        self.tau_int(&self.orthogonal_ray(&self.project(v1)))
    }

    /// A rational strictly inside (τ₋, τ₊), close to the lower end.
    pub fn inner_lo(&self, bits: u32) -> Rat {
        if self.rational {
            return self.tau_lo.as_rational().unwrap().clone();
        }
        self.tau_lo.rational_above(bits)
    }

    pub fn inner_hi(&self, bits: u32) -> Rat {
        if self.rational {
            return self.tau_hi.as_rational().unwrap().clone();
        }
        self.tau_hi.rational_below(bits)
    }

    /// Coefficients (P, Q, R) of ⟨ξ(s,t²), y⟩ = P(s²+t²) + Qs + R.
    fn xi_pairing_coeffs(&self, y: &Q3) -> (Rat, Rat, Rat) {
        (self.pair_q(&to_q3(&self.xi_w), y), self.pair_q(&to_q3(&self.xi_u), y), self.pair_q(&to_q3(&self.xi_c), y))
    }

    /// Whether τ(ξ(p)) ≥ τ on the whole window (or ≤ when `upper`).
    fn window_side(&self, win: &Window, tau: &Rat, upper: bool) -> bool {
        // τ(ξ) ≥ τ ⇔ ⟨ξ, o·y₀ - τ·c⟩ ≥ 0
        let o = Rat::from_integer(self.orient.into());
        let y: Q3 = std::array::from_fn(|i| &o * rat_int(&self.y0[i]) - tau * rat_int(&self.c[i]));
        let (p, q, r) = self.xi_pairing_coeffs(&y);
        let (lo, hi) = win.extremes(&p, &q, &r);
        if upper {
            !hi.is_positive()
        } else {
            !lo.is_negative()
        }
    }

    /// Rationals τ₁ ≤ τ₂ with Ξ(window) ⊆ [τ₁, τ₂] ⊂ (τ₋, τ₊).
    pub fn window_interval(&self, win: &Window) -> (Rat, Rat) {
        let (sc, tc) = win.center();
        let mid = self.tau(&self.xi(&sc, &tc));
        let mut lo = None;
        let mut hi = None;
        let mut bits = 4;
        while lo.is_none() || hi.is_none() {
            if lo.is_none() {
                let cand = self.tau_lo.rational_above(bits);
                if self.window_side(win, &cand, false) {
                    lo = Some(cand);
                }
            }
            if hi.is_none() {
                let cand = self.tau_hi.rational_below(bits);
                if self.window_side(win, &cand, true) {
                    hi = Some(cand);
                }
            }
            bits *= 2;
        }
        let (mut lo, mut hi) = (lo.unwrap(), hi.unwrap());
        // tighten by bisection toward the window
        let (mut a, mut b) = (lo.clone(), mid.clone());
        for _ in 0..24 {
            let m = (&a + &b) / Rat::from_integer(2.into());
            if self.window_side(win, &m, false) {
                a = m;
            } else {
                b = m;
            }
        }
        lo = a;
        let (mut a, mut b) = (mid, hi.clone());
        for _ in 0..24 {
            let m = (&a + &b) / Rat::from_integer(2.into());
            if self.window_side(win, &m, true) {
                b = m;
            } else {
                a = m;
            }
        }
        hi = b;
        (lo, hi)
    }

    /// Visit every v₁ ∈ ℤ³ with ⟨v, v₁⟩ = k, π(v₁)² ∈ [-N, 0) and wall ray
    /// with chart value in [τ₁, τ₂]. Requires τ₁ < τ₂ within [τ₋, τ₊], with
    /// τᵢ rational; endpoints may be the rational boundary values.
    /// Returns false if the lattice-point budget ran out first.
    pub fn visit_slice(
        &self,
        k: &Int,
        tau1: &Rat,
        tau2: &Rat,
        neg_bound: &Rat,
        budget: &mut Option<u64>,
        visit: &mut dyn FnMut(&V3, &Rat),
    ) -> bool {
        let pieces = self.pieces(tau1, tau2, neg_bound);
        self.visit_pieces(k, &pieces, neg_bound, budget, visit)
    }

    /// Cut [τ₁, τ₂] so that consecutive rays are at bounded hyperbolic
    /// distance. The lattice box of a piece grows like the exponential of
    /// that distance, so long intervals are much cheaper in pieces. Pieces
    /// touching an isotropic end are left whole. `neg_bound` only tunes the
    /// basis reduction.
    fn pieces(&self, tau1: &Rat, tau2: &Rat, neg_bound: &Rat) -> Vec<Piece> {
        assert!(tau1 < tau2, "degenerate chart interval");
        let mut out = Vec::new();
        let mut stack = vec![tau2.clone()];
        let mut a = tau1.clone();
        let mut ra = self.ray_at(&a);
        while let Some(b) = stack.pop() {
            let rb = self.ray_at(&b);
            let (p11, p22, p12) = (self.pair_int(&ra, &ra), self.pair_int(&rb, &rb), self.pair_int(&ra, &rb));
            // cosh² of the distance is p12²/(p11·p22)
            let long = p11.is_positive() && p22.is_positive() && &p12 * &p12 > Int::from(256) * &p11 * &p22;
            if long && out.len() + stack.len() < MAX_PIECES {
                let quarter = (&b - &a) / Rat::from_integer(4.into());
                let m = simplest_between(&(&a + &quarter), &(&b - &quarter));
                stack.push(b);
                stack.push(m);
                continue;
            }
            // a class whose ray sits on a cut belongs to the piece on its left
            let left = (!out.is_empty()).then(|| ra.clone());
            out.push(self.piece(left, [ra, rb.clone()], neg_bound));
            a = b;
            ra = rb;
        }
        out
    }

    fn piece(&self, left: Option<V3>, rho: [V3; 2], neg_bound: &Rat) -> Piece {
        let rc = [self.coords(&to_q3(&rho[0])), self.coords(&to_q3(&rho[1]))].map(|c| c.map(|x| x.to_integer()));
        let g = &self.gram;
        // M = rows ρᵢᵀ G
        let m: [[Int; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|j| &rc[i][0] * &g[0][j] + &rc[i][1] * &g[1][j])
        });
        let p11 = self.pair_int(&rho[0], &rho[0]);
        let p12 = self.pair_int(&rho[0], &rho[1]);
        let p22 = self.pair_int(&rho[1], &rho[1]);
        let dabs = rat_int(&(&p12 * &p12 - &p11 * &p22));
        debug_assert!(dabs.is_positive());
        let mut pc = Piece { left, m, g: g.clone(), bm: [[Int::one(), Int::zero()], [Int::zero(), Int::one()]], p11, p12, p22, dabs };
        // work in a basis of ℤ² reduced for the box |uᵢ| ≤ Uᵢ, so the rows
        // are few even for long thin pieces
        let (u1, u2) = pc.ubounds(neg_bound);
        let bm = reduced_basis(&pc.m, [&u1, &u2]);
        let m = &pc.m;
        pc.m = std::array::from_fn(|i| std::array::from_fn(|j| &m[i][0] * &bm[0][j] + &m[i][1] * &bm[1][j]));
        let gb: [[Int; 2]; 2] =
            std::array::from_fn(|i| std::array::from_fn(|j| &g[i][0] * &bm[0][j] + &g[i][1] * &bm[1][j]));
        pc.g = std::array::from_fn(|i| std::array::from_fn(|j| &bm[0][i] * &gb[0][j] + &bm[1][i] * &gb[1][j]));
        pc.bm = bm;
        pc
    }

    fn visit_pieces(
        &self,
        k: &Int,
        pieces: &[Piece],
        neg_bound: &Rat,
        budget: &mut Option<u64>,
        visit: &mut dyn FnMut(&V3, &Rat),
    ) -> bool {
        if !(k % &self.pairing_gcd).is_zero() {
            return true;
        }
        // base point: w with ⟨v,w⟩ = k
        let base: V3 = self.w_unit.clone().map(|x| x * (k / &self.pairing_gcd));
        let o0 = self.coords(&self.project(&base));
        for pc in pieces {
            let ok = self.visit_piece(pc, &base, &o0, neg_bound, budget, &mut |v1, sq| {
                if pc.left.as_ref().is_none_or(|x| !self.pair_int(x, v1).is_zero()) {
                    visit(v1, sq);
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    fn visit_piece(
        &self,
        pc: &Piece,
        base: &V3,
        o0: &[Rat; 2],
        neg_bound: &Rat,
        budget: &mut Option<u64>,
        visit: &mut dyn FnMut(&V3, &Rat),
    ) -> bool {
        let (u1max, u2max) = pc.ubounds(neg_bound);
        let (m, g, bm) = (&pc.m, &pc.g, &pc.bm);
        let embed = |f: &[Int; 2]| -> V3 {
            self.embed(&[&bm[0][0] * &f[0] + &bm[0][1] * &f[1], &bm[1][0] * &f[0] + &bm[1][1] * &f[1]])
        };
        // o = B⁻¹o₀ (B unimodular), scaled by L
        let bd = rat_int(&(&bm[0][0] * &bm[1][1] - &bm[0][1] * &bm[1][0]));
        let o = [
            (rat_int(&bm[1][1]) * &o0[0] - rat_int(&bm[0][1]) * &o0[1]) / &bd,
            (rat_int(&bm[0][0]) * &o0[1] - rat_int(&bm[1][0]) * &o0[0]) / &bd,
        ];
        let l = lcm_denoms(o.iter());
        let oi: [Int; 2] = o.clone().map(|x| (x * rat_int(&l)).to_integer());

        // e = M⁻¹u - o
        let det = rat_int(&(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]));
        let span1 = (rat_int(&m[1][1]).abs() * rat_int(&u1max) + rat_int(&m[0][1]).abs() * rat_int(&u2max)) / det.abs();
        let e1_lo = ceil_rat(&(-&span1 - &o[0]));
        let e1_hi = floor_rat(&(&span1 - &o[0]));

        let nb_scaled = neg_bound * rat_int(&(&l * &l));
        let lq = rat_int(&l);
        let mut e1 = e1_lo;
        while e1 <= e1_hi {
            let range = match row_bounds_i128(m, [&u1max, &u2max], &oi, &l, &e1) {
                Some(r) => r.map(|(a, b)| (Int::from(a), Int::from(b))),
                None => row_bounds(m, [&u1max, &u2max], &o, &e1),
            };
            if let Some((e2_lo, e2_hi)) = range {
                if let Some(b) = budget.as_mut() {
                    if e2_hi >= e2_lo {
                        let cnt: Int = &e2_hi - &e2_lo + 1;
                        let cnt: u64 = cnt.try_into().unwrap_or(u64::MAX);
                        if cnt > *b {
                            return false;
                        }
                        *b -= cnt;
                    }
                }
                let mut emit = |e2: &Int, sq: Rat| {
                    let v1: V3 = {
                        let e = embed(&[e1.clone(), e2.clone()]);
                        std::array::from_fn(|i| &base[i] + &e[i])
                    };
                    visit(&v1, &(sq / (&lq * &lq)));
                };
                let fast = row_i128(m, g, &oi, &l, &e1, &e2_lo, &e2_hi, &nb_scaled);
                if let Some(hits) = fast {
                    for (e2, sq) in hits {
                        emit(&Int::from(e2), Rat::from_integer(Int::from(sq)));
                    }
                } else {
                    let mut e2 = e2_lo;
                    while e2 <= e2_hi {
                        // scaled coordinates X = L·(o + e)
                        let xs = [&oi[0] + &l * &e1, &oi[1] + &l * &e2];
                        let u1 = &m[0][0] * &xs[0] + &m[0][1] * &xs[1];
                        let u2 = &m[1][0] * &xs[0] + &m[1][1] * &xs[1];
                        if u1.signum() * u2.signum() <= Int::zero() {
                            let sq = &xs[0] * &xs[0] * &g[0][0]
                                + Int::from(2) * &xs[0] * &xs[1] * &g[0][1]
                                + &xs[1] * &xs[1] * &g[1][1];
                            let sq = rat_int(&sq);
                            if sq.is_negative() && -&sq <= nb_scaled {
                                emit(&e2, sq);
                            }
                        }
                        e2 += 1;
                    }
                }
            }
            e1 += 1;
        }
        true
    }

    /// Every wall class v₁ (eq. wall-cond with nonempty wall) whose ray lies
    /// in [τ₁, τ₂]. Budget as in `visit_slice`.
    pub fn wall_classes_in(
        &self,
        tau1: &Rat,
        tau2: &Rat,
        budget: &mut Option<u64>,
        visit: &mut dyn FnMut(&V3, &Pqr),
    ) -> bool {
        let vsq = self.vsq.clone();
        if self.pairing_gcd >= vsq {
            return true;
        }
        let pieces = self.pieces(tau1, tau2, &(rat_int(&vsq) / Rat::from_integer(4.into())));
        let mut k = self.pairing_gcd.clone();
        while k < vsq {
            // ⟨v₁²⟩ ≥ 0 and ⟨(v-v₁)²⟩ ≥ 0 give π(v₁)² ≥ -min(k, V-k)²/V
            let kk = std::cmp::min(k.clone(), &vsq - &k);
            let nb = Rat::new(&kk * &kk, vsq.clone());
            let ok = self.visit_pieces(&k, &pieces, &nb, budget, &mut |v1, _| {
                let s1 = self.pair_int(v1, v1);
                let w: V3 = std::array::from_fn(|i| &self.v[i] - &v1[i]);
                if s1.is_negative() || self.pair_int(&w, &w).is_negative() {
                    return;
                }
                if let Some(pqr) = Pqr::normalized(raw_pqr(&self.n, &self.v, v1)) {
                    visit(v1, &pqr);
                }
            });
            if !ok {
                return false;
            }
            k += &self.pairing_gcd;
        }
        true
    }

    /// Compare two chart values given as rationals or boundary values.
    pub fn cmp_tau(a: &QuadExt, b: &QuadExt) -> Ordering {
        a.cmp(b)
    }
}

/// A stretch of the chart between two rays, with the lattice coordinates
/// of v⊥ changed to a basis suited to it.
struct Piece {
    /// ray at the left cut, for all pieces but the first
    left: Option<V3>,
    /// rows ρᵢᵀ G in the reduced basis
    m: [[Int; 2]; 2],
    /// Gram matrix of v⊥ in the reduced basis
    g: [[Int; 2]; 2],
    /// reduced basis in the coordinates of `PerpPlane::basis`, as columns
    bm: [[Int; 2]; 2],
    p11: Int,
    p12: Int,
    p22: Int,
    dabs: Rat,
}

impl Piece {
    /// Bounds on |⟨ρ₁, x⟩| and |⟨ρ₂, x⟩| for x in the cone with x² ≥ -N.
    fn ubounds(&self, neg_bound: &Rat) -> (Int, Int) {
        let ubound = |pjj: &Int| -> Int {
            let nd = neg_bound * &self.dabs;
            if pjj.is_positive() {
                isqrt(&floor_rat(&(&nd / rat_int(pjj))))
            } else {
                floor_rat(&(nd / rat_int(&(Int::from(2) * &self.p12))))
            }
        };
        (ubound(&self.p22), ubound(&self.p11))
    }
}

/// A unimodular B whose columns are a Lagrange-reduced basis of ℤ² for the
/// positive form Σᵢ (Mᵢ·x)²/(Uᵢ+1)².
fn reduced_basis(m: &[[Int; 2]; 2], umax: [&Int; 2]) -> [[Int; 2]; 2] {
    let w: [Rat; 2] = umax.map(|u| {
        let d = rat_int(&(u + 1));
        (&d * &d).recip()
    });
    let form = |x: &[Int; 2], y: &[Int; 2]| -> Rat {
        (0..2)
            .map(|i| {
                let a = &m[i][0] * &x[0] + &m[i][1] * &x[1];
                let b = &m[i][0] * &y[0] + &m[i][1] * &y[1];
                rat_int(&(a * b)) * &w[i]
            })
            .sum()
    };
    let (mut b1, mut b2) = ([Int::one(), Int::zero()], [Int::zero(), Int::one()]);
    if form(&b1, &b1) > form(&b2, &b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let q = (form(&b1, &b2) / form(&b1, &b1)).round().to_integer();
        if q.is_zero() {
            break;
        }
        b2 = [&b2[0] - &q * &b1[0], &b2[1] - &q * &b1[1]];
        if form(&b2, &b2) < form(&b1, &b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            break;
        }
    }
    [[b1[0].clone(), b2[0].clone()], [b1[1].clone(), b2[1].clone()]]
}

const MAX_PIECES: usize = 1 << 12;

/// The rational of least denominator in [lo, hi].
fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    let c = ceil_rat(lo);
    if rat_int(&c) <= *hi {
        // the integer nearest zero
        let f = floor_rat(hi);
        return rat_int(&if c.is_positive() { c } else if f.is_negative() { f } else { Int::zero() });
    }
    let f = floor_rat(lo);
    let fr = rat_int(&f);
    let inner = simplest_between(&(hi - &fr).recip(), &(lo - &fr).recip());
    fr + inner.recip()
}

/// Range of e₂ with |u₁| ≤ U₁ and |u₂| ≤ U₂ on the row e₁, where
/// u_i = M_i1 (o₁ + e₁) + M_i2 (o₂ + e₂). None if the row is empty.
fn row_bounds(m: &[[Int; 2]; 2], umax: [&Int; 2], o: &[Rat; 2], e1: &Int) -> Option<(Int, Int)> {
    let x1 = &o[0] + rat_int(e1);
    let mut lo2: Option<Rat> = None;
    let mut hi2: Option<Rat> = None;
    for (row, umax) in m.iter().zip(umax) {
        let fixed = rat_int(&row[0]) * &x1;
        let um = rat_int(umax);
        if row[1].is_zero() {
            if fixed.abs() > um {
                return None;
            }
            continue;
        }
        let c = rat_int(&row[1]);
        let (a, b) = ((-&um - &fixed) / &c - &o[1], (&um - &fixed) / &c - &o[1]);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo2 = Some(match lo2 {
            Some(x) if x > a => x,
            _ => a,
        });
        hi2 = Some(match hi2 {
            Some(x) if x < b => x,
            _ => b,
        });
    }
    let (lo, hi) = (ceil_rat(&lo2?), floor_rat(&hi2?));
    Some((lo, hi))
}

/// `row_bounds` in the scaled coordinates X = L·(o + e), in machine
/// integers. The outer None means something overflowed.
fn row_bounds_i128(
    m: &[[Int; 2]; 2],
    umax: [&Int; 2],
    oi: &[Int; 2],
    l: &Int,
    e1: &Int,
) -> Option<Option<(i128, i128)>> {
    let c = |x: &Int| -> Option<i128> { x.try_into().ok() };
    let (l, o1) = (c(l)?, c(&oi[1])?);
    let x0 = c(&oi[0])?.checked_add(l.checked_mul(c(e1)?)?)?;
    let mut lo = i128::MIN;
    let mut hi = i128::MAX;
    for (row, umax) in m.iter().zip(umax) {
        let (m0, m1) = (c(&row[0])?, c(&row[1])?);
        let ul = c(umax)?.checked_mul(l)?;
        let fixed = m0.checked_mul(x0)?;
        if m1 == 0 {
            if fixed.checked_abs()? > ul {
                return Some(None);
            }
            continue;
        }
        // |fixed + m1·(o1 + l·e2)| ≤ ul
        let shift = fixed.checked_add(o1.checked_mul(m1)?)?;
        let (mut na, mut nb, mut den) = ((-ul).checked_sub(shift)?, ul.checked_sub(shift)?, m1.checked_mul(l)?);
        if den < 0 {
            (na, nb, den) = (nb.checked_neg()?, na.checked_neg()?, den.checked_neg()?);
        }
        lo = lo.max(-(na.checked_neg()?.div_euclid(den)));
        hi = hi.min(nb.div_euclid(den));
    }
    if lo == i128::MIN || hi == i128::MAX {
        return None;
    }
    Some(if lo <= hi { Some((lo, hi)) } else { None })
}

/// The inner row of `visit_slice` in machine integers: the e₂ in range with
/// u₁u₂ ≤ 0 and -N ≤ q(X) < 0, with q(X) attached. None if anything overflows.
#[allow(clippy::too_many_arguments)]
fn row_i128(
    m: &[[Int; 2]; 2],
    g: &[[Int; 2]; 2],
    oi: &[Int; 2],
    l: &Int,
    e1: &Int,
    e2_lo: &Int,
    e2_hi: &Int,
    nb_scaled: &Rat,
) -> Option<Vec<(i128, i128)>> {
    let c = |x: &Int| -> Option<i128> { x.try_into().ok() };
    let m = [[c(&m[0][0])?, c(&m[0][1])?], [c(&m[1][0])?, c(&m[1][1])?]];
    let g = [[c(&g[0][0])?, c(&g[0][1])?], [c(&g[1][0])?, c(&g[1][1])?]];
    let (o0, o1, l, e1, lo, hi) = (c(&oi[0])?, c(&oi[1])?, c(l)?, c(e1)?, c(e2_lo)?, c(e2_hi)?);
    // -q ≤ nb ⇔ -q ≤ ⌊nb⌋ for integral q
    let nb = c(&floor_rat(nb_scaled))?;
    let x0 = o0.checked_add(l.checked_mul(e1)?)?;
    let mul = |a: i128, b: i128| a.checked_mul(b);
    // everything below is affine or quadratic in e₂, so checking the two
    // ends of the row bounds every intermediate
    for e2 in [lo, hi] {
        let x1 = o1.checked_add(l.checked_mul(e2)?)?;
        for row in &m {
            mul(row[0], x0)?.checked_add(mul(row[1], x1)?)?;
        }
        let a = mul(mul(x0, x0)?, g[0][0])?;
        let b = mul(mul(mul(2, x0)?, x1)?, g[0][1])?;
        let d = mul(mul(x1, x1)?, g[1][1])?;
        let sum = a.checked_abs()?.checked_add(b.checked_abs()?)?.checked_add(d.checked_abs()?)?;
        sum.checked_mul(4)?;
    }
    let mut out = Vec::new();
    let mut e2 = lo;
    while e2 <= hi {
        let x1 = o1 + l * e2;
        let u1 = m[0][0] * x0 + m[0][1] * x1;
        let u2 = m[1][0] * x0 + m[1][1] * x1;
        if u1.signum() * u2.signum() <= 0 {
            let sq = x0 * x0 * g[0][0] + 2 * x0 * x1 * g[0][1] + x1 * x1 * g[1][1];
            if sq < 0 && -sq <= nb {
                out.push((e2, sq));
            }
        }
        e2 += 1;
    }
    Some(out)
}
