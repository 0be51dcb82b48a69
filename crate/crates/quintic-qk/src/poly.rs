//! Dense univariate polynomials over the rationals.
//!
//! Invariant: the coefficient vector never has a trailing zero, so the zero
//! polynomial is the empty vector and `degree()` is `coeffs.len() - 1`.
//!
//! Multiplication and gcd clear denominators and work over the integers:
//! products of integer polynomials skip per-coefficient reduction entirely,
//! and the gcd uses the subresultant pseudo-remainder sequence, which keeps
//! intermediate coefficient growth polynomial instead of exponential.

use crate::number::{Int, Rat};
use num::{BigInt, Integer, One, Signed, Zero};
use std::fmt;
use std::sync::OnceLock;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// Build from low-to-high coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| crate::number::rat_int(c)).collect())
    }

    /// `c * q^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Poly::monomial(Rat::one(), k)
    }

    /// `1 - q^k` for `k >= 1`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[0] = Rat::one();
        coeffs[k] = -Rat::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Multiplicity of the root q = 0, i.e. the index of the lowest nonzero
    /// coefficient. Zero polynomial reports 0.
    pub fn q_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_one(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |a, c| a + c)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `q^k`; panics if the valuation is smaller.
    pub fn shift_down(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        assert!(
            self.q_valuation() >= k,
            "shift_down({k}) of a polynomial with q-valuation {}",
            self.q_valuation()
        );
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Keep only coefficients of `q^0 .. q^{n-1}`.
    pub fn truncated(&self, n: usize) -> Poly {
        if self.coeffs.len() <= n {
            self.clone()
        } else {
            Poly::from_coeffs(self.coeffs[..n].to_vec())
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Clear denominators; integer convolution avoids a gcd per term.
        let (a, da) = integerize(&self.coeffs);
        let (b, db) = integerize(&rhs.coeffs);
        let mut conv = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        let den = da * db;
        let coeffs = if den.is_one() {
            conv.into_iter().map(Rat::from_integer).collect()
        } else {
            conv.into_iter().map(|c| Rat::new(c, den.clone())).collect()
        };
        Poly::from_coeffs(coeffs)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division: `self = quot * div + rem` with `deg rem < deg div`.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.degree() < div.degree() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len();
        let lead = div.coeffs.last().unwrap();
        let mut quot = vec![Rat::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for i in 0..dd {
                let t = &div.coeffs[i] * &c;
                rem[k + i] -= t;
            }
            quot[k] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Division known to be exact; panics if a remainder appears.
    pub fn exact_div(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div has remainder {r}");
        q
    }

    /// Division if it is exact.
    pub fn try_exact_div(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Scale to leading coefficient 1. Panics on the zero polynomial.
    pub fn monic(&self) -> Poly {
        let lead = self.leading().expect("monic of zero polynomial");
        if lead.is_one() {
            self.clone()
        } else {
            let inv = Rat::one() / lead;
            self.scale(&inv)
        }
    }

    /// Monic gcd via the subresultant pseudo-remainder sequence over Z.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return if b.is_zero() { Poly::zero() } else { b.monic() };
        }
        if b.is_zero() {
            return a.monic();
        }
        let (ai, _) = integerize(&a.coeffs);
        let (bi, _) = integerize(&b.coeffs);
        let g = int_gcd_subresultant(int_primitive(ai), int_primitive(bi));
        Poly::from_coeffs(g.into_iter().map(Rat::from_integer).collect()).monic()
    }

    /// Substitute `q -> q^k`.
    pub fn substitute_q_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Power-series inverse mod `q^n`; the constant term must be nonzero.
    pub fn inv_mod_q_pow(&self, n: usize) -> Poly {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "inv_mod_q_pow: constant term is zero");
        let inv0 = Rat::one() / c0;
        let mut out = vec![Rat::zero(); n];
        if n == 0 {
            return Poly::zero();
        }
        out[0] = inv0.clone();
        for m in 1..n {
            let mut acc = Rat::zero();
            let kmax = m.min(self.coeffs.len() - 1);
            for k in 1..=kmax {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &out[m - k];
            }
            out[m] = -(acc * &inv0);
        }
        Poly::from_coeffs(out)
    }

    /// The lcm of coefficient denominators (the factor that clears self to
    /// an integer polynomial).
    pub fn denominator_lcm(&self) -> Int {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = crate::number::rat_abs(c);
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", crate::number::rat_to_string(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Clear denominators: returns (integer coefficients, common denominator).
fn integerize(coeffs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    let out = coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    (out, l)
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let c = int_content(&v);
    if !c.is_one() {
        for x in v.iter_mut() {
            *x /= &c;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    v
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b. The full power
/// of lc(b) is applied even when a reduction step drops the degree by more
/// than one; the subresultant coefficient bookkeeping depends on it.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut remaining = (a.len() - b.len() + 1) as u32;
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        remaining -= 1;
        let shift = dr - db;
        for i in 0..=db {
            let t = &b[i] * &lead;
            r[shift + i] -= t;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    if remaining > 0 && !r.is_empty() {
        let f = lb.pow(remaining);
        for x in r.iter_mut() {
            *x *= &f;
        }
    }
    r
}

/// Subresultant PRS gcd on primitive integer polynomials; returns the
/// primitive gcd.
fn int_gcd_subresultant(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = int_pseudo_rem(&a, &b);
        if r.is_empty() {
            return int_primitive(b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        a = b;
        let divisor = &g * h.pow(delta);
        b = r
            .into_iter()
            .map(|c| {
                debug_assert!((&c % &divisor).is_zero(), "inexact subresultant step");
                c / &divisor
            })
            .collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let gp = g.pow(delta);
            let hp = h.pow(delta - 1);
            debug_assert!((&gp % &hp).is_zero(), "inexact subresultant h update");
            gp / hp
        };
    }
}

/// The r-th cyclotomic polynomial, computed as
/// `prod_{d | r} (q^d - 1)^{mu(r/d)}` by exact division.
pub fn cyclotomic_poly(r: u64) -> Poly {
    assert!(r >= 1);
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in crate::number::divisors(r) {
        let qd1 = Poly::one_minus_q_pow(d as usize).neg(); // q^d - 1
        match crate::number::mobius(r / d) {
            1 => num = num.mul(&qd1),
            -1 => den = den.mul(&qd1),
            _ => {}
        }
    }
    num.exact_div(&den)
}

const CYCLO_CACHE_MAX: u64 = 64;

/// Cached cyclotomic polynomials for the small orders that occur in
/// denominator reduction.
pub(crate) fn cyclotomic_cached(r: u64) -> Poly {
    static CACHE: OnceLock<Vec<Poly>> = OnceLock::new();
    if (1..=CYCLO_CACHE_MAX).contains(&r) {
        let cache = CACHE.get_or_init(|| (1..=CYCLO_CACHE_MAX).map(cyclotomic_poly).collect());
        cache[(r - 1) as usize].clone()
    } else {
        cyclotomic_poly(r)
    }
}

/// Evaluate in primitive-integer form at q = 2 (divisibility screen for
/// cyclotomic trial division: Phi_r | p implies Phi_r(2) | p_int(2)).
pub(crate) fn eval2_int_primitive(p: &Poly) -> BigInt {
    let (v, _) = integerize(p.coeffs());
    let v = int_primitive(v);
    let two = BigInt::from(2);
    let mut acc = BigInt::zero();
    for c in v.iter().rev() {
        acc = acc * &two + c;
    }
    acc
}
