//! Rational functions of q over the rationals, and K-ring-valued rational
//! functions, with the three analytic tools the J-function machinery needs:
//!
//! - [`split_polarization`]: the Laurent-polynomial / proper-part splitting.
//!   The plus part is the polynomial quotient together with the principal
//!   part at q = 0 (so it is a Laurent polynomial); the minus part is
//!   regular at q = 0 and vanishes at infinity. `plus + minus = f` exactly.
//! - [`local_expand`]: Laurent expansion at q = zeta^{-1} in powers of
//!   `u = 1 - zeta q`, over the cyclotomic field `Q[t]/Phi_r` with zeta := t.
//! - [`cyclotomic_support`]: complete factorization of a denominator into
//!   cyclotomic polynomials plus a (reported) non-cyclotomic remainder.
//!
//! Normal form: denominator monic, gcd(num, den) = 1, zero is 0/1. All
//! equality tests on `QRat` are therefore exact structural equality.
//!
//! Reduction strategy: denominators produced by this engine factor into
//! cyclotomic polynomials of small order, so reduction first strips common
//! cyclotomic factors by (screened) exact trial division and only falls back
//! to a general polynomial gcd for whatever non-cyclotomic part remains.

use crate::cyclo::CycloNum;
use crate::kring::{Field, KElem, Ring};
use crate::number::{euler_phi, Rat};
use crate::poly::{cyclotomic_cached, eval2_int_primitive, Poly};
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Largest cyclotomic order tried in the fast reduction path. Denominators
/// built by the pipeline only involve orders up to 5 * max_degree; anything
/// beyond is caught by the general gcd fallback.
const CYCLO_STRIP_MAX: u64 = 64;

#[derive(Clone, PartialEq)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

/// K-ring element whose components are rational functions of q.
pub type KQRat = KElem<QRat>;

impl QRat {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        let (num, den) = normalize(num, den);
        QRat { num, den }
    }

    /// Construct from parts already known to be reduced with monic
    /// denominator (debug-checked).
    fn from_reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic() || (num.is_zero() && den.is_one()));
        QRat { num, den }
    }

    pub fn zero() -> Self {
        QRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        QRat {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(crate::number::rat_int(n))
    }

    /// `c * q^k`.
    pub fn q_pow(k: usize, c: Rat) -> Self {
        Self::from_poly(Poly::monomial(c, k))
    }

    /// `1 / (1 - q^k)^e` in normal form without running reduction.
    pub fn inv_one_minus_q_pow(k: usize, e: u32) -> Self {
        // (1 - q^k)^e = (-1)^e (q^k - 1)^e with q^k - 1 monic
        let den = Poly::one_minus_q_pow(k).neg().pow(e);
        let sign = if e % 2 == 0 { 1 } else { -1 };
        QRat::from_reduced(Poly::from_i64(&[sign]), den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(num) iff the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRat::new(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        QRat::new(num, self.den.mul(&rhs.den))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QRat::from_reduced(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        // cross-reduce; the two results multiply to an already-reduced pair
        let (n1, d2) = reduce_common(self.num.clone(), rhs.den.clone());
        let (n2, d1) = reduce_common(rhs.num.clone(), self.den.clone());
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let (num, den) = make_monic_pair(num, den);
        QRat::from_reduced(num, den)
    }

    /// Panics on division by zero.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self.mul(&QRat::new(rhs.den.clone(), rhs.num.clone()))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational function");
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if <Rat as Zero>::is_zero(s) {
            return QRat::zero();
        }
        QRat::from_reduced(self.num.scale(s), self.den.clone())
    }

    /// Substitute q -> q^k. Preserves the normal form.
    pub fn substitute_q_power(&self, k: usize) -> Self {
        QRat::from_reduced(
            self.num.substitute_q_power(k),
            self.den.substitute_q_power(k),
        )
    }

    /// Evaluate at a rational point where the denominator does not vanish.
    pub fn eval(&self, x: &Rat) -> Rat {
        let d = self.den.eval(x);
        assert!(!<Rat as Zero>::is_zero(&d), "pole at evaluation point");
        self.num.eval(x) / d
    }
}

impl Ring for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        QRat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QRat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QRat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QRat::neg(self)
    }
    fn scale(&self, s: &Rat) -> Self {
        QRat::scale(self, s)
    }
}

impl Field for QRat {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

/// Full normalization: cancel the gcd, make the denominator monic.
fn normalize(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    if den.is_constant() {
        let inv = crate::number::rat_int(1) / den.coeff(0);
        return (num.scale(&inv), Poly::one());
    }
    let (num, den) = reduce_common(num, den);
    make_monic_pair(num, den)
}

fn make_monic_pair(num: Poly, den: Poly) -> (Poly, Poly) {
    let lead = den.leading().expect("zero denominator").clone();
    if lead.is_one() {
        (num, den)
    } else {
        let inv = crate::number::rat_int(1) / lead;
        (num.scale(&inv), den.scale(&inv))
    }
}

/// Cancel every common factor of (num, den); does not normalize leading
/// coefficients.
fn reduce_common(mut num: Poly, mut den: Poly) -> (Poly, Poly) {
    if num.is_zero() || den.is_constant() {
        return (num, den);
    }
    // common power of q
    let v = num.q_valuation().min(den.q_valuation());
    if v > 0 {
        num = num.shift_down(v);
        den = den.shift_down(v);
    }
    // strip common cyclotomic factors of small order
    let mut den_val = eval2_int_primitive(&den);
    let mut num_val = eval2_int_primitive(&num);
    let mut kept: Vec<(Poly, u32)> = Vec::new(); // den factors not cancelled
    let mut den_rem = den;
    let mut r = 1u64;
    while r <= CYCLO_STRIP_MAX && den_rem.degree() > 0 {
        if euler_phi(r) as isize > den_rem.degree() {
            r += 1;
            continue;
        }
        let phi = cyclotomic_cached(r);
        let phi2 = phi.eval(&crate::number::rat_int(2));
        let phi2 = phi2.numer().clone();
        let mut e_den = 0u32;
        loop {
            if !(&den_val % &phi2).is_zero() {
                break;
            }
            match den_rem.try_exact_div(&phi) {
                Some(q) => {
                    den_rem = q;
                    den_val /= &phi2;
                    e_den += 1;
                }
                None => break,
            }
        }
        if e_den > 0 {
            let mut e_common = 0u32;
            while e_common < e_den {
                if !(&num_val % &phi2).is_zero() {
                    break;
                }
                match num.try_exact_div(&phi) {
                    Some(q) => {
                        num = q;
                        num_val /= &phi2;
                        e_common += 1;
                    }
                    None => break,
                }
            }
            if e_den > e_common {
                kept.push((phi, e_den - e_common));
            }
        }
        r += 1;
    }
    // anything left in den_rem (non-cyclotomic, or beyond the trial range)
    // goes through the general gcd
    if den_rem.degree() > 0 {
        let g = Poly::gcd(&num, &den_rem);
        if g.degree() > 0 {
            num = num.exact_div(&g);
            den_rem = den_rem.exact_div(&g);
        }
    }
    let mut den_out = den_rem;
    for (phi, e) in kept {
        den_out = den_out.mul(&phi.pow(e));
    }
    (num, den_out)
}

/// The Laurent-polynomial half of the polarization: a polynomial plus a
/// principal part at q = 0. `principal[j]` is the coefficient of q^{-(j+1)}.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPart {
    pub poly: Poly,
    pub principal: Vec<Rat>,
}

impl LaurentPart {
    pub fn zero() -> Self {
        LaurentPart {
            poly: Poly::zero(),
            principal: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.principal.is_empty()
    }

    /// Some(polynomial) iff there is no principal part at q = 0.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        if self.principal.is_empty() {
            Some(&self.poly)
        } else {
            None
        }
    }

    /// Back to a rational function (for reassembly checks).
    pub fn to_qrat(&self) -> QRat {
        let a = self.principal.len();
        if a == 0 {
            return QRat::from_poly(self.poly.clone());
        }
        // poly + sum principal[j] q^{-(j+1)} = (poly*q^a + rev(principal)) / q^a
        let mut low: Vec<Rat> = self.principal.clone();
        low.reverse();
        let num = Poly::from_coeffs(low).add(&self.poly.shift_up(a));
        QRat::new(num, Poly::q_pow(a))
    }
}

/// Split f into its Laurent-polynomial part (polynomial quotient plus the
/// principal part at q = 0) and its proper part (regular at 0, vanishing at
/// infinity, poles only at nonzero finite points). `plus + minus = f`.
pub fn split_polarization(f: &QRat) -> (LaurentPart, QRat) {
    if f.is_zero() {
        return (LaurentPart::zero(), QRat::zero());
    }
    let (quot, rem) = f.num.divrem(&f.den);
    if rem.is_zero() {
        return (
            LaurentPart {
                poly: quot,
                principal: Vec::new(),
            },
            QRat::zero(),
        );
    }
    let a = f.den.q_valuation();
    if a == 0 {
        return (
            LaurentPart {
                poly: quot,
                principal: Vec::new(),
            },
            QRat::from_reduced(rem, f.den.clone()),
        );
    }
    // rem / (q^a den0) = A/q^a + B/den0 with A = rem * den0^{-1} mod q^a
    let den0 = f.den.shift_down(a);
    let inv = den0.inv_mod_q_pow(a);
    let a_poly = rem.mul(&inv).truncated(a);
    let b = rem.sub(&a_poly.mul(&den0)).shift_down(a);
    let mut principal: Vec<Rat> = (0..a).map(|j| a_poly.coeff(a - 1 - j)).collect();
    while principal.last().is_some_and(<Rat as Zero>::is_zero) {
        principal.pop();
    }
    // gcd(B, den0) = 1 because gcd(rem, den) = 1; den0 is monic
    (
        LaurentPart {
            poly: quot,
            principal,
        },
        QRat::from_reduced(b, den0),
    )
}

/// Component-wise polarization split of a K-valued rational function.
pub fn split_polarization_k(f: &KQRat) -> ([LaurentPart; 4], KQRat) {
    let mut plus: [LaurentPart; 4] = std::array::from_fn(|_| LaurentPart::zero());
    let mut minus = KQRat::zero();
    for i in 0..4 {
        let (p, m) = split_polarization(f.comp(i));
        plus[i] = p;
        minus.set_comp(i, m);
    }
    (plus, minus)
}

/// Laurent expansion at q = zeta^{-1}: `sum_k coeffs[k] * u^(offset+k)` with
/// `u = 1 - zeta q`, coefficients in `Q[t]/Phi_r`, zeta the class of t.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub root_order: u64,
    pub offset: isize,
    pub coeffs: Vec<CycloNum>,
}

impl LocalExpansion {
    /// Coefficient of u^k (zero outside the computed window).
    pub fn coeff(&self, k: isize) -> CycloNum {
        let idx = k - self.offset;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            CycloNum::zero(self.root_order)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Order of the pole at q = zeta^{-1} (0 if regular).
    pub fn pole_order(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            (-self.offset).max(0) as usize
        }
    }
}

/// Substitute q = zeta^{-1}(1 - u) into p, as a polynomial in u over the
/// cyclotomic field of the given order.
fn substitute_local(p: &Poly, order: u64) -> Vec<CycloNum> {
    let zeta_inv = CycloNum::zeta_pow(order, -1);
    let mut acc: Vec<CycloNum> = Vec::new();
    for c in p.coeffs().iter().rev() {
        // acc <- acc * zeta^{-1}(1-u) + c
        let mut next = vec![CycloNum::zero(order); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            let az = a.mul(&zeta_inv);
            next[k] = next[k].add(&az);
            next[k + 1] = next[k + 1].sub(&az);
        }
        if !<Rat as Zero>::is_zero(c) {
            next[0] = next[0].add(&CycloNum::from_rat(order, c.clone()));
        }
        acc = next;
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

fn field_valuation(v: &[CycloNum]) -> usize {
    v.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

/// Expand f at q = zeta^{-1} in ascending powers of u = 1 - zeta q, through
/// u^max_order. Exact over `Q[t]/Phi_r`. Poles are allowed: the expansion
/// starts at the (negative) valuation of f at the root.
pub fn local_expand(f: &QRat, root_order: u64, max_order: isize) -> LocalExpansion {
    assert!(root_order >= 1);
    if f.is_zero() {
        return LocalExpansion {
            root_order,
            offset: 0,
            coeffs: Vec::new(),
        };
    }
    let nu = substitute_local(f.num(), root_order);
    let de = substitute_local(f.den(), root_order);
    assert!(!de.is_empty(), "denominator vanished identically");
    let vn = field_valuation(&nu) as isize;
    let vd = field_valuation(&de) as isize;
    let offset = vn - vd;
    let n_terms = max_order - offset + 1;
    if n_terms <= 0 {
        return LocalExpansion {
            root_order,
            offset,
            coeffs: Vec::new(),
        };
    }
    let n = n_terms as usize;
    let zero = CycloNum::zero(root_order);
    let a: Vec<CycloNum> = (0..n)
        .map(|k| nu.get(vn as usize + k).cloned().unwrap_or_else(|| zero.clone()))
        .collect();
    let b: Vec<CycloNum> = (0..n)
        .map(|k| de.get(vd as usize + k).cloned().unwrap_or_else(|| zero.clone()))
        .collect();
    // power series division a/b over the field
    let b0_inv = b[0].inv();
    let mut coeffs = vec![zero.clone(); n];
    for m in 0..n {
        let mut acc = a[m].clone();
        for k in 1..=m {
            if b[k].is_zero() || coeffs[m - k].is_zero() {
                continue;
            }
            acc = acc.sub(&b[k].mul(&coeffs[m - k]));
        }
        coeffs[m] = acc.mul(&b0_inv);
    }
    LocalExpansion {
        root_order,
        offset,
        coeffs,
    }
}

/// Re-summation check: clearing denominators, the truncated expansion
/// agrees with f to the requested order. Exact.
pub fn verify_expansion(f: &QRat, exp: &LocalExpansion) -> bool {
    let order = exp.root_order;
    let nu = substitute_local(f.num(), order);
    let de = substitute_local(f.den(), order);
    // want: nu(u) - (sum coeffs u^{offset+k}) * de(u) ~ 0 mod u^{top+1+vd}
    // where top = offset + len - 1 is the last computed order
    let vd = field_valuation(&de) as isize;
    if exp.coeffs.is_empty() {
        return true;
    }
    let top = exp.offset + exp.coeffs.len() as isize - 1;
    let bound = (top + vd + 1).max(0) as usize;
    let mut resid: Vec<CycloNum> = nu;
    resid.resize(bound.max(resid.len()), CycloNum::zero(order));
    for (k, c) in exp.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, d) in de.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            // absolute power of this product term; nonzero de[j] has j >= vd,
            // so the power is at least offset + vd = numerator valuation >= 0
            let power = exp.offset + k as isize + j as isize;
            debug_assert!(power >= 0);
            if power >= bound as isize {
                break;
            }
            resid[power as usize] = resid[power as usize].sub(&c.mul(d));
        }
    }
    resid.iter().take(bound).all(|c| c.is_zero())
}

/// Complete cyclotomic factorization of the denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct CycloSupport {
    /// order r -> multiplicity of Phi_r in the denominator
    pub orders: BTreeMap<u64, u32>,
    /// monic non-cyclotomic remainder, if any
    pub non_cyclotomic: Option<Poly>,
}

impl CycloSupport {
    pub fn pole_order_at(&self, r: u64) -> u32 {
        self.orders.get(&r).copied().unwrap_or(0)
    }

    pub fn max_root_order(&self) -> u64 {
        self.orders.keys().max().copied().unwrap_or(0)
    }
}

/// Factor the denominator of f into cyclotomic polynomials by trial
/// division, reporting any non-cyclotomic remainder (not an error; callers
/// use it as a structural test). Since phi(r) >= sqrt(r/2), only finitely
/// many orders can divide a given degree, and the loop bound reflects that.
pub fn cyclotomic_support(f: &QRat) -> CycloSupport {
    let mut orders = BTreeMap::new();
    let mut rem = f.den().clone();
    if rem.degree() > 0 {
        let mut rem_val = eval2_int_primitive(&rem);
        let mut r = 1u64;
        while rem.degree() > 0 {
            let deg = rem.degree() as u64;
            if r > 2 * deg * deg + 1 {
                break;
            }
            if euler_phi(r) > deg {
                r += 1;
                continue;
            }
            let phi = cyclotomic_cached(r);
            let phi2_num = phi.eval(&crate::number::rat_int(2));
            let phi2: BigInt = phi2_num.numer().clone();
            let mut e = 0u32;
            loop {
                if !(&rem_val % &phi2).is_zero() {
                    break;
                }
                match rem.try_exact_div(&phi) {
                    Some(q) => {
                        rem = q;
                        rem_val /= &phi2;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                orders.insert(r, e);
            }
            r += 1;
        }
    }
    let non_cyclotomic = if rem.degree() > 0 {
        Some(rem.monic())
    } else {
        None
    };
    CycloSupport {
        orders,
        non_cyclotomic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, rat_int};

    fn q() -> QRat {
        QRat::q_pow(1, rat_int(1))
    }

    fn one_over_one_minus_q() -> QRat {
        QRat::inv_one_minus_q_pow(1, 1)
    }

    #[test]
    fn arithmetic_and_reduction() {
        // 1/(1-q) + q/(1-q) = (1+q)/(1-q)
        let f = one_over_one_minus_q();
        let g = q().mul(&f);
        let s = f.add(&g);
        let expect = QRat::new(Poly::from_i64(&[1, 1]), Poly::from_i64(&[1, -1]));
        assert_eq!(s, expect);
        // monic normal form: (1+q)/(1-q) = (-q-1)/(q-1)
        assert_eq!(s.den(), &Poly::from_i64(&[-1, 1]));
        assert_eq!(s.num(), &Poly::from_i64(&[-1, -1]));

        // (1-q^2)/(1-q) = 1 + q
        let h = QRat::new(Poly::from_i64(&[1, 0, -1]), Poly::from_i64(&[1, -1]));
        assert_eq!(h, QRat::from_poly(Poly::from_i64(&[1, 1])));

        // div(1, 1-q) = 1/(1-q)
        let d = QRat::one().div(&QRat::from_poly(Poly::from_i64(&[1, -1])));
        assert_eq!(d, one_over_one_minus_q());

        // field inverse round trip
        let w = QRat::new(Poly::from_i64(&[3, 1, 2]), Poly::from_i64(&[1, 0, 0, 5]));
        assert_eq!(w.mul(&w.recip()), QRat::one());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn div_by_zero_panics() {
        QRat::one().div(&QRat::zero());
    }

    #[test]
    fn substitution_is_exact_on_rational_functions() {
        // (1+q)/(1-q) under q -> q^3 is (1+q^3)/(1-q^3), still in normal form
        let f = QRat::new(Poly::from_i64(&[1, 1]), Poly::from_i64(&[1, -1]));
        let g = f.substitute_q_power(3);
        let expect = QRat::new(Poly::from_i64(&[1, 0, 0, 1]), Poly::from_i64(&[1, 0, 0, -1]));
        assert_eq!(g, expect);
        // coprimality is preserved: no hidden common factor appears
        assert_eq!(Poly::gcd(g.num(), g.den()), Poly::one());
        assert!(g.den().is_monic());
    }

    #[test]
    fn reduction_mixes_cyclotomic_and_generic_factors() {
        // common factor (q - 2)(1 + q) with an extra cyclotomic kept in the
        // denominator: exercises the trial-division path and the gcd fallback
        let common = Poly::from_i64(&[-2, 1]).mul(&Poly::from_i64(&[1, 1]));
        let num = common.mul(&Poly::from_i64(&[3, 0, 1]));
        let den = common.mul(&Poly::one_minus_q_pow(1).pow(2));
        let f = QRat::new(num, den);
        let expect = QRat::new(Poly::from_i64(&[3, 0, 1]), Poly::one_minus_q_pow(1).pow(2));
        assert_eq!(f, expect);
        // rational leading coefficients normalize to the same form
        let g = QRat::new(
            Poly::from_i64(&[3, 0, 1]).scale(&rat(1, 3)),
            Poly::one_minus_q_pow(1).pow(2).scale(&rat(1, 3)),
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn polarization_examples() {
        // 1/(1-q): plus 0, minus 1/(1-q)
        let f = one_over_one_minus_q();
        let (plus, minus) = split_polarization(&f);
        assert!(plus.is_zero());
        assert_eq!(minus, f);

        // q^2/(1-q): plus -q-1, minus 1/(1-q)
        let g = QRat::new(Poly::q_pow(2), Poly::from_i64(&[1, -1]));
        let (plus, minus) = split_polarization(&g);
        assert_eq!(plus.poly, Poly::from_i64(&[-1, -1]));
        assert!(plus.principal.is_empty());
        assert_eq!(minus, one_over_one_minus_q());

        // q^{-1} + 3 + 1/(1-q)^2: plus q^{-1} + 3, minus 1/(1-q)^2
        let h = QRat::new(Poly::q_pow(1), Poly::one())
            .recip()
            .add(&QRat::from_i64(3))
            .add(&QRat::inv_one_minus_q_pow(1, 2));
        let (plus, minus) = split_polarization(&h);
        assert_eq!(plus.poly, Poly::from_i64(&[3]));
        assert_eq!(plus.principal, vec![rat_int(1)]);
        assert_eq!(minus, QRat::inv_one_minus_q_pow(1, 2));
        // reassembly
        assert_eq!(plus.to_qrat().add(&minus), h);
    }

    #[test]
    fn polarization_contract() {
        // plus + minus = f; minus finite at 0 and vanishing at infinity;
        // idempotence: splitting minus again gives (0, minus)
        let f = QRat::new(
            Poly::from_i64(&[7, -3, 2, 1, 5]),
            Poly::from_i64(&[0, 0, 2, -3, 1]),
        );
        let (plus, minus) = split_polarization(&f);
        assert_eq!(plus.to_qrat().add(&minus), f);
        assert!(minus.den().coeff(0) != rat_int(0), "minus regular at 0");
        assert!(minus.num().degree() < minus.den().degree(), "minus vanishes at infinity");
        let (p2, m2) = split_polarization(&minus);
        assert!(p2.is_zero());
        assert_eq!(m2, minus);
    }

    #[test]
    fn local_expansion_at_roots() {
        // 1/(1-q) at r=2: constant term 1/2 (= 1/(1-zeta^{-1}) with zeta=-1)
        let f = one_over_one_minus_q();
        let e = local_expand(&f, 2, 2);
        assert_eq!(e.pole_order(), 0);
        assert_eq!(e.coeff(0).as_rational(), Some(rat(1, 2)));
        assert_eq!(e.coeff(1).as_rational(), Some(rat(1, 4)));
        assert!(verify_expansion(&f, &e));

        // 1/(1-q) at r=1: principal coefficient 1 at u^{-1}
        let e1 = local_expand(&f, 1, 0);
        assert_eq!(e1.pole_order(), 1);
        assert_eq!(e1.coeff(-1).as_rational(), Some(rat_int(1)));
        assert_eq!(e1.coeff(0).as_rational(), Some(rat_int(0)));
        assert!(verify_expansion(&f, &e1));

        // 1/(1-q^2) at r=2: c_1 = 1/2 at u^{-1}, then (M-1)/2M = 1/4
        let g = QRat::inv_one_minus_q_pow(2, 1);
        let e2 = local_expand(&g, 2, 1);
        assert_eq!(e2.pole_order(), 1);
        assert_eq!(e2.coeff(-1).as_rational(), Some(rat(1, 2)));
        assert_eq!(e2.coeff(0).as_rational(), Some(rat(1, 4)));
        assert!(verify_expansion(&g, &e2));

        // cyclotomic order 3: 1/(1-q^3) principal coefficient 1/3
        let h = QRat::inv_one_minus_q_pow(3, 1);
        let e3 = local_expand(&h, 3, 0);
        assert_eq!(e3.pole_order(), 1);
        assert_eq!(e3.coeff(-1).as_rational(), Some(rat(1, 3)));
        assert!(verify_expansion(&h, &e3));
    }

    #[test]
    fn support_examples() {
        // 1/((1-q)^2 (1+q)) -> {(1,2),(2,1)}
        let f = QRat::inv_one_minus_q_pow(1, 2)
            .mul(&QRat::new(Poly::one(), Poly::from_i64(&[1, 1])));
        let s = cyclotomic_support(&f);
        assert_eq!(s.orders.get(&1), Some(&2));
        assert_eq!(s.orders.get(&2), Some(&1));
        assert!(s.non_cyclotomic.is_none());

        // (1+q)/(1-q) -> {(1,1)}
        let g = QRat::new(Poly::from_i64(&[1, 1]), Poly::from_i64(&[1, -1]));
        let s = cyclotomic_support(&g);
        assert_eq!(s.orders.len(), 1);
        assert_eq!(s.pole_order_at(1), 1);

        // 1/(1-q^3) -> {(1,1),(3,1)}
        let h = QRat::inv_one_minus_q_pow(3, 1);
        let s = cyclotomic_support(&h);
        assert_eq!(s.orders.get(&1), Some(&1));
        assert_eq!(s.orders.get(&3), Some(&1));

        // non-cyclotomic factor is reported, not an error
        let w = QRat::new(Poly::one(), Poly::from_i64(&[-2, 0, 1]).mul(&Poly::from_i64(&[1, -1])));
        let s = cyclotomic_support(&w);
        assert_eq!(s.pole_order_at(1), 1);
        assert_eq!(s.non_cyclotomic, Some(Poly::from_i64(&[-2, 0, 1])));
    }

    #[test]
    fn scalar_denominators_stay_scalar() {
        // a K-valued product keeps denominators in the scalar components
        let a = KQRat::new([
            one_over_one_minus_q(),
            QRat::one(),
            QRat::zero(),
            QRat::zero(),
        ]);
        let b = a.mul(&a);
        assert_eq!(b.comp(0), &QRat::inv_one_minus_q_pow(1, 2));
        let two_over = one_over_one_minus_q().scale(&rat_int(2));
        assert_eq!(b.comp(1), &two_over);
    }
}
