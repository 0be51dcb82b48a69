//! Arithmetic in the cyclotomic field `Q[t]/Phi_r(t)`.
//!
//! Elements are stored densely in the power basis {1, t, ..., t^{phi(r)-1}}.
//! The residue class of `t` is a fixed primitive r-th root of unity zeta;
//! every primitive root works equally well because the quantities extracted
//! here are Galois-invariant, which callers assert via [`CycloNum::as_rational`].

use crate::number::{euler_phi, Rat};
use crate::poly::{cyclotomic_cached, Poly};
use num::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    order: u64,
    /// Length euler_phi(order); coords[k] is the coefficient of t^k.
    coords: Vec<Rat>,
}

impl CycloNum {
    /// Reduce an arbitrary polynomial in t mod Phi_r.
    pub fn from_poly(order: u64, p: &Poly) -> Self {
        assert!(order >= 1);
        let phi = cyclotomic_cached(order);
        let (_, rem) = p.divrem(&phi);
        let deg = euler_phi(order) as usize;
        let mut coords = vec![Rat::zero(); deg];
        for (k, c) in rem.coeffs().iter().enumerate() {
            coords[k] = c.clone();
        }
        CycloNum { order, coords }
    }

    pub fn zero(order: u64) -> Self {
        CycloNum {
            order,
            coords: vec![Rat::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u64, c: Rat) -> Self {
        let mut out = Self::zero(order);
        out.coords[0] = c;
        out
    }

    /// The fixed primitive root: the residue class of t.
    pub fn zeta(order: u64) -> Self {
        Self::from_poly(order, &Poly::q_pow(1))
    }

    /// `zeta^k` for any integer k (negative exponents via zeta^r = 1).
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        Self::from_poly(order, &Poly::q_pow(e))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Some(value) iff the element lies in Q, i.e. all t-coordinates above
    /// degree zero vanish.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coords.clone())
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(
            self.order, rhs.order,
            "cyclotomic order mismatch: {} vs {}",
            self.order, rhs.order
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        CycloNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        CycloNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloNum {
            order: self.order,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CycloNum {
            order: self.order,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        Self::from_poly(self.order, &self.to_poly().mul(&rhs.to_poly()))
    }

    /// Field inverse via the extended Euclidean algorithm against Phi_r.
    /// Panics on zero (division by zero).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q[t]/Phi_{}", self.order);
        let phi = cyclotomic_cached(self.order);
        let a = self.to_poly();
        // extended Euclid: s*a + t*phi = g (g constant since Phi_r is
        // irreducible and a != 0 has degree < deg Phi_r)
        let (mut r0, mut r1) = (a, phi);
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert!(
            r0.is_constant() && !r0.is_zero(),
            "gcd with Phi_{} not constant: {}",
            self.order,
            r0
        );
        let ginv = Rat::one() / r0.coeff(0);
        Self::from_poly(self.order, &s0.scale(&ginv))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        if p.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", p.to_string().replace('q', "t"))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[r={}]({})", self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    #[test]
    fn zeta_is_root() {
        for r in 1..=12u64 {
            let z = CycloNum::zeta(r);
            // zeta^r = 1
            assert_eq!(z.pow(r as u32), CycloNum::one(r), "r = {r}");
        }
    }

    #[test]
    fn order_two_inverse() {
        // zeta = -1: 1/(1 - zeta) = 1/2
        let r = 2;
        let a = CycloNum::one(r).sub(&CycloNum::zeta(r));
        assert_eq!(a.inv().as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn order_four_square() {
        // t^2 = -1 mod Phi_4
        let z = CycloNum::zeta(4);
        assert_eq!(z.mul(&z).as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn order_three_inverse() {
        // 1/(1 - t) = (2 + t)/3 mod t^2 + t + 1
        let r = 3;
        let a = CycloNum::one(r).sub(&CycloNum::zeta(r));
        let inv = a.inv();
        assert_eq!(inv.coords()[0], rat(2, 3));
        assert_eq!(inv.coords()[1], rat(1, 3));
        assert_eq!(a.mul(&inv), CycloNum::one(r));
    }

    #[test]
    fn inverse_roundtrip_randomized() {
        // 500 randomized nonzero elements across orders r <= 12
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 21) as i64 - 10
        };
        let mut done = 0;
        while done < 500 {
            let r = (done % 12) as u64 + 1;
            let deg = euler_phi(r) as usize;
            let coords: Vec<Rat> = (0..deg).map(|_| rat(rnd(), 1 + (rnd().abs() % 3))).collect();
            let a = CycloNum { order: r, coords };
            if a.is_zero() {
                continue;
            }
            assert_eq!(a.mul(&a.inv()), CycloNum::one(r));
            done += 1;
        }
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn zero_inverse_panics() {
        CycloNum::zero(5).inv();
    }
}
