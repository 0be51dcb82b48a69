//! The K-ring of the quintic, `Q[P]/((1-P)^4)`, in the nilpotent basis
//! `{1, x, x^2, x^3}` with `x = 1 - P`, together with Adams operations, the
//! intersection pairing and its dual basis.
//!
//! The scalar type is pluggable: exact rationals for the cohomological side
//! (where the same ring shape serves as `Q[H]/(H^4)`), rational functions of q
//! for the K-theoretic side.

use crate::number::{rat, rat_int, Rat};
use num::{One, Zero};
use std::fmt;

/// Commutative ring with a Q-module structure; what the generic containers
/// (`KElem`, `NovSeries`) require of their coefficients. Implemented by
/// `Rat`, `QRat`, and `KElem<T>` itself for nesting.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Action of a rational scalar.
    fn scale(&self, s: &Rat) -> Self;
}

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, s: &Rat) -> Self {
        self * s
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!<Rat as Zero>::is_zero(self), "division by zero");
        <Rat as One>::one() / self
    }
}

/// Element of `Q[x]/(x^4)` with pluggable scalars: `coords[i]` multiplies x^i.
#[derive(Clone, PartialEq)]
pub struct KElem<T: Ring> {
    coords: [T; 4],
}

impl<T: Ring> KElem<T> {
    pub fn new(coords: [T; 4]) -> Self {
        KElem { coords }
    }

    pub fn zero() -> Self {
        KElem {
            coords: [T::zero(), T::zero(), T::zero(), T::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(T::one())
    }

    pub fn from_scalar(c: T) -> Self {
        KElem {
            coords: [c, T::zero(), T::zero(), T::zero()],
        }
    }

    /// The basis monomial x^i.
    pub fn basis(i: usize) -> Self {
        assert!(i < 4);
        let mut out = Self::zero();
        out.coords[i] = T::one();
        out
    }

    /// x = 1 - P.
    pub fn x() -> Self {
        Self::basis(1)
    }

    /// The line class P = 1 - x.
    pub fn line_class() -> Self {
        Self::one().sub(&Self::x())
    }

    pub fn comp(&self, i: usize) -> &T {
        &self.coords[i]
    }

    pub fn comps(&self) -> &[T; 4] {
        &self.coords
    }

    pub fn set_comp(&mut self, i: usize, v: T) {
        self.coords[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        KElem {
            coords: std::array::from_fn(|i| self.coords[i].add(&rhs.coords[i])),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        KElem {
            coords: std::array::from_fn(|i| self.coords[i].sub(&rhs.coords[i])),
        }
    }

    pub fn neg(&self) -> Self {
        KElem {
            coords: std::array::from_fn(|i| self.coords[i].neg()),
        }
    }

    /// Product in `Q[x]/(x^4)`: `c_k = sum_{i+j=k, k<=3} a_i b_j`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for k in 0..4 {
            let mut acc = T::zero();
            for i in 0..=k {
                let (a, b) = (&self.coords[i], &rhs.coords[k - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            out.coords[k] = acc;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        KElem {
            coords: std::array::from_fn(|i| self.coords[i].scale(s)),
        }
    }

    /// Multiply every component by a scalar of the coefficient ring.
    pub fn scale_elem(&self, s: &T) -> Self {
        KElem {
            coords: std::array::from_fn(|i| self.coords[i].mul(s)),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> KElem<U> {
        KElem {
            coords: std::array::from_fn(|i| f(&self.coords[i])),
        }
    }
}

impl<T: Field> KElem<T> {
    /// Inverse of a unit: with a = a0 + n (n nilpotent),
    /// a^{-1} = a0^{-1} * sum_{k=0..3} (-n/a0)^k. Panics when the scalar
    /// part a0 is zero (non-unit).
    pub fn inv(&self) -> Self {
        assert!(
            !self.coords[0].is_zero(),
            "KElem::inv: scalar part is zero (not a unit)"
        );
        let a0_inv = self.coords[0].inv();
        let mut n = self.clone();
        n.coords[0] = T::zero();
        let step = n.scale_elem(&a0_inv).neg(); // -n/a0
        let mut acc = Self::one();
        let mut out = Self::zero();
        for _ in 0..4 {
            out = out.add(&acc);
            acc = acc.mul(&step);
        }
        out.scale_elem(&a0_inv)
    }
}

impl<T: Ring> Ring for KElem<T> {
    fn zero() -> Self {
        KElem::zero()
    }
    fn one() -> Self {
        KElem::one()
    }
    fn is_zero(&self) -> bool {
        KElem::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        KElem::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        KElem::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        KElem::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        KElem::neg(self)
    }
    fn scale(&self, s: &Rat) -> Self {
        KElem::scale(self, s)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for KElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["1", "x", "x^2", "x^3"];
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, names[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for KElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KElem{:?}", self.coords)
    }
}

/// Adams operation Psi^k: ring endomorphism with P -> P^k, i.e.
/// x -> 1 - (1-x)^k, extended additively and multiplicatively.
pub fn adams<T: Ring>(k: u32, a: &KElem<T>) -> KElem<T> {
    assert!(k >= 1);
    // images of the basis monomials x^j, computed over Q
    let xk = KElem::<Rat>::one().sub(&KElem::line_class().pow(k)); // 1 - (1-x)^k
    let mut out = KElem::<T>::zero();
    let mut img = KElem::<Rat>::one(); // xk^j
    for j in 0..4 {
        if !a.comps()[j].is_zero() {
            for i in 0..4 {
                let c = img.comp(i);
                if !<Rat as Zero>::is_zero(c) {
                    let add = a.comps()[j].scale(c);
                    out.set_comp(i, out.comp(i).add(&add));
                }
            }
        }
        img = img.mul(&xk);
    }
    out
}

/// The intersection pairing matrix (Phi_a, Phi_b) = chi(X, Phi_a Phi_b) on
/// the basis Phi_a = x^a of the quintic's K-ring.
pub fn pairing_matrix() -> [[Rat; 4]; 4] {
    let m = [
        [0i64, 5, -5, 5],
        [5, -5, 5, 0],
        [-5, 5, 0, 0],
        [5, 0, 0, 0],
    ];
    std::array::from_fn(|a| std::array::from_fn(|b| rat_int(m[a][b])))
}

/// Bilinear extension of the pairing matrix.
pub fn pairing(a: &KElem<Rat>, b: &KElem<Rat>) -> Rat {
    let m = pairing_matrix();
    let mut out = rat_int(0);
    for i in 0..4 {
        if <Rat as Zero>::is_zero(a.comp(i)) {
            continue;
        }
        for j in 0..4 {
            if <Rat as Zero>::is_zero(b.comp(j)) {
                continue;
            }
            out += a.comp(i) * b.comp(j) * &m[i][j];
        }
    }
    out
}

/// The dual basis {Phi^a} with (Phi_a, Phi^b) = delta_ab:
/// Phi^0 = x^3/5, Phi^1 = (x^2+x^3)/5, Phi^2 = (x+x^2)/5,
/// Phi^3 = (1+x-x^3)/5.
pub fn dual_basis() -> [KElem<Rat>; 4] {
    let fifth = rat(1, 5);
    let e = |v: [i64; 4]| {
        KElem::new(std::array::from_fn(|i| rat_int(v[i]))).scale(&fifth)
    };
    [
        e([0, 0, 0, 1]),
        e([0, 0, 1, 1]),
        e([0, 1, 1, 0]),
        e([1, 1, 0, -1]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn k(v: [i64; 4]) -> KElem<Rat> {
        KElem::new(std::array::from_fn(|i| rat_int(v[i])))
    }

    #[test]
    fn nilpotency_and_products() {
        let x2 = KElem::<Rat>::basis(2);
        assert!(x2.mul(&x2).is_zero()); // x^4 = 0
        assert_eq!(KElem::<Rat>::x().mul(&x2), KElem::basis(3));
        // (1-x)(1+x+x^2+x^3) = 1
        let p = KElem::<Rat>::line_class();
        let s = k([1, 1, 1, 1]);
        assert_eq!(p.mul(&s), KElem::one());
    }

    #[test]
    fn inverses() {
        // 1/P = 1 + x + x^2 + x^3
        assert_eq!(KElem::<Rat>::line_class().inv(), k([1, 1, 1, 1]));
        assert_eq!(KElem::<Rat>::one().inv(), KElem::one());
        // (2 + x)^{-1} = 1/2 - x/4 + x^2/8 - x^3/16
        let a = k([2, 1, 0, 0]);
        let expect = KElem::new([rat(1, 2), rat(-1, 4), rat(1, 8), rat(-1, 16)]);
        assert_eq!(a.inv(), expect);
        assert_eq!(a.inv().mul(&a), KElem::one());
    }

    #[test]
    #[should_panic(expected = "not a unit")]
    fn non_unit_inverse_panics() {
        KElem::<Rat>::x().inv();
    }

    #[test]
    fn adams_values() {
        // Psi^2(x) = 2x - x^2
        assert_eq!(adams(2, &KElem::<Rat>::x()), k([0, 2, -1, 0]));
        // Psi^3(x) = 3x - 3x^2 + x^3
        assert_eq!(adams(3, &KElem::<Rat>::x()), k([0, 3, -3, 1]));
        // unit preserved
        for kk in 1..=5 {
            assert_eq!(adams(kk, &KElem::<Rat>::one()), KElem::one());
        }
        // Psi^k(P) = P^k
        for kk in 1..=5 {
            let p = KElem::<Rat>::line_class();
            assert_eq!(adams(kk, &p), p.pow(kk));
        }
    }

    #[test]
    fn pairing_entries() {
        let phi0 = KElem::<Rat>::one();
        let phi1 = KElem::<Rat>::x();
        assert_eq!(pairing(&phi0, &phi1), rat_int(5));
        assert_eq!(pairing(&phi0, &phi0), rat_int(0));
        // symmetry of the matrix
        let m = pairing_matrix();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m[a][b], m[b][a]);
            }
        }
    }

    #[test]
    fn dual_basis_duality() {
        // (Phi_a, Phi^b) = delta_ab: a nontrivial consistency check between
        // the pairing matrix and the stated dual basis
        let dual = dual_basis();
        for a in 0..4 {
            let phi_a = KElem::<Rat>::basis(a);
            for (b, phi_b) in dual.iter().enumerate() {
                let expect = if a == b { rat_int(1) } else { rat_int(0) };
                assert_eq!(pairing(&phi_a, phi_b), expect, "(a, b) = ({a}, {b})");
            }
        }
    }

    fn lcg(state: &mut u64) -> i64 {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*state >> 33) % 19) as i64 - 9
    }

    fn random_k(state: &mut u64) -> KElem<Rat> {
        KElem::new(std::array::from_fn(|_| {
            rat(lcg(state), 1 + lcg(state).abs() % 4)
        }))
    }

    #[test]
    fn ring_axioms_randomized() {
        // commutative, associative, unital on 1000 randomized triples
        let mut s = 0x853c49e6748fea9bu64;
        for _ in 0..1000 {
            let (a, b, c) = (random_k(&mut s), random_k(&mut s), random_k(&mut s));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&KElem::one()), a);
        }
    }

    #[test]
    fn inverse_randomized() {
        // k_inv(a) * a = 1 whenever the scalar part is nonzero
        let mut s = 0xda3e39cb94b95bdbu64;
        let mut done = 0;
        while done < 300 {
            let a = random_k(&mut s);
            if <Rat as Zero>::is_zero(a.comp(0)) {
                continue;
            }
            assert_eq!(a.inv().mul(&a), KElem::one());
            done += 1;
        }
    }

    #[test]
    fn adams_composition_randomized() {
        // Psi^k . Psi^l = Psi^{kl} for k, l <= 5
        let mut s = 0x2545f4914f6cdd1du64;
        for _ in 0..200 {
            let a = random_k(&mut s);
            for k in 1..=5u32 {
                for l in 1..=5u32 {
                    assert_eq!(adams(k, &adams(l, &a)), adams(k * l, &a));
                }
            }
        }
    }
}
