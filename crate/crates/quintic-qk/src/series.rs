//! Truncated power series in the Novikov variable Q with a pluggable
//! coefficient ring.
//!
//! A series of truncation order D stores exactly D+1 coefficients and is
//! exact modulo Q^{D+1}. Binary operations truncate to the smaller order of
//! the two operands.

use crate::kring::Ring;
use crate::number::Rat;
use num::One;

#[derive(Clone, PartialEq, Debug)]
pub struct NovSeries<T: Ring> {
    coeffs: Vec<T>,
}

impl<T: Ring> NovSeries<T> {
    /// The zero series truncated at order `trunc`.
    pub fn zero(trunc: usize) -> Self {
        NovSeries {
            coeffs: vec![T::zero(); trunc + 1],
        }
    }

    /// The constant 1 series.
    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = T::one();
        s
    }

    /// `c * Q^k` (dropped entirely if k exceeds the truncation order).
    pub fn monomial(trunc: usize, c: T, k: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        NovSeries { coeffs }
    }

    /// Truncation order D: coefficients of Q^0 .. Q^D are stored.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: T) {
        self.coeffs[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restrict to a smaller (or equal) truncation order.
    pub fn truncated(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc());
        NovSeries {
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.trunc().min(rhs.trunc());
        NovSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.trunc().min(rhs.trunc());
        NovSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        NovSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.trunc().min(rhs.trunc());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let t = self.coeffs[i].mul(&rhs.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&t);
            }
        }
        out
    }

    /// Multiply every coefficient by a fixed ring element.
    pub fn scale_elem(&self, s: &T) -> Self {
        NovSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        NovSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// exp of a series with zero constant term: sum_{n<=D} a^n / n!.
    /// Panics if the constant term is nonzero (the precondition of the
    /// reconstruction formulas, where the exponent has positive valuation).
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "series exp requires positive Novikov valuation"
        );
        let n = self.trunc();
        let mut out = Self::one(n);
        let mut term = Self::one(n);
        let mut factorial = crate::number::rat_int(1);
        for k in 1..=n {
            term = term.mul(self);
            if term.is_zero() {
                break;
            }
            factorial *= crate::number::rat_int(k as i64);
            let inv = <Rat as One>::one() / &factorial;
            out = out.add(&term.scale(&inv));
        }
        out
    }

    /// Adams operation on the Novikov variable: Q^j -> Q^{kj}. Coefficients
    /// are untouched; combine with an Adams action on the coefficient ring
    /// at the call site when one is needed.
    pub fn adams(&self, k: usize) -> Self {
        assert!(k >= 1);
        let n = self.trunc();
        let mut out = Self::zero(n);
        for j in 0..=n {
            if j * k > n {
                break;
            }
            out.coeffs[j * k] = self.coeffs[j].clone();
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> NovSeries<U> {
        NovSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}
