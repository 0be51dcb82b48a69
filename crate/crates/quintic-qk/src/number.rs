//! Arbitrary-precision rational numbers and elementary multiplicative
//! number theory (factorization, Moebius function, Euler phi, divisor lists).
//!
//! `Rat` is always stored reduced with positive denominator; zero is `0/1`.
//! All number-theoretic helpers use trial division, which is more than
//! enough for the arguments that occur here (`n` up to a few hundred).

use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render as `"p"` for integers and `"p/q"` otherwise. Exact.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let n = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let d = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `|r|` as a rational.
pub fn rat_abs(r: &Rat) -> Rat {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Moebius function: 0 on squareful n, else (-1)^{#prime factors}.
pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// `(5d)! / (d!)^5` as a rational (an integer for every d).
pub fn quintic_factorial_ratio(d: usize) -> Rat {
    let mut num = BigInt::one();
    for m in 1..=(5 * d) {
        num *= BigInt::from(m);
    }
    let mut den = BigInt::one();
    for m in 1..=d {
        den *= BigInt::from(m);
    }
    let den5 = den.pow(5);
    Rat::new(num, den5)
}
