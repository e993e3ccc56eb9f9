//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_u128(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `int` or `int/int`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::parse(0, format!("invalid rational `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let ok = |x: &str| {
        let digits = x.strip_prefix('-').unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(0, format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of injections from a `k`-set into an `n`-set.
pub fn falling_factorial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    ((n - k + 1) as u128..=n as u128).product()
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via the continued-fraction expansion.
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize {x}");
    let max_den = BigInt::from(max_den.max(1));
    let negative = x < 0.0;
    let mut rest = x.abs();
    // convergents h/k
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut best = Rational::zero();
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i128);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > max_den {
            // semiconvergent check: largest t with t*k1 + k0 <= max_den
            if !k1.is_zero() {
                let t = (&max_den - &k0).div_floor(&k1);
                let cand = Rational::new(&t * &h1 + &h0, &t * &k1 + &k0);
                let prev = Rational::new(h1.clone(), k1.clone());
                let target = Rational::from_float(x.abs()).unwrap_or_else(Rational::zero);
                best = if (&cand - &target).abs() < (&prev - &target).abs() {
                    cand
                } else {
                    prev
                };
            }
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        best = Rational::new(h1.clone(), k1.clone());
        let frac_part = rest - a;
        if frac_part < 1e-12 {
            break;
        }
        rest = 1.0 / frac_part;
    }
    if negative {
        -best
    } else {
        best
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
