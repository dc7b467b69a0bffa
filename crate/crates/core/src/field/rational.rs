//! Rational arithmetic with cheaper normalization than the generic
//! `Ratio` operators: cross-cancellation before multiplying, and a native
//! binary gcd whenever both operands fit in 128 bits.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if (a | b) >> 64 == 0 {
            return u128::from(gcd_u64(a as u64, b as u64)) << shift;
        }
        if b == 0 {
            return a << shift;
        }
    }
}

/// Nonnegative gcd.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (ma, mb) = (a.magnitude(), b.magnitude());
    if ma.bits() <= 64 && mb.bits() <= 64 {
        let g = gcd_u64(ma.to_u64().unwrap_or(0), mb.to_u64().unwrap_or(0));
        return BigInt::from(g);
    }
    if ma.bits() <= 128 && mb.bits() <= 128 {
        let g = gcd_u128(ma.to_u128().unwrap_or(0), mb.to_u128().unwrap_or(0));
        return BigInt::from(g);
    }
    a.gcd(b)
}

fn is_one(x: &BigInt) -> bool {
    x.is_one()
}

/// `a + b`.
pub(crate) fn add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (n1, d1, n2, d2) = (a.numer(), a.denom(), b.numer(), b.denom());
    if is_one(d1) && is_one(d2) {
        return BigRational::from_integer(n1 + n2);
    }
    if d1 == d2 {
        let num = n1 + n2;
        let g = gcd(&num, d1);
        if is_one(&g) {
            return BigRational::new_raw(num, d1.clone());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        return BigRational::new_raw(num / &g, d1 / &g);
    }
    let g = gcd(d1, d2);
    if is_one(&g) {
        return BigRational::new_raw(n1 * d2 + n2 * d1, d1 * d2);
    }
    let (d1g, d2g) = (d1 / &g, d2 / &g);
    let t = n1 * &d2g + n2 * &d1g;
    if t.is_zero() {
        return BigRational::zero();
    }
    let g2 = gcd(&t, &g);
    if is_one(&g2) {
        BigRational::new_raw(t, d1g * d2)
    } else {
        BigRational::new_raw(t / &g2, d1g * (d2 / g2))
    }
}

pub(crate) fn neg(a: &BigRational) -> BigRational {
    BigRational::new_raw(-a.numer(), a.denom().clone())
}

pub(crate) fn sub(a: &BigRational, b: &BigRational) -> BigRational {
    add(a, &neg(b))
}

/// `a * b`, cancelling `gcd(n1, d2)` and `gcd(n2, d1)` first.
pub(crate) fn mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    let (n1, d1, n2, d2) = (a.numer(), a.denom(), b.numer(), b.denom());
    if is_one(d1) && is_one(d2) {
        return BigRational::from_integer(n1 * n2);
    }
    let g1 = gcd(n1, d2);
    let g2 = gcd(n2, d1);
    let (n1, d2) = if is_one(&g1) {
        (n1.clone(), d2.clone())
    } else {
        (n1 / &g1, d2 / &g1)
    };
    let (n2, d1) = if is_one(&g2) {
        (n2.clone(), d1.clone())
    } else {
        (n2 / &g2, d1 / &g2)
    };
    BigRational::new_raw(n1 * n2, d1 * d2)
}

pub(crate) fn recip(a: &BigRational) -> BigRational {
    let (n, d) = (a.numer(), a.denom());
    if n.sign() == Sign::Minus {
        BigRational::new_raw(-d, -n)
    } else {
        BigRational::new_raw(d.clone(), n.clone())
    }
}
