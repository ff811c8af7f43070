//! Cyclotomic square roots of rationals via quadratic Gauss sums.
//!
//! Every rational has a square root in some cyclotomic field: `sqrt(2)` lives
//! in `Q(zeta_8)`, `sqrt(p)` for odd `p` in `Q(zeta_p)` or `Q(zeta_4p)`, and
//! `sqrt(-1) = zeta_4`; composites multiply out.

use super::{CycNum, Rat};
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A value squaring exactly to `q`.
pub fn sqrt_rational(q: &Rat) -> Result<CycNum, Error> {
    if q.is_zero() {
        return Err(Error::NotRepresentable("square root of zero requested of nonzero op".into()));
    }
    let mut acc = CycNum::one();
    if q.is_negative() {
        acc = acc.mul(&CycNum::i());
    }
    let num = q.numer().abs();
    let den = q.denom().clone();
    // sqrt(num/den) = sqrt(num * den) / den
    let m = &num * &den;
    let mut root = CycNum::from_rat(Rat::new(BigInt::one(), den));
    let (square_part, odd_primes) = factor_square_free(&m);
    root = root.mul(&CycNum::from_rat(Rat::from_integer(square_part)));
    for p in odd_primes {
        root = root.mul(&sqrt_prime(p));
    }
    let out = acc.mul(&root);
    debug_assert_eq!(out.mul(&out), CycNum::from_rat(q.clone()));
    Ok(out)
}

/// Square root of an arbitrary cyclotomic value of the special shape
/// `q * zeta` (rational times root of unity). Returns an error otherwise.
pub fn sqrt_value(v: &CycNum) -> Result<CycNum, Error> {
    if let Some(q) = v.as_rational() {
        return sqrt_rational(q);
    }
    super::kth_root_rat_times_unit(v, 2)
}

fn factor_square_free(m: &BigInt) -> (BigInt, Vec<u32>) {
    let mut m = m.clone();
    let mut square = BigInt::one();
    let mut odd = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut e = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                odd.push(p.to_u32().expect("odd prime factor too large for sqrt table"));
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        odd.push(m.to_u32().expect("prime factor too large for sqrt table"));
    }
    (square, odd)
}

/// `sqrt(p)` for prime `p` via the quadratic Gauss sum.
fn sqrt_prime(p: u32) -> CycNum {
    if p == 2 {
        // zeta_8 - zeta_8^3 squares to 2
        return CycNum::root_of_unity(8, 1).sub(&CycNum::root_of_unity(8, 3));
    }
    let mut g = CycNum::zero();
    for a in 0..p {
        let e = ((a as u64 * a as u64) % p as u64) as i64;
        g = g.add(&CycNum::root_of_unity(p, e));
    }
    if p % 4 == 1 {
        g
    } else {
        // g^2 = -p here; divide by i
        g.mul(&CycNum::root_of_unity(4, 3))
    }
}
