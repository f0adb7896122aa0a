//! Exact scalar arithmetic: arbitrary-precision rationals, cyclotomic
//! fields Q(zeta_e) in canonical power-basis coordinates mod Phi_e, prime
//! fields for the modular character-table solver, and q-combinatorics.

pub mod arith;
pub mod cyclotomic;
pub mod intcyc;
pub mod primefield;

pub use cyclotomic::{cyclo_root, cyclotomic_polynomial, Cyclotomic};
pub use intcyc::IntCyc;
pub use primefield::{is_prime_u64, PrimeField, PrimeFieldElem};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Arbitrary precision; no silent overflow anywhere.
pub type Rational = num_rational::BigRational;

/// Parse "num/den" or "num" into a rational. Used by the serialization
/// format and the expected-table reader.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::input(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::input(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::input("rational with zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Render a rational as "num" or "num/den" (canonical reduced form).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Smallest n >= 1 with x^n = 1, if x is a root of unity in Q(zeta_e).
///
/// The roots of unity in Q(zeta_e) form the cyclic group generated by
/// -zeta_e, of order lcm(2, e), so it suffices to test the divisors of
/// lcm(2, e) in increasing order. Anything else is rejected.
pub fn multiplicative_order(x: &Cyclotomic) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::input("multiplicative_order of zero"));
    }
    let bound = arith::lcm64(2, x.conductor() as u64);
    let mut divs = arith::divisors(bound);
    divs.sort_unstable();
    for n in divs {
        if x.pow(n).is_one() {
            return Ok(n);
        }
    }
    Err(Error::input(format!(
        "not a root of unity in Q(zeta_{})",
        x.conductor()
    )))
}

/// True iff x equals the rational integer -degree. This is the scalar test
/// behind the "-1 type" predicate: the character value at the class
/// representative must be exactly minus the character degree.
pub fn is_real_negative_of_degree(x: &Cyclotomic, degree: &BigInt) -> bool {
    if degree.is_negative() {
        return false;
    }
    x == &Cyclotomic::from_rational(x.conductor(), Rational::from(-degree.clone()))
}

/// (n)_q = 1 + q + ... + q^(n-1), with the q = 1 limit equal to n.
pub fn q_integer(n: u64, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(q.conductor());
    let mut power = Cyclotomic::one(q.conductor());
    for _ in 0..n {
        acc = &acc + &power;
        power = &power * q;
    }
    acc
}

/// (n)_q! = (1)_q (2)_q ... (n)_q.
pub fn q_factorial(n: u64, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::one(q.conductor());
    for k in 1..=n {
        acc = &acc * &q_integer(k, q);
    }
    acc
}

/// Gaussian binomial [n choose k]_q evaluated at q.
///
/// Computed by evaluating the integer polynomial built from the Pascal
/// recurrence [n,k] = [n-1,k-1] + q^k [n-1,k], never as a ratio of
/// q-factorials: at roots of unity the factorials can vanish while the
/// binomial itself stays well defined.
pub fn q_binomial(n: u64, k: u64, q: &Cyclotomic) -> Cyclotomic {
    if k > n {
        return Cyclotomic::zero(q.conductor());
    }
    let poly = gaussian_binomial_poly(n, k);
    // Horner evaluation at the cyclotomic point.
    let mut acc = Cyclotomic::zero(q.conductor());
    for c in poly.iter().rev() {
        acc = &(&acc * q) + &Cyclotomic::from_rational(q.conductor(), Rational::from(c.clone()));
    }
    acc
}

/// Integer coefficient vector of the Gaussian binomial polynomial in q.
pub fn gaussian_binomial_poly(n: u64, k: u64) -> Vec<BigInt> {
    if k > n {
        return vec![BigInt::zero()];
    }
    // row[j] holds [m choose j]_q as a coefficient vector while m climbs.
    let k = k.min(n - k);
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let maxj = (k.min(m)) as usize;
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(maxj + 1);
        for j in 0..=maxj {
            if j == 0 {
                next.push(vec![BigInt::one()]);
                continue;
            }
            // [m,j] = [m-1,j-1] + q^j [m-1,j]
            let a = &row[j - 1];
            let mut out = a.clone();
            if j < row.len() {
                let b = &row[j];
                let shift = j;
                if out.len() < b.len() + shift {
                    out.resize(b.len() + shift, BigInt::zero());
                }
                for (i, c) in b.iter().enumerate() {
                    out[i + shift] += c;
                }
            }
            next.push(out);
        }
        row = next;
    }
    row[(k as usize).min(row.len() - 1)].clone()
}
