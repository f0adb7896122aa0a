//! Prime fields F_p for p < 2^62: the workhorse of the modular
//! character-table solver. All arithmetic widens through u128, so there is
//! no overflow anywhere in range.

use crate::{Error, Result};

/// Deterministic Miller-Rabin for u64 (the standard complete witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// The prime field F_p. Cheap copyable context; element values are plain
/// u64 in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        PrimeField { p }
    }

    /// Smallest prime p with p ≡ residue (mod modulus) and p > lower_bound.
    /// Deterministic, so every run picks the same field.
    pub fn find_prime(modulus: u64, residue: u64, lower_bound: u64) -> Result<PrimeField> {
        let mut candidate = residue.max(1);
        while candidate <= lower_bound || !is_prime_u64(candidate) || candidate % modulus != residue % modulus {
            candidate = candidate
                .checked_add(modulus)
                .ok_or_else(|| Error::budget("prime search overflowed u64"))?;
            if candidate > (1u64 << 62) {
                return Err(Error::budget("no suitable prime below 2^62"));
            }
        }
        Ok(PrimeField::new(candidate))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer into [0, p).
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    /// An element of multiplicative order exactly n (requires n | p-1).
    /// Deterministic: scans candidates 2, 3, ... for a suitable power.
    pub fn root_of_unity(&self, n: u64) -> Result<u64> {
        if (self.p - 1) % n != 0 {
            return Err(Error::input(format!("{} does not divide p-1 = {}", n, self.p - 1)));
        }
        let factors = super::arith::factorize(n);
        'cand: for a in 2..self.p {
            let z = self.pow(a, (self.p - 1) / n);
            if z == 1 {
                continue;
            }
            for &(q, _) in &factors {
                if self.pow(z, n / q) == 1 {
                    continue 'cand;
                }
            }
            return Ok(z);
        }
        Err(Error::budget("no root of unity found (non-prime modulus?)"))
    }

    /// Tonelli-Shanks square root; returns the root in (0, p/2) when one
    /// exists. That choice makes the character-degree recovery canonical:
    /// degrees are < sqrt(|G|) < p/2, so the small root is the true one.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut root = if s == 1 {
            self.pow(a, (p + 1) / 4)
        } else {
            // find a quadratic non-residue deterministically
            let mut z = 2u64;
            while self.pow(z, (p - 1) / 2) != p - 1 {
                z += 1;
            }
            let mut m = s;
            let mut c = self.pow(z, q);
            let mut t = self.pow(a, q);
            let mut r = self.pow(a, (q + 1) / 2);
            while t != 1 {
                let mut i = 0u32;
                let mut tt = t;
                while tt != 1 {
                    tt = self.mul(tt, tt);
                    i += 1;
                }
                let b = self.pow(c, 1u64 << (m - i - 1));
                m = i;
                c = self.mul(b, b);
                t = self.mul(t, c);
                r = self.mul(r, b);
            }
            r
        };
        if root > p / 2 {
            root = p - root;
        }
        debug_assert_eq!(self.mul(root, root), a);
        Some(root)
    }
}

/// A tagged prime-field element: carries its modulus so values from
/// different fields cannot be mixed silently. Used at API boundaries;
/// inner loops use PrimeField with raw u64.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeFieldElem {
    pub value: u64,
    pub modulus: u64,
}

impl PrimeFieldElem {
    pub fn new(value: u64, modulus: u64) -> Self {
        PrimeFieldElem { value: value % modulus, modulus }
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.field().add(self.value, rhs.value), self.modulus)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.field().mul(self.value, rhs.value), self.modulus)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.field().inv(self.value), self.modulus)
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(self.field().pow(self.value, e), self.modulus)
    }
}
