//! Sparse integer combinations of e-th roots of unity, kept in the
//! redundant exponent basis zeta^0..zeta^(e-1) so that multiplication is
//! plain convolution of exponents mod e (no polynomial reduction). The
//! canonical reduction mod Phi_e happens only at zero tests / extraction.
//!
//! This is the fast path for exact verification sums (orthogonality
//! relations, column sums) where values are algebraic integers with
//! machine-sized coordinates; the general Cyclotomic type would spend all
//! its time reducing BigRational polynomials.

use super::arith::euler_phi;
use super::cyclotomic::{cyclotomic_polynomial, Cyclotomic};
use super::Rational;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct IntCyc {
    e: u32,
    /// exponent (mod e) -> integer coefficient; zero coefficients pruned.
    terms: BTreeMap<u32, i128>,
}

impl IntCyc {
    pub fn zero(e: u32) -> Self {
        assert!(e >= 1);
        IntCyc { e, terms: BTreeMap::new() }
    }

    pub fn integer(e: u32, n: i128) -> Self {
        let mut t = Self::zero(e);
        t.add_term(0, n);
        t
    }

    pub fn root(e: u32, k: i64) -> Self {
        let mut t = Self::zero(e);
        t.add_term(k.rem_euclid(e as i64) as u32, 1);
        t
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    pub fn add_term(&mut self, exp: u32, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let exp = exp % self.e;
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = entry
            .checked_add(coeff)
            .expect("IntCyc coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn add_scaled(&mut self, other: &IntCyc, w: i128) {
        assert_eq!(self.e, other.e);
        for (&exp, &c) in &other.terms {
            self.add_term(exp, c.checked_mul(w).expect("IntCyc scale overflow"));
        }
    }

    pub fn mul(&self, other: &IntCyc) -> IntCyc {
        assert_eq!(self.e, other.e);
        let mut out = IntCyc::zero(self.e);
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                out.add_term(
                    (ea + eb) % self.e,
                    ca.checked_mul(cb).expect("IntCyc product overflow"),
                );
            }
        }
        out
    }

    /// zeta^k |-> zeta^(-k): complex conjugation on root sums.
    pub fn conjugate(&self) -> IntCyc {
        let mut out = IntCyc::zero(self.e);
        for (&exp, &c) in &self.terms {
            out.add_term((self.e - exp) % self.e, c);
        }
        out
    }

    /// Canonical coordinates mod Phi_e (length phi(e)). Equal elements have
    /// equal coordinate vectors, so this doubles as a sort/equality key.
    pub fn coordinates(&self) -> Vec<i128> {
        self.canonical()
    }

    /// Canonical residue mod Phi_e as i128 coordinates (length phi(e)).
    fn canonical(&self) -> Vec<i128> {
        let phi = euler_phi(self.e as u64) as usize;
        let modulus = cyclotomic_polynomial(self.e);
        let small: Vec<i128> = modulus
            .iter()
            .map(|c| c.to_i128().expect("Phi_e coefficient exceeds i128"))
            .collect();
        let mut dense = vec![0i128; self.e as usize];
        for (&exp, &c) in &self.terms {
            dense[exp as usize] = c;
        }
        for i in (phi..dense.len()).rev() {
            let c = std::mem::take(&mut dense[i]);
            if c == 0 {
                continue;
            }
            for (j, m) in small[..phi].iter().enumerate() {
                dense[i - phi + j] = dense[i - phi + j]
                    .checked_sub(c.checked_mul(*m).expect("IntCyc reduce overflow"))
                    .expect("IntCyc reduce overflow");
            }
        }
        dense.truncate(phi);
        dense
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        self.canonical().iter().all(|&c| c == 0)
    }

    /// The integer value if this element is a rational integer, else None.
    pub fn as_integer(&self) -> Option<i128> {
        let canon = self.canonical();
        if canon[1..].iter().all(|&c| c == 0) {
            Some(canon[0])
        } else {
            None
        }
    }

    pub fn equals_integer(&self, n: i128) -> bool {
        self.as_integer() == Some(n)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let canon = self.canonical();
        let dense: Vec<Rational> = canon
            .iter()
            .map(|&c| Rational::from(BigInt::from(c)))
            .collect();
        Cyclotomic::from_dense(self.e, dense)
    }
}

/// Canonical text form: a plain integer when the value is rational, else
/// the reduced coordinate expansion in powers of z = zeta_e, written
/// like `1-2z12^3+z12^5`. Deterministic, so exported tables are diffable.
impl std::fmt::Display for IntCyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut out = String::new();
        for (k, &c) in self.canonical().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !out.is_empty() {
                out.push('+');
            }
            match (c, k) {
                (_, 0) => out.push_str(&c.to_string()),
                (1, _) => {}
                (-1, _) => out.push('-'),
                _ => out.push_str(&c.to_string()),
            }
            if k > 0 {
                out.push_str(&format!("z{}^{}", self.e, k));
            }
        }
        f.write_str(&out)
    }
}
