//! The cyclotomic field Q(zeta_e) in canonical coordinates: elements are
//! polynomials in zeta_e of degree < phi(e), reduced mod the e-th
//! cyclotomic polynomial. Equality of canonical forms is coefficient
//! equality, so every comparison is exact.

use super::arith::{divisors, euler_phi, lcm64};
use super::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Coefficients of Phi_e, ascending, monic, exact integers.
///
/// Computed as (x^e - 1) / prod_{d | e, d < e} Phi_d by exact integer
/// polynomial division, memoized process-wide.
pub fn cyclotomic_polynomial(e: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    assert!(e >= 1, "conductor must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&e) {
        return hit.clone();
    }
    // x^e - 1
    let mut num: Vec<BigInt> = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in divisors(e as u64) {
        let d = d as u32;
        if d == e {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = int_poly_div_exact(&num, &phi_d);
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(e, out.clone());
    out
}

/// Exact division of integer polynomials, panicking on a nonzero remainder:
/// only used where divisibility is a theorem.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let dn = den.len() - 1;
    assert!(num.len() > dn);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, d) in den[..dn].iter().enumerate() {
            let t = &c * d;
            rem[i - dn + j] -= t;
        }
        quot[i - dn] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of Q(zeta_e), stored as the canonical residue mod Phi_e.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    /// Length phi(conductor); coeffs[i] multiplies zeta^i.
    coeffs: Vec<Rational>,
}

/// zeta_e^k as a canonical element of Q(zeta_e).
pub fn cyclo_root(e: u32, k: i64) -> Cyclotomic {
    let e64 = e as i64;
    let k = k.rem_euclid(e64) as usize;
    let mut dense = vec![Rational::zero(); k + 1];
    dense[k] = Rational::one();
    Cyclotomic::from_dense(e, dense)
}

impl Cyclotomic {
    pub fn zero(e: u32) -> Self {
        assert!(e >= 1);
        Cyclotomic {
            conductor: e,
            coeffs: vec![Rational::zero(); euler_phi(e as u64) as usize],
        }
    }

    pub fn one(e: u32) -> Self {
        Self::from_rational(e, Rational::one())
    }

    pub fn from_rational(e: u32, r: Rational) -> Self {
        let mut out = Self::zero(e);
        out.coeffs[0] = r;
        out
    }

    pub fn from_integer(e: u32, n: i64) -> Self {
        Self::from_rational(e, Rational::from(BigInt::from(n)))
    }

    /// Reduce an arbitrary-length power-basis vector mod Phi_e.
    pub fn from_dense(e: u32, mut dense: Vec<Rational>) -> Self {
        let phi = euler_phi(e as u64) as usize;
        let modulus = cyclotomic_polynomial(e);
        debug_assert_eq!(modulus.len(), phi + 1);
        if dense.len() < phi {
            dense.resize(phi, Rational::zero());
        }
        for i in (phi..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            // x^i = x^(i-phi) * (x^phi) = x^(i-phi) * (Phi_e head - tail)
            for (j, m) in modulus[..phi].iter().enumerate() {
                let t = &c * Rational::from(m.clone());
                dense[i - phi + j] -= t;
            }
        }
        dense.truncate(phi);
        Cyclotomic { conductor: e, coeffs: dense }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if this element lies in Q, else None.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-embed into Q(zeta_m) for a multiple m of the conductor
    /// (zeta_e = zeta_m^(m/e)).
    pub fn lift_to(&self, m: u32) -> Cyclotomic {
        assert!(m % self.conductor == 0, "lift target must be a multiple of the conductor");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut dense = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[i * step] = c.clone();
            }
        }
        Cyclotomic::from_dense(m, dense)
    }

    /// Bring two elements into a common field (the lcm of conductors).
    pub fn unify(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = lcm64(a.conductor as u64, b.conductor as u64) as u32;
        (a.lift_to(m), b.lift_to(m))
    }

    pub fn pow(&self, mut n: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one(self.conductor);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Field inverse via the extended Euclidean algorithm in Q[x] mod Phi_e.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let (g, u, _) = poly_ext_gcd(&self.coeffs, &phi);
        // g is a nonzero constant since Phi_e is irreducible over Q.
        debug_assert_eq!(poly_degree(&g), Some(0));
        let scale = g[0].recip();
        let dense: Vec<Rational> = u.iter().map(|c| c * &scale).collect();
        Some(Cyclotomic::from_dense(self.conductor, dense))
    }

    /// Galois action zeta |-> zeta^a for gcd(a, e) = 1.
    pub fn galois(&self, a: u64) -> Cyclotomic {
        let e = self.conductor as u64;
        assert_eq!(super::arith::gcd64(a, e), 1, "galois exponent must be coprime to the conductor");
        let mut dense = vec![Rational::zero(); self.conductor as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((i as u64 * a) % e) as usize;
                dense[idx] += c;
            }
        }
        Cyclotomic::from_dense(self.conductor, dense)
    }

    /// Complex conjugation zeta |-> zeta^(-1).
    pub fn conjugate(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor as u64 - 1)
    }

    /// Sum over the full Galois orbit; lands in Q. For zeta_e itself this
    /// equals the Moebius value mu(e), a classical identity used as a
    /// self-test of the canonical reduction.
    pub fn galois_sum(&self) -> Rational {
        let e = self.conductor as u64;
        let mut acc = Cyclotomic::zero(self.conductor);
        for a in 1..=e {
            if super::arith::gcd64(a, e) == 1 {
                acc = &acc + &self.galois(a);
            }
        }
        acc.as_rational()
            .expect("Galois-invariant element must be rational")
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclotomic::unify(self, other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -c.clone();
        }
        out
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        let mut dense = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_dense(a.conductor, dense)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", super::rational_to_string(c))?,
                1 => write!(f, "({})z{}", super::rational_to_string(c), self.conductor)?,
                _ => write!(f, "({})z{}^{}", super::rational_to_string(c), self.conductor, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(super::rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycRepr::deserialize(d)?;
        let phi = euler_phi(repr.conductor.max(1) as u64) as usize;
        if repr.conductor < 1 || repr.coeffs.len() != phi {
            return Err(D::Error::custom("bad cyclotomic payload"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| super::rational_from_str(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cyclotomic { conductor: repr.conductor, coeffs })
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn poly_div_rem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let nd = match poly_degree(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        let q = &c / &lead;
        for j in 0..=dd {
            let t = &q * &den[j];
            rem[i - dd + j] -= t;
        }
        quot[i - dd] = q;
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}
