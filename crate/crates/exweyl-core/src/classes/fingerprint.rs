//! Conjugation-invariant element fingerprints.
//!
//! A fingerprint bundles the element order, the characteristic polynomial of
//! the reflection-representation matrix, the cycle type of the root
//! permutation, and the trace sequence of matrix powers. All four are class
//! functions, so equal classes always produce equal fingerprints; the
//! converse is not guaranteed and collision handling is the caller's job.

use crate::perm::Permutation;
use crate::rootsys::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: u32,
    pub char_poly: Vec<i128>,
    pub cycle_type: Vec<(u32, u32)>,
    pub power_traces: Vec<i64>,
}

impl Fingerprint {
    pub fn of(rs: &RootSystem, p: &Permutation) -> Fingerprint {
        let order = p.order() as u32;
        let m = rs.matrix_of(p);
        let char_poly = m.char_poly();
        let cycle_type = p.cycle_type();
        let mut power_traces = Vec::with_capacity(order as usize);
        let mut acc = m.clone();
        for _ in 0..order {
            power_traces.push(acc.trace());
            acc = acc.mul(&m);
        }
        Fingerprint {
            order,
            char_poly,
            cycle_type,
            power_traces,
        }
    }

    /// Stable byte encoding; used as the canonical tie-break when sorting
    /// classes and as the bucket key during class discovery.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 16 * self.char_poly.len());
        out.extend_from_slice(&self.order.to_le_bytes());
        out.extend_from_slice(&(self.char_poly.len() as u32).to_le_bytes());
        for c in &self.char_poly {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out.extend_from_slice(&(self.cycle_type.len() as u32).to_le_bytes());
        for &(len, count) in &self.cycle_type {
            out.extend_from_slice(&len.to_le_bytes());
            out.extend_from_slice(&count.to_le_bytes());
        }
        out.extend_from_slice(&(self.power_traces.len() as u32).to_le_bytes());
        for t in &self.power_traces {
            out.extend_from_slice(&t.to_le_bytes());
        }
        out
    }

    pub fn hash(&self) -> u128 {
        crate::perm::hash128_points(self.to_bytes().iter().map(|&b| b as u64))
    }
}
